"""The algebra file format: parsing with diagnostics, canonical emission.

A document looks like

    # optional comments
    p = 3
    basis = x y z
    [x,y] = z
    z^p = z

Unspecified brackets and power-map images default to zero.  Linear
combinations follow `0 | term (('+'|'-') term)*` with term `[coeff '*'] name`
and decimal coefficients (reduced mod p).  Specifying both [a,b] and [b,a]
is allowed only when consistent with antisymmetry.
"""

from __future__ import annotations

import re

import numpy as np

from rla import gf
from rla.lie import LieAlgebra

_NAME = r"[A-Za-z_][A-Za-z_0-9]*"


class ParseError(ValueError):
    def __init__(self, msg, line=None):
        self.line = line
        super().__init__("line %s: %s" % (line, msg) if line else msg)


def _parse_lincomb(text, names, p, line):
    """-> coordinate vector over the basis `names`."""
    vec = np.zeros(len(names), dtype=np.int64)
    text = text.strip()
    if text == "0":
        return vec
    pos = 0
    sign = 1
    expect_term = True
    token = re.compile(r"\s*(?:(\d+)\s*\*\s*(%s)|(\d+)|(%s)|(\+)|(-))" % (_NAME, _NAME))
    while pos < len(text):
        m = token.match(text, pos)
        if not m:
            raise ParseError("bad linear combination near %r" % text[pos:pos + 20], line)
        pos = m.end()
        if m.group(5) or m.group(6):
            if expect_term:
                raise ParseError("unexpected sign in %r" % text, line)
            sign = 1 if m.group(5) else -1
            expect_term = True
            continue
        if not expect_term:
            raise ParseError("missing '+' or '-' in %r" % text, line)
        if m.group(1) is not None:
            coeff, name = int(m.group(1)), m.group(2)
        elif m.group(3) is not None:
            raise ParseError("bare coefficient %r (only 0 allowed)" % m.group(3), line)
        else:
            coeff, name = 1, m.group(4)
        if name not in names:
            raise ParseError("unknown name %r" % name, line)
        vec[names.index(name)] = (vec[names.index(name)] + sign * coeff) % p
        expect_term = False
        sign = 1
    if expect_term:
        raise ParseError("dangling sign in %r" % text, line)
    return vec


def parse(text: str) -> LieAlgebra:
    p = None
    names = None
    brackets = {}       # (i, j) i<j -> vec, with provenance for consistency checks
    raw_brackets = {}   # (i, j) as written -> (vec, line)
    pmap = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno)
        lhs, rhs = (s.strip() for s in line.split("=", 1))
        if lhs == "p":
            if p is not None:
                raise ParseError("duplicate p", lineno)
            if not rhs.isdigit():
                raise ParseError("p must be a decimal integer", lineno)
            try:
                p = gf.check_prime(int(rhs))
            except ValueError as e:
                raise ParseError(str(e), lineno) from None
            continue
        if lhs == "basis":
            if names is not None:
                raise ParseError("duplicate basis line", lineno)
            names = rhs.split()
            if not names:
                raise ParseError("empty basis", lineno)
            for nm in names:
                if not re.fullmatch(_NAME, nm):
                    raise ParseError("bad basis name %r" % nm, lineno)
            if len(set(names)) != len(names):
                raise ParseError("duplicate basis name", lineno)
            continue
        if p is None or names is None:
            raise ParseError("p and basis must come before definitions", lineno)
        mbr = re.fullmatch(r"\[\s*(%s)\s*,\s*(%s)\s*\]" % (_NAME, _NAME), lhs)
        mpw = re.fullmatch(r"(%s)\s*\^\s*p" % _NAME, lhs)
        if mbr:
            a, b = mbr.group(1), mbr.group(2)
            for nm in (a, b):
                if nm not in names:
                    raise ParseError("unknown name %r" % nm, lineno)
            i, j = names.index(a), names.index(b)
            vec = _parse_lincomb(rhs, names, p, lineno)
            if i == j:
                if vec.any():
                    raise ParseError("[%s,%s] must be 0" % (a, a), lineno)
                continue
            if (i, j) in raw_brackets:
                raise ParseError("duplicate definition of [%s,%s]" % (a, b), lineno)
            raw_brackets[(i, j)] = vec
            key = (i, j) if i < j else (j, i)
            canon = vec if i < j else (-vec) % p
            if key in brackets:
                if not np.array_equal(brackets[key], canon):
                    raise ParseError("inconsistent antisymmetric pair [%s,%s]" % (a, b),
                                     lineno)
            else:
                brackets[key] = canon
        elif mpw:
            a = mpw.group(1)
            if a not in names:
                raise ParseError("unknown name %r" % a, lineno)
            i = names.index(a)
            if i in pmap:
                raise ParseError("duplicate definition of %s^p" % a, lineno)
            pmap[i] = _parse_lincomb(rhs, names, p, lineno)
        else:
            raise ParseError("unrecognized definition %r" % lhs, lineno)
    if p is None:
        raise ParseError("missing p line")
    if names is None:
        raise ParseError("missing basis line")
    n = len(names)
    pm = [pmap.get(i, np.zeros(n, dtype=np.int64)) for i in range(n)]
    return LieAlgebra(p, names, brackets, pm)


def emit(spec: LieAlgebra) -> str:
    """Canonical document: p, basis, nonzero brackets (i < j), nonzero
    power-map lines, in basis order.  parse(emit(spec)) recovers spec."""
    out = ["p = %d" % spec.p, "basis = %s" % " ".join(spec.names)]
    for i in range(spec.n):
        for j in range(i + 1, spec.n):
            v = spec.bracket[i, j]
            if v.any():
                out.append("[%s,%s] = %s" % (spec.names[i], spec.names[j],
                                             _format_lincomb(v, spec.names)))
    for i in range(spec.n):
        if spec.pmap[i].any():
            out.append("%s^p = %s" % (spec.names[i],
                                      _format_lincomb(spec.pmap[i], spec.names)))
    return "\n".join(out) + "\n"


def _format_lincomb(vec, names) -> str:
    parts = []
    for i, c in enumerate(vec):
        if c == 0:
            continue
        parts.append(names[i] if c == 1 else "%d*%s" % (c, names[i]))
    return " + ".join(parts) if parts else "0"
