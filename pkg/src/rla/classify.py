"""Structural classification of when u(L)'s skew/symmetric parts are Lie
metabelian, cross-verified against brute-force enveloping computations.

The predicates only inspect L itself: abelianness, the derived subalgebra,
its centrality, and its image under the power mapping.  `verify` builds
u(L), runs the subspace checks, and records agreement; disagreement would
falsify the classification at that instance.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np


class InapplicableError(RuntimeError):
    """The classification is proved to fail in characteristic 2."""


def _require_odd(spec):
    if spec.p == 2:
        raise InapplicableError("classifier inapplicable in characteristic 2")


@dataclass
class Evidence:
    p: int
    dim: int
    abelian: bool
    derived_dim: int
    derived_central: bool
    derived_pmap_zero: bool | None   # None when it does not affect the verdict


def gather_evidence(spec) -> Evidence:
    derived = spec.derived_subalgebra()
    central = spec.center().contains(derived)
    pmap_zero = None
    if derived.dim >= 1:
        pmap_zero = all(not spec.pmap_general(v).any() for v in derived.rows)
    return Evidence(p=spec.p, dim=spec.n, abelian=spec.is_abelian,
                    derived_dim=derived.dim, derived_central=central,
                    derived_pmap_zero=pmap_zero)


def _exceptional(ev: Evidence) -> bool:
    return (ev.p == 3 and ev.derived_dim == 1 and ev.derived_central
            and bool(ev.derived_pmap_zero))


def classify_minus(spec, ev: Evidence | None = None) -> bool:
    """Is the skew part of u(L) Lie metabelian (p > 2)?"""
    _require_odd(spec)
    ev = ev or gather_evidence(spec)
    return ev.abelian or _exceptional(ev)


def classify_plus(spec, ev: Evidence | None = None):
    """(verdict, case) for the symmetric part; case in {'i','ii','iii',None}."""
    _require_odd(spec)
    ev = ev or gather_evidence(spec)
    if ev.abelian:
        return True, "i"
    if _exceptional(ev):
        return True, "ii"
    if spec.p == 3 and spec.n == 2:
        return True, "iii"
    return False, None


def classify_full(spec, ev: Evidence | None = None) -> bool:
    """Is u(L) itself Lie metabelian?  Coincides with the skew verdict for
    p > 2; not re-derived independently."""
    _require_odd(spec)
    return classify_minus(spec, ev)


@dataclass
class ClassificationReport:
    evidence: Evidence
    minus: bool
    plus: bool
    plus_case: str | None
    full: bool

    def lines(self):
        ev = self.evidence
        out = [
            ("p", ev.p),
            ("dim_L", ev.dim),
            ("abelian", _yn(ev.abelian)),
            ("dim_derived", ev.derived_dim),
            ("derived_central", _yn(ev.derived_central)),
            ("derived_pmap_zero", "n/a" if ev.derived_pmap_zero is None
             else _yn(ev.derived_pmap_zero)),
            ("metabelian_minus", _yn(self.minus)),
            ("metabelian_plus", _yn(self.plus)),
            ("plus_case", self.plus_case or "none"),
            ("metabelian_full", _yn(self.full)),
        ]
        return ["%s = %s" % kv for kv in out]


def classify(spec) -> ClassificationReport:
    _require_odd(spec)
    ev = gather_evidence(spec)
    plus, case = classify_plus(spec, ev)
    return ClassificationReport(evidence=ev, minus=classify_minus(spec, ev),
                                plus=plus, plus_case=case,
                                full=classify_full(spec, ev))


@dataclass
class CheckRecord:
    name: str                 # minus / plus / full
    engine_verdict: bool
    classifier_verdict: bool | None   # None: inapplicable (p = 2)
    witness: tuple | None
    product: object | None
    seconds: float

    @property
    def agree(self) -> bool | None:
        if self.classifier_verdict is None:
            return None
        return self.engine_verdict == self.classifier_verdict


@dataclass
class VerifyRecord:
    p: int
    dim_L: int
    dim_env: int
    dims: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    @property
    def all_agree(self) -> bool:
        return all(c.agree is not False for c in self.checks)

    def lines(self):
        out = [("p", self.p), ("dim_L", self.dim_L), ("dim_env", self.dim_env)]
        for k in sorted(self.dims):
            out.append((k, self.dims[k]))
        for c in self.checks:
            out.append(("engine_metabelian_%s" % c.name, _yn(c.engine_verdict)))
            out.append(("classifier_metabelian_%s" % c.name,
                        "n/a" if c.classifier_verdict is None else _yn(c.classifier_verdict)))
            out.append(("agree_%s" % c.name,
                        "n/a" if c.agree is None else _yn(c.agree)))
            if c.witness is not None:
                for t, e in zip("abcd", c.witness):
                    out.append(("witness_%s_%s" % (c.name, t), str(e)))
                out.append(("witness_%s_product" % c.name, str(c.product)))
        out.append(("agreement", _yn(self.all_agree)))
        return ["%s = %s" % kv for kv in out]


def _yn(b: bool) -> str:
    return "true" if b else "false"


def verify(spec, max_dim=None) -> VerifyRecord:
    """Build u(L), test all three metabelian targets, compare with the
    structural predicates, and record witnesses and timings."""
    from rla.env import EnvAlgebra

    env = EnvAlgebra(spec, max_dim=max_dim)
    rec = VerifyRecord(p=spec.p, dim_L=spec.n, dim_env=env.dim)

    if spec.p > 2:
        report = classify(spec)
        expected = {"minus": report.minus, "plus": report.plus, "full": report.full}
    else:
        expected = {"minus": None, "plus": None, "full": None}

    targets = [
        ("plus", env.symmetric_subspace()),
        ("minus", env.skew_subspace()),
        ("full", env.full_subspace()),
    ]
    for name, space in targets:
        rec.dims["dim_%s" % name] = space.dim
        t0 = time.perf_counter()
        res = env.is_lie_metabelian(space)
        dt = time.perf_counter() - t0
        rec.checks.append(CheckRecord(name=name, engine_verdict=res.verdict,
                                      classifier_verdict=expected[name],
                                      witness=res.witness, product=res.product,
                                      seconds=dt))
    return rec
