"""Built-in corpus of algebras plus the witness-identity regression suite.

Every entry carries the expected metabelian verdicts for the symmetric part,
the skew part, and the whole algebra, which the `verify` harness must
reproduce end to end.  Witness cases pin down the classical bracket
identities behind those verdicts: each one names four elements of u(L)+ or
u(L)-, the two intermediate brackets, and the final product as an
integer-literal expression that gets re-evaluated in exact arithmetic.

A witness case whose stated literal disagrees with exact recomputation is
reported as DIFFER together with the recomputed value; the qualitative
claims (membership sides and zero/nonzero status per the conclusion column)
are tracked separately.
"""

from __future__ import annotations

from dataclasses import dataclass

from rla import fileformat
from rla.lie import LieAlgebra


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    description: str
    text: str
    expected: dict          # side -> bool (engine verdicts)
    plus_case: str | None   # classifier case for the symmetric side, p > 2
    classifier_applies: bool

    def build(self) -> LieAlgebra:
        return fileformat.parse(self.text)


def _entry(name, description, doc, expected, plus_case=None):
    spec = fileformat.parse(doc)
    return CorpusEntry(name=name, description=description,
                       text=fileformat.emit(spec), expected=expected,
                       plus_case=plus_case, classifier_applies=(spec.p != 2))


_ALL_TRUE = {"minus": True, "plus": True, "full": True}
_ALL_FALSE = {"minus": False, "plus": False, "full": False}
_PLUS_ONLY = {"minus": False, "plus": True, "full": False}


def _build_entries():
    entries = []

    for p in (3, 5):
        for n in (1, 2, 3):
            entries.append(_entry(
                "abelian-p%d-n%d" % (p, n),
                "abelian algebra of dimension %d" % n,
                "p = %d\nbasis = %s\n" % (p, " ".join("abc"[:n])),
                _ALL_TRUE, "i"))

    for p, expected, case in ((3, _ALL_TRUE, "ii"), (5, _ALL_FALSE, None),
                              (7, _ALL_FALSE, None)):
        entries.append(_entry(
            "heis-p%d-z0" % p,
            "Heisenberg algebra, trivial power map",
            "p = %d\nbasis = x y z\n[x,y] = z\n" % p,
            expected, case))
    entries.append(_entry(
        "heis-p3-zz",
        "Heisenberg algebra with z^p = z",
        "p = 3\nbasis = x y z\n[x,y] = z\nz^p = z\n",
        _ALL_FALSE))

    entries.append(_entry(
        "dim2-p3",
        "two-dimensional non-abelian algebra, canonical table",
        "p = 3\nbasis = x y\n[x,y] = x\ny^p = y\n",
        _PLUS_ONLY, "iii"))
    entries.append(_entry(
        "dim2-p3-b",
        "two-dimensional non-abelian algebra, rescaled table",
        "p = 3\nbasis = x y\n[x,y] = 2*x\ny^p = y\n",
        _PLUS_ONLY, "iii"))
    entries.append(_entry(
        "dim2-p5",
        "two-dimensional non-abelian algebra at p = 5",
        "p = 5\nbasis = x y\n[x,y] = x\ny^p = y\n",
        _ALL_FALSE))
    entries.append(_entry(
        "nonnilp-p5",
        "two-dimensional non-nilpotent algebra ([x,y] = x, y^p = y)",
        "p = 5\nbasis = x y\n[x,y] = x\ny^p = y\n",
        _ALL_FALSE))

    for p in (3, 5):
        entries.append(_entry(
            "lemma2.1-p%d" % p,
            "class-2 algebra with two independent commutators from one element",
            "p = %d\nbasis = a b c v w\n[a,b] = v\n[a,c] = w\n" % p,
            _ALL_FALSE))
        entries.append(_entry(
            "lemma2.2-p%d" % p,
            "two commuting Heisenberg blocks with independent centers",
            "p = %d\nbasis = x1 x2 y1 y2 v w\n[x1,x2] = v\n[y1,y2] = w\n" % p,
            _ALL_FALSE))
        entries.append(_entry(
            "lemma2.3-p%d" % p,
            "four-dimensional algebra of nilpotency class 3",
            "p = %d\nbasis = x y v w\n[x,y] = v\n[y,v] = w\n" % p,
            _ALL_FALSE))

    entries.append(_entry(
        "char2-example",
        "three-dimensional algebra over F_2 with nontrivial power map",
        "p = 2\nbasis = x y z\n[x,y] = x\nx^p = z\ny^p = y\n",
        {"minus": True, "plus": True, "full": False}))

    return {e.name: e for e in entries}


ENTRIES = _build_entries()


def names():
    return list(ENTRIES)


def get(name: str) -> CorpusEntry:
    if name not in ENTRIES:
        raise KeyError("no corpus entry named %r" % name)
    return ENTRIES[name]


def build(name: str) -> LieAlgebra:
    return get(name).build()


# -- witness-identity regression cases ---------------------------------------

@dataclass(frozen=True)
class WitnessCase:
    key: str
    corpus: str
    side: str                 # 'minus' or 'plus': where the elements live
    elements: tuple           # four expressions
    inner: tuple              # stated values of [e1,e2] and [e3,e4]
    stated: str               # stated value of [[e1,e2],[e3,e4]]
    stated_nonzero: bool      # asserted zero/nonzero status of that bracket


WITNESS_CASES = []
for _p in (3, 5):
    WITNESS_CASES += [
        WitnessCase(
            key="lemma2.1-skew-p%d" % _p, corpus="lemma2.1-p%d" % _p, side="minus",
            elements=("a^2*w", "b", "a", "c^2*v"),
            inner=("2*a*v*w", "2*c*v*w"),
            stated="4*v*w^2", stated_nonzero=True),
        WitnessCase(
            key="lemma2.1-sym-p%d" % _p, corpus="lemma2.1-p%d" % _p, side="plus",
            elements=("2*a*c - w", "c^2", "a*v", "2*a*b - v"),
            inner=("4*c^2*w", "2*a*v^2"),
            stated="-16*c*v^2*w^2", stated_nonzero=True),
        WitnessCase(
            key="lemma2.2-skew-p%d" % _p, corpus="lemma2.2-p%d" % _p, side="minus",
            elements=("x1*y1*w", "x2", "x1", "x2*y2^2"),
            inner=("y1*v*w", "y2^2*v"),
            stated="2*y2*v^2*w^2", stated_nonzero=True),
        WitnessCase(
            key="lemma2.2-sym-p%d" % _p, corpus="lemma2.2-p%d" % _p, side="plus",
            elements=("x1*y1", "x2*y1", "x1*y1", "y2^2"),
            inner=("y1^2*v", "2*x1*y2*w"),
            stated="4*x1*y1*v*w^2", stated_nonzero=True),
        WitnessCase(
            key="lemma2.3-skew-p%d" % _p, corpus="lemma2.3-p%d" % _p, side="minus",
            elements=("2*x*y*w - v*w", "y", "x", "y"),
            inner=("2*v*y*w + w^2", "v"),
            stated="2*v*w^2", stated_nonzero=True),
        WitnessCase(
            key="lemma2.3-sym-p%d" % _p, corpus="lemma2.3-p%d" % _p, side="plus",
            elements=("x^2", "2*x*y - v", "y^2", "v*w"),
            inner=("4*x^2*v", "2*y*w^2"),
            stated="16*x*v^2*w^2 - 8*x^2*w^3", stated_nonzero=True),
    ]
WITNESS_CASES += [
    WitnessCase(
        key="lemma2.5-skew-p5", corpus="nonnilp-p5", side="minus",
        elements=("x", "y", "2*x*y^2 - 2*x*y + x", "y"),
        inner=("x", "2*x*y^2 - 2*x*y + x"),
        stated="4*x^2*y - 4*x^2", stated_nonzero=True),
    WitnessCase(
        key="lemma2.5-sym-p5", corpus="nonnilp-p5", side="plus",
        elements=("2*x*y - x", "y^2", "x^2", "2*x*y - x"),
        inner=("4*x*y^2 - 4*x*y + x", "4*x^3"),
        stated="-48*x^3*y + 144*x^3 + 48*x^4", stated_nonzero=True),
    WitnessCase(
        key="lemma2.5-sym-p3", corpus="dim2-p3", side="plus",
        elements=("2*x*y - x", "y^2", "x^2", "2*x*y - x"),
        inner=("4*x*y^2 - 4*x*y + x", "4*x^3"),
        stated="0", stated_nonzero=False),
    WitnessCase(
        key="lemma2.7-sym-p5", corpus="heis-p5-z0", side="plus",
        elements=("2*x*y - z", "y*z", "x^2", "2*x*y - z"),
        inner=("2*y*z^2", "4*x^2*z"),
        stated="-16*x*z^4", stated_nonzero=True),
    WitnessCase(
        key="lemma2.7-skew-p5", corpus="heis-p5-z0", side="minus",
        elements=("x^2*z", "y", "x^2*y - x*z", "y"),
        inner=("2*x*z^2", "2*x*y*z - z^2"),
        stated="4*x*z^4", stated_nonzero=True),
]


@dataclass
class WitnessOutcome:
    key: str
    membership_ok: bool
    inner_match: bool
    stated_match: bool          # computed double bracket equals stated literal
    nonzero_match: bool         # zero/nonzero status matches the assertion
    computed: str
    stated_reduced: str

    @property
    def ok(self) -> bool:
        return (self.membership_ok and self.inner_match
                and self.stated_match and self.nonzero_match)


def run_witness_case(case: WitnessCase, env=None) -> WitnessOutcome:
    from rla.env import EnvAlgebra

    if env is None:
        env = EnvAlgebra(get(case.corpus).build())
    els = [env.element(s) for s in case.elements]
    antipodes = [e.antipode() for e in els]
    if case.side == "minus":
        membership_ok = all(t == -e for e, t in zip(els, antipodes))
    else:
        membership_ok = all(t == e for e, t in zip(els, antipodes))
    b1 = env.lie_bracket(els[0], els[1])
    b2 = env.lie_bracket(els[2], els[3])
    inner_match = (b1 == env.element(case.inner[0])
                   and b2 == env.element(case.inner[1]))
    final = env.lie_bracket(b1, b2)
    stated = env.element(case.stated)
    return WitnessOutcome(
        key=case.key,
        membership_ok=membership_ok,
        inner_match=inner_match,
        stated_match=(final == stated),
        nonzero_match=(not final.is_zero()) == case.stated_nonzero,
        computed=str(final),
        stated_reduced=str(stated))


def run_all_witnesses():
    out = []
    cache = {}
    from rla.env import EnvAlgebra
    for case in WITNESS_CASES:
        if case.corpus not in cache:
            cache[case.corpus] = EnvAlgebra(get(case.corpus).build())
        out.append(run_witness_case(case, cache[case.corpus]))
    return out
