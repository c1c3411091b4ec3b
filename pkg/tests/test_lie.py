import numpy as np
import pytest

from rla import corpus, gf
from rla.gf import Subspace
from rla.lie import LieAlgebra


def heis(p=3, zp=None):
    pmap = [[0, 0, 0], [0, 0, 0], zp or [0, 0, 0]]
    return LieAlgebra(p, "xyz", {(0, 1): [0, 0, 1]}, pmap)


def abelian(p=3, n=2):
    return LieAlgebra(p, "abc"[:n], {}, [[0] * n for _ in range(n)])


def dim2(p=3):
    return LieAlgebra(p, "xy", {(0, 1): [1, 0]}, [[0, 0], [0, 1]])


def lemma21(p=3):
    return corpus.build("lemma2.1-p%d" % p)


def lemma22(p=3):
    return corpus.build("lemma2.2-p%d" % p)


def lemma23(p=3):
    return corpus.build("lemma2.3-p%d" % p)


# -- validation ---------------------------------------------------------------

def test_validate_abelian():
    assert abelian().validate().ok


def test_validate_heisenberg():
    assert heis().validate().ok


def test_validate_jacobson_violation():
    # [x,y] = x with x^[3] = x: (ad x)^3 = 0 but ad(x) != 0
    bad = LieAlgebra(3, "xy", {(0, 1): [1, 0]}, [[1, 0], [0, 1]])
    rep = bad.validate()
    assert not rep.ok
    assert 0 in rep.jacobson_failures
    assert "x" in rep.message(bad.names)


def test_validate_jacobi_violation():
    # [x,y]=z, [x,z]=z, [y,z]=x: the Jacobi sum on (x,y,z) is [y,z] = x != 0
    bad = LieAlgebra(5, "xyz", {(0, 1): [0, 0, 1], (0, 2): [0, 0, 1],
                                (1, 2): [1, 0, 0]}, [[0] * 3] * 3)
    rep = bad.validate()
    assert not rep.ok
    assert (0, 1, 2) in rep.jacobi_failures


def test_validation_fuzz_perturbation():
    # perturbing one structure constant of a valid table usually breaks it
    rng = np.random.default_rng(42)
    spec = lemma23()
    broken = 0
    trials = 20
    for _ in range(trials):
        table = {}
        n = spec.n
        for i in range(n):
            for j in range(i + 1, n):
                table[(i, j)] = spec.bracket[i, j].copy()
        i, j = sorted(rng.choice(n, size=2, replace=False))
        k = int(rng.integers(0, n))
        table[(i, j)] = table[(i, j)].copy()
        table[(i, j)][k] = (table[(i, j)][k] + int(rng.integers(1, spec.p))) % spec.p
        mutant = LieAlgebra(spec.p, spec.names, table, spec.pmap)
        if not mutant.validate().ok:
            broken += 1
    assert broken > 0
    print("fuzz: %d/%d perturbations broke validation" % (broken, trials))


# -- brackets -----------------------------------------------------------------

def test_bracket_table_entry():
    L = heis()
    assert np.array_equal(L.bracket_vec([1, 0, 0], [0, 1, 0]), [0, 0, 1])


def test_bracket_alternating_random():
    rng = np.random.default_rng(1)
    L = lemma23(5)
    for _ in range(20):
        v = rng.integers(0, 5, size=4)
        assert not L.bracket_vec(v, v).any()


def test_bracket_lemma21_bc_zero():
    L = lemma21()
    b = L.basis_vec(1)
    c = L.basis_vec(2)
    assert not L.bracket_vec(b, c).any()


# -- derived subalgebra, center -------------------------------------------------

def test_derived_abelian():
    assert abelian().derived_subalgebra().dim == 0


def test_derived_heisenberg():
    D = heis().derived_subalgebra()
    assert D.dim == 1 and D.member([0, 0, 1])


def test_derived_lemma22():
    L = lemma22()
    D = L.derived_subalgebra()
    assert D.dim == 2
    assert D.member(L.basis_vec(4)) and D.member(L.basis_vec(5))


def test_center_heisenberg():
    Z = heis().center()
    assert Z == Subspace.span([[0, 0, 1]], 3, 3)


def test_center_dim2_trivial():
    # solve ad-kernel by hand: [x,y]=x leaves no central combination
    assert dim2().center().dim == 0


def test_center_lemma21():
    L = lemma21()
    Z = L.center()
    assert Z.member(L.basis_vec(3)) and Z.member(L.basis_vec(4))


def test_centralizer_full_is_center():
    for L in (heis(), dim2(), lemma23()):
        assert L.centralizer(Subspace.full(L.n, L.p)) == L.center()


# -- central series -------------------------------------------------------------

def test_upper_series_abelian():
    chain = abelian().upper_central_series()
    assert [s.dim for s in chain] == [0, 2]


def test_upper_series_heisenberg():
    chain = heis().upper_central_series()
    assert [s.dim for s in chain] == [0, 1, 3]
    assert chain[1].member([0, 0, 1])


def test_upper_series_lemma23():
    L = lemma23()
    chain = L.upper_central_series()
    assert chain[1].contains(Subspace.span([L.basis_vec(3)], 4, 3))


def test_lower_series_and_class_heisenberg():
    assert heis().nilpotency_class() == 2


def test_not_nilpotent():
    assert dim2().nilpotency_class() is None
    assert not dim2().is_nilpotent


def test_lemma23_class3_by_hand():
    # gamma_2 = <v,w>, gamma_3 = <w>, gamma_4 = 0 straight from the table
    L = lemma23()
    chain = L.lower_central_series()
    assert [s.dim for s in chain] == [4, 2, 1, 0]
    assert chain[1] == Subspace.span([L.basis_vec(2), L.basis_vec(3)], 4, 3)
    assert chain[2] == Subspace.span([L.basis_vec(3)], 4, 3)
    assert L.nilpotency_class() == 3


def test_series_agree_on_nilpotency():
    for name in ("abelian-p3-n2", "heis-p3-z0", "lemma2.3-p3", "lemma2.1-p5"):
        L = corpus.build(name)
        cls = L.nilpotency_class()
        upper = L.upper_central_series()
        assert upper[-1].dim == L.n  # nilpotent: ascending series reaches L
        assert cls == len(upper) - 1


def test_class_bound_by_derived_dim():
    # nilpotency class <= dim L' + 1 on every nilpotent corpus member
    for name in corpus.names():
        L = corpus.build(name)
        cls = L.nilpotency_class()
        if cls is None:
            continue
        assert cls <= L.derived_subalgebra().dim + 1, name


# -- power map ----------------------------------------------------------------

def test_pmap_general_basis_values():
    L = heis(3, zp=[0, 0, 1])
    assert np.array_equal(L.pmap_general([0, 0, 1]), [0, 0, 1])
    assert np.array_equal(L.pmap_general([1, 0, 0]), [0, 0, 0])


def test_pmap_general_abelian_additive():
    L = LieAlgebra(3, "ab", {}, [[0, 1], [1, 0]])
    assert L.validate().ok
    x = np.array([1, 0])
    y = np.array([0, 1])
    assert np.array_equal(L.pmap_general(x + y),
                          (L.pmap_general(x) + L.pmap_general(y)) % 3)


def test_pmap_general_heisenberg_sum():
    # (x+y)^3 = 0: all correction terms are brackets of weight >= 2 in z
    assert not heis().pmap_general([1, 1, 0]).any()


def test_pmap_general_semilinear():
    rng = np.random.default_rng(2)
    for name in ("heis-p3-zz", "lemma2.3-p5", "dim2-p5"):
        L = corpus.build(name)
        for _ in range(10):
            x = rng.integers(0, L.p, size=L.n)
            a = int(rng.integers(1, L.p))
            lhs = L.pmap_general((a * x) % L.p)
            rhs = (pow(a, L.p, L.p) * L.pmap_general(x)) % L.p
            assert np.array_equal(lhs, rhs)


def test_pmap_general_restriction_closure():
    # p-th powers of embedded sums land in L (restrictedness of u(L))
    rng = np.random.default_rng(8)
    L = corpus.build("lemma2.3-p3")
    for _ in range(10):
        x = rng.integers(0, 3, size=4)
        L.pmap_general(x)  # raises if it escapes the embedded copy


# -- restricted closure, quotients ----------------------------------------------

def test_restricted_closure_center_pmap0():
    L = heis()
    Z = L.center()
    assert L.restricted_closure(Z) == Z


def test_restricted_closure_grows():
    L = heis()
    S = Subspace.span([L.basis_vec(0)], 3, 3)
    C = L.restricted_closure(S)
    assert C == Subspace.span([L.basis_vec(0), L.basis_vec(2)], 3, 3)


def test_restricted_closure_full():
    L = lemma23()
    assert L.restricted_closure(Subspace.full(4, 3)).dim == 4


def test_quotient_by_zero():
    L = heis()
    Q, proj = L.quotient(Subspace.zero(3, 3))
    assert Q.n == 3 and np.array_equal(Q.bracket, L.bracket)
    assert np.array_equal(proj, np.eye(3, dtype=np.int64))


def test_quotient_heis_by_center():
    L = heis()
    Q, _ = L.quotient(Subspace.span([[0, 0, 1]], 3, 3))
    assert Q.n == 2 and Q.is_abelian


def test_quotient_lemma23_by_w():
    L = lemma23()
    I = Subspace.span([L.basis_vec(3)], 4, 3)
    ok, _ = L.is_restricted_ideal(I)
    assert ok
    Q, proj = L.quotient(I)
    assert Q.n == 3
    assert Q.validate().ok
    assert Q.nilpotency_class() == 2


def test_quotient_rejects_non_ideal():
    L = heis()
    with pytest.raises(ValueError, match="not a restricted ideal"):
        L.quotient(Subspace.span([[1, 0, 0]], 3, 3))


def test_quotient_validates_after():
    rng = np.random.default_rng(4)
    for name in ("heis-p3-z0", "lemma2.3-p3", "lemma2.2-p3"):
        L = corpus.build(name)
        v = rng.integers(0, L.p, size=L.n)
        I = L.restricted_closure(Subspace.span([v], L.n, L.p))
        if I.dim == L.n:
            continue
        Q, _ = L.quotient(I)
        assert Q.validate().ok


def test_quotient_projection_preserves_brackets():
    L = lemma23()
    I = Subspace.span([L.basis_vec(3)], 4, 3)
    Q, proj = L.quotient(I)
    rng = np.random.default_rng(9)
    for _ in range(10):
        u = rng.integers(0, 3, size=4)
        v = rng.integers(0, 3, size=4)
        lhs = (proj @ L.bracket_vec(u, v)) % 3
        rhs = Q.bracket_vec((proj @ u) % 3, (proj @ v) % 3)
        assert np.array_equal(lhs, rhs)


def test_format_vec():
    L = heis()
    assert L.format_vec([1, 0, 2]) == "x + 2*z"
    assert L.format_vec([0, 0, 0]) == "0"
