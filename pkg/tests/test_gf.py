import numpy as np
import pytest

from rla import gf
from rla.gf import Subspace


def test_check_prime():
    for p in (2, 3, 5, 7, 101, 2**31 - 1):
        assert gf.check_prime(p) == p
    for bad in (0, 1, 4, 6, 9, 91, 2**31):
        with pytest.raises(ValueError):
            gf.check_prime(bad)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 97, 101])
def test_field_axioms_exhaustive(p):
    # a^(p-1) = 1 for a != 0, inverses invert, distributivity on a sample
    for a in range(1, p):
        assert pow(a, p - 1, p) == 1
        assert a * gf.inv_mod(a, p) % p == 1
    for a in range(p):
        for b in range(p):
            assert (a + b) % p == (b + a) % p
            assert (a * b) % p == (b * a) % p


def test_rref_scalar_multiple_rows():
    S = Subspace.span([[1, 2], [2, 4]], 2, 5)
    assert S.dim == 1
    assert np.array_equal(S.rows, [[1, 2]])


def test_rref_empty():
    S = Subspace.span([], 3, 5)
    assert S.dim == 0
    assert S.ambient == 3


def test_rref_full_rank_by_hand():
    # Gaussian elimination by hand: swap to put (1,0,0) first, clear, yields I
    S = Subspace.span([[0, 1, 0], [1, 0, 0], [1, 1, 1]], 3, 3)
    assert S.dim == 3
    assert np.array_equal(S.rows, np.eye(3, dtype=np.int64))


def test_rref_idempotent():
    rng = np.random.default_rng(7)
    for p in (2, 3, 5):
        M = rng.integers(0, p, size=(5, 7))
        S = Subspace.span(M, 7, p)
        again = Subspace.span(S.rows, 7, p)
        assert S == again


def test_member():
    assert Subspace.span([[1, 2]], 2, 5).member([2, 4])
    assert Subspace.zero(2, 5).member([0, 0])
    assert not Subspace.span([[1, 1]], 2, 3).member([1, 0])
    with pytest.raises(ValueError):
        Subspace.span([[1, 1]], 2, 3).member([1, 0, 0])


def test_member_matches_rank_criterion():
    rng = np.random.default_rng(3)
    for p in (2, 3, 5):
        for _ in range(25):
            M = rng.integers(0, p, size=(3, 6))
            S = Subspace.span(M, 6, p)
            v = rng.integers(0, p, size=6)
            grown = Subspace.span(np.vstack([S.rows, v.reshape(1, -1)]), 6, p)
            assert S.member(v) == (grown.dim == S.dim)


def test_sum_intersect_trivial():
    e1 = [1, 0, 0]
    e2 = [0, 1, 0]
    e3 = [0, 0, 1]
    A = Subspace.span([e1], 3, 5)
    B = Subspace.span([e2], 3, 5)
    assert A.sum(B) == Subspace.span([e1, e2], 3, 5)
    C = Subspace.span([e1, e2], 3, 5)
    D = Subspace.span([e2, e3], 3, 5)
    assert C.intersect(D) == Subspace.span([e2], 3, 5)


def test_equal_same_line():
    assert Subspace.span([[1, 1]], 2, 3) == Subspace.span([[2, 2]], 2, 3)


def test_dim_formula_random():
    rng = np.random.default_rng(11)
    for p in (2, 3, 5, 7):
        for _ in range(30):
            S = Subspace.span(rng.integers(0, p, size=(3, 8)), 8, p)
            T = Subspace.span(rng.integers(0, p, size=(4, 8)), 8, p)
            assert (S.sum(T).dim + S.intersect(T).dim) == S.dim + T.dim


def test_intersect_contained_in_both():
    rng = np.random.default_rng(13)
    for _ in range(20):
        S = Subspace.span(rng.integers(0, 3, size=(3, 6)), 6, 3)
        T = Subspace.span(rng.integers(0, 3, size=(3, 6)), 6, 3)
        I = S.intersect(T)
        assert S.contains(I) and T.contains(I)


def test_nullspace():
    # kernel of [[1,1,0],[0,0,1]] mod 3 is spanned by (1,-1,0)
    N = gf.nullspace([[1, 1, 0], [0, 0, 1]], 3)
    assert N.dim == 1
    assert N.member([1, 2, 0])
    M = np.array([[1, 1, 0], [0, 0, 1]])
    for row in N.rows:
        assert not ((M @ row) % 3).any()


def test_reduction_matrix():
    rng = np.random.default_rng(5)
    S = Subspace.span(rng.integers(0, 5, size=(3, 7)), 7, 5)
    R = S.reduction_matrix()
    for _ in range(10):
        v = rng.integers(0, 5, size=7)
        assert np.array_equal((R @ v) % 5, S.reduce(v))


def test_dimension_mismatch_errors():
    A = Subspace.span([[1, 0]], 2, 3)
    B = Subspace.span([[1, 0, 0]], 3, 3)
    with pytest.raises(ValueError):
        A.sum(B)
    with pytest.raises(ValueError):
        A.intersect(B)
