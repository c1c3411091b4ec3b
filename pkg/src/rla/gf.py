"""Exact linear algebra over the prime field F_p.

Scalars are plain Python ints reduced into [0, p-1]; the modulus travels with
the containing object (Subspace, algebra, ...) rather than per scalar.
Matrices and vectors are int64 numpy arrays.  Everything here is pure and
deterministic: row reduction always picks the first nonzero entry in column
order, so two equal subspaces have bit-identical canonical bases.
"""

from __future__ import annotations

import numpy as np

MAX_PRIME = 2**31


def check_prime(p: int) -> int:
    """Validate the modulus by trial division.  Returns p, raises ValueError."""
    if not isinstance(p, (int, np.integer)):
        raise ValueError("p must be an integer")
    p = int(p)
    if p < 2 or p >= MAX_PRIME:
        raise ValueError("p must be a prime with 2 <= p < 2^31, got %d" % p)
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise ValueError("p = %d is not prime (divisible by %d)" % (p, d))
        d += 1
    return p


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 mod %d" % p)
    return pow(a, p - 2, p)


def as_vec(v, d: int, p: int) -> np.ndarray:
    """Coerce a coordinate sequence to a reduced int64 vector of length d."""
    a = np.asarray(v, dtype=np.int64)
    if a.shape != (d,):
        raise ValueError("dimension mismatch: expected length %d, got %r" % (d, a.shape))
    return a % p


def rref(mat, p: int):
    """Reduced row echelon form mod p.

    Returns (R, pivots) with R the canonical RREF (pivot entries 1, zeros
    above and below each pivot, zero rows dropped) and pivots the strictly
    increasing pivot column list.
    """
    A = np.array(mat, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    A %= p
    m, d = A.shape
    pivots = []
    r = 0
    for col in range(d):
        if r == m:
            break
        nz = np.nonzero(A[r:, col])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * inv_mod(int(A[r, col]), p)) % p
        other = np.nonzero(A[:, col])[0]
        other = other[other != r]
        if other.size:
            A[other] = (A[other] - np.outer(A[other, col], A[r])) % p
        pivots.append(col)
        r += 1
    return A[:r], pivots


def nullspace(mat, p: int) -> "Subspace":
    """Canonical basis of {x : mat @ x = 0 (mod p)}."""
    A = np.asarray(mat, dtype=np.int64)
    m, d = A.shape
    R, pivots = rref(A, p)
    pivset = set(pivots)
    free = [c for c in range(d) if c not in pivset]
    rows = np.zeros((len(free), d), dtype=np.int64)
    for k, f in enumerate(free):
        rows[k, f] = 1
        for r, c in enumerate(pivots):
            rows[k, c] = (-R[r, f]) % p
    return Subspace.span(rows, d, p)


class Subspace:
    """A subspace of F_p^d held as a canonical RREF basis.

    Two Subspace values are equal as sets of vectors iff their canonical
    forms are identical, so == is just an array comparison.  Instances are
    immutable and safe to share.
    """

    __slots__ = ("p", "ambient", "rows", "pivots")

    def __init__(self, rows: np.ndarray, pivots, ambient: int, p: int):
        # internal: rows must already be canonical RREF
        rows = np.asarray(rows, dtype=np.int64)
        rows.setflags(write=False)
        self.rows = rows
        self.pivots = tuple(int(c) for c in pivots)
        self.ambient = int(ambient)
        self.p = int(p)

    @classmethod
    def span(cls, rows, ambient: int, p: int) -> "Subspace":
        rows = np.asarray(rows, dtype=np.int64)
        if rows.size == 0:
            rows = rows.reshape(0, ambient)
        if rows.ndim != 2 or rows.shape[1] != ambient:
            raise ValueError("dimension mismatch: rows must have length %d" % ambient)
        R, pivots = rref(rows, p)
        return cls(R, pivots, ambient, p)

    @classmethod
    def zero(cls, ambient: int, p: int) -> "Subspace":
        return cls(np.zeros((0, ambient), dtype=np.int64), (), ambient, p)

    @classmethod
    def full(cls, ambient: int, p: int) -> "Subspace":
        return cls(np.eye(ambient, dtype=np.int64), range(ambient), ambient, p)

    @property
    def dim(self) -> int:
        return self.rows.shape[0]

    def _check_compatible(self, other: "Subspace"):
        if self.ambient != other.ambient or self.p != other.p:
            raise ValueError("dimension mismatch between subspaces")

    def reduce(self, v) -> np.ndarray:
        """Residual of v after subtracting its projection onto this span."""
        w = as_vec(v, self.ambient, self.p)
        if self.dim:
            coeffs = w[list(self.pivots)]
            w = (w - coeffs @ self.rows) % self.p
        return w

    def member(self, v) -> bool:
        return not self.reduce(v).any()

    def reduction_matrix(self) -> np.ndarray:
        """Matrix M with M @ v = self.reduce(v) for column vectors v."""
        M = np.eye(self.ambient, dtype=np.int64)
        if self.dim:
            P = np.zeros((self.dim, self.ambient), dtype=np.int64)
            for j, c in enumerate(self.pivots):
                P[j, c] = 1
            M = (M - self.rows.T @ P) % self.p
        return M

    def contains(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(self.member(r) for r in other.rows)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.span(np.vstack([self.rows, other.rows]), self.ambient, self.p)

    __add__ = sum

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: RREF of [[S S],[T 0]]; rows supported only on the
        right block form a basis of the intersection."""
        self._check_compatible(other)
        d = self.ambient
        top = np.hstack([self.rows, self.rows])
        bot = np.hstack([other.rows, np.zeros_like(other.rows)])
        R, pivots = rref(np.vstack([top, bot]), self.p)
        keep = [r for r, c in enumerate(pivots) if c >= d]
        return Subspace.span(R[keep, d:], d, self.p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.p == other.p and self.ambient == other.ambient
                and self.rows.shape == other.rows.shape
                and bool(np.array_equal(self.rows, other.rows)))

    def __hash__(self):
        return hash((self.p, self.ambient, self.rows.tobytes()))

    def __repr__(self):
        return "Subspace(dim=%d, ambient=%d, p=%d)" % (self.dim, self.ambient, self.p)
