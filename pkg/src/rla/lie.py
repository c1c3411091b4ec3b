"""Restricted Lie algebra structure over F_p.

A LieAlgebra is given by structure constants on a finite basis plus the
images of the basis under the power mapping.  Validation checks the two
axioms that make such a table legitimate: the Jacobi identity on all basis
triples, and the Jacobson compatibility ad(b_i^[p]) = (ad b_i)^p which
guarantees the basis-defined power map extends to the whole algebra.

All structural computations (derived subalgebra, center, central series,
quotients, restricted closure) are exact linear algebra from rla.gf.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from rla import gf
from rla.gf import Subspace


@dataclass
class ValidationReport:
    ok: bool
    jacobi_failures: list = field(default_factory=list)    # (i, j, k) triples
    jacobson_failures: list = field(default_factory=list)  # basis indices

    def message(self, names=None) -> str:
        if self.ok:
            return "valid"
        lines = []
        for (i, j, k) in self.jacobi_failures:
            if names:
                lines.append("jacobi fails on (%s, %s, %s)" % (names[i], names[j], names[k]))
            else:
                lines.append("jacobi fails on triple (%d, %d, %d)" % (i, j, k))
        for i in self.jacobson_failures:
            nm = names[i] if names else str(i)
            lines.append("jacobson condition fails at basis element %s" % nm)
        return "\n".join(lines)


class LieAlgebra:
    """Restricted Lie algebra from structure constants.

    `bracket` is indexable as bracket[i][j] (or a dict keyed by (i, j)) for
    i < j, giving the coordinates of [b_i, b_j]; missing/None entries mean 0
    and the rest is filled in by antisymmetry.  `pmap[i]` holds b_i^[p].
    """

    def __init__(self, p, names, bracket, pmap):
        self.p = gf.check_prime(p)
        self.names = tuple(str(x) for x in names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be distinct")
        n = len(self.names)
        self.n = n
        B = np.zeros((n, n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i + 1, n):
                if isinstance(bracket, dict):
                    entry = bracket.get((i, j))
                else:
                    entry = bracket[i][j]
                if entry is None:
                    continue
                v = gf.as_vec(entry, n, self.p)
                B[i, j] = v
                B[j, i] = (-v) % self.p
        self.bracket = B
        if n:
            self.pmap = np.array([gf.as_vec(row, n, self.p) for row in pmap],
                                 dtype=np.int64).reshape(n, n)
        else:
            self.pmap = np.zeros((0, 0), dtype=np.int64)
        self.bracket.setflags(write=False)
        self.pmap.setflags(write=False)
        self._env = None

    # -- basic maps ----------------------------------------------------

    def ad(self, i: int) -> np.ndarray:
        """Matrix of ad(b_i): column k is [b_i, b_k]."""
        return self.bracket[i].T.copy()

    def ad_of(self, v) -> np.ndarray:
        v = gf.as_vec(v, self.n, self.p)
        return np.tensordot(v, self.bracket, axes=(0, 0)).T % self.p

    def bracket_vec(self, u, v) -> np.ndarray:
        u = gf.as_vec(u, self.n, self.p)
        v = gf.as_vec(v, self.n, self.p)
        return np.einsum("i,j,ijk->k", u, v, self.bracket) % self.p

    def basis_vec(self, i: int) -> np.ndarray:
        e = np.zeros(self.n, dtype=np.int64)
        e[i] = 1
        return e

    def format_vec(self, v) -> str:
        v = gf.as_vec(v, self.n, self.p)
        terms = []
        for i, c in enumerate(v):
            if c == 0:
                continue
            terms.append(self.names[i] if c == 1 else "%d*%s" % (c, self.names[i]))
        return " + ".join(terms) if terms else "0"

    # -- validation ----------------------------------------------------

    def _matpow(self, M: np.ndarray, k: int) -> np.ndarray:
        R = np.eye(self.n, dtype=np.int64)
        A = M % self.p
        while k:
            if k & 1:
                R = (R @ A) % self.p
            A = (A @ A) % self.p
            k >>= 1
        return R

    def validate(self) -> ValidationReport:
        p, n = self.p, self.n
        rep = ValidationReport(ok=True)
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    s = (self.bracket_vec(self.bracket[i, j], self.basis_vec(k))
                         + self.bracket_vec(self.bracket[j, k], self.basis_vec(i))
                         + self.bracket_vec(self.bracket[k, i], self.basis_vec(j))) % p
                    if s.any():
                        rep.jacobi_failures.append((i, j, k))
        for i in range(n):
            if not np.array_equal(self.ad_of(self.pmap[i]),
                                  self._matpow(self.ad(i), p)):
                rep.jacobson_failures.append(i)
        rep.ok = not rep.jacobi_failures and not rep.jacobson_failures
        return rep

    # -- structural subspaces -------------------------------------------

    def derived_subalgebra(self) -> Subspace:
        rows = [self.bracket[i, j] for i in range(self.n) for j in range(i + 1, self.n)]
        rows = np.array(rows, dtype=np.int64).reshape(-1, self.n)
        return Subspace.span(rows, self.n, self.p)

    def centralizer(self, S: Subspace) -> Subspace:
        """{x : [x, s] = 0 for all s in S}."""
        if S.ambient != self.n:
            raise ValueError("dimension mismatch")
        if S.dim == 0:
            return Subspace.full(self.n, self.p)
        stacked = np.vstack([self.ad_of(s) for s in S.rows])
        return gf.nullspace(stacked, self.p)

    def center(self) -> Subspace:
        return self.centralizer(Subspace.full(self.n, self.p))

    @property
    def is_abelian(self) -> bool:
        return not self.bracket.any()

    # -- central series -------------------------------------------------

    def upper_central_series(self):
        """[0, zeta_1, ...] strictly increasing until stabilization."""
        chain = [Subspace.zero(self.n, self.p)]
        while True:
            Z = chain[-1]
            red = Z.reduction_matrix()
            # x in the next term  <=>  [b_i, x] reduces to 0 mod Z for all i
            stacked = np.vstack([(red @ self.ad(i)) % self.p for i in range(self.n)]) \
                if self.n else np.zeros((0, 0), dtype=np.int64)
            nxt = gf.nullspace(stacked, self.p) if self.n else Subspace.zero(0, self.p)
            if nxt.dim == Z.dim:
                break
            chain.append(nxt)
        return chain

    def lower_central_series(self):
        """[L, gamma_2, ...] until stabilization (reaches 0 iff nilpotent)."""
        chain = [Subspace.full(self.n, self.p)]
        while True:
            G = chain[-1]
            rows = [self.bracket_vec(g, self.basis_vec(i))
                    for g in G.rows for i in range(self.n)]
            rows = np.array(rows, dtype=np.int64).reshape(-1, self.n)
            nxt = Subspace.span(rows, self.n, self.p)
            if nxt.dim == G.dim:
                break
            chain.append(nxt)
            if nxt.dim == 0:
                break
        return chain

    def nilpotency_class(self):
        """Least c with gamma_{c+1} = 0, or None when not nilpotent."""
        chain = self.lower_central_series()
        if chain[-1].dim != 0:
            return None
        return len(chain) - 1

    @property
    def is_nilpotent(self) -> bool:
        return self.nilpotency_class() is not None

    # -- power mapping beyond the basis ----------------------------------

    def env(self, max_dim=None):
        """Enveloping algebra handle (cached) for general power-map values."""
        if self._env is None:
            from rla.env import EnvAlgebra
            self._env = EnvAlgebra(self, max_dim=max_dim)
        return self._env

    def pmap_general(self, x) -> np.ndarray:
        """x^[p] for arbitrary x: the associative p-th power of the embedded
        element, which lands back in L by restrictedness."""
        x = gf.as_vec(x, self.n, self.p)
        env = self.env()
        power = env.embed(x) ** self.p
        out = np.zeros(self.n, dtype=np.int64)
        for idx, c in power.terms.items():
            exps = env.decode(idx)
            if sum(exps) != 1:
                raise ValueError("p-th power of %s does not lie in the embedded "
                                 "algebra; the structure table is not restricted"
                                 % self.format_vec(x))
            out[exps.index(1)] = c
        return out

    # -- restricted ideals and quotients ---------------------------------

    def restricted_closure(self, S: Subspace) -> Subspace:
        """Least subspace containing S closed under bracketing with L and
        under the power mapping (fixpoint iteration)."""
        V = S
        while True:
            rows = [V.rows] if V.dim else []
            for v in V.rows:
                for i in range(self.n):
                    rows.append(self.bracket_vec(v, self.basis_vec(i)).reshape(1, -1))
                rows.append(self.pmap_general(v).reshape(1, -1))
            if not rows:
                return V
            nxt = Subspace.span(np.vstack(rows), self.n, self.p)
            if nxt.dim == V.dim:
                return nxt
            V = nxt

    def is_restricted_ideal(self, I: Subspace):
        """(ok, offending vector or None)."""
        for v in I.rows:
            for i in range(self.n):
                w = self.bracket_vec(v, self.basis_vec(i))
                if not I.member(w):
                    return False, w
            w = self.pmap_general(v)
            if not I.member(w):
                return False, w
        return True, None

    def quotient(self, I: Subspace):
        """Quotient by a restricted ideal.

        The complement is spanned by the basis vectors at the non-pivot
        coordinates of I.  Returns (Q, proj) with proj the (n_new, n) matrix
        of the canonical projection.
        """
        ok, bad = self.is_restricted_ideal(I)
        if not ok:
            raise ValueError("not a restricted ideal; witness %s" % self.format_vec(bad))
        pivset = set(I.pivots)
        keep = [c for c in range(self.n) if c not in pivset]
        proj = I.reduction_matrix()[keep, :] % self.p

        m = len(keep)
        names = [self.names[c] for c in keep]
        table = {}
        for a in range(m):
            for b in range(a + 1, m):
                table[(a, b)] = (proj @ self.bracket[keep[a], keep[b]]) % self.p
        pmap = [(proj @ self.pmap[c]) % self.p for c in keep]
        Q = LieAlgebra(self.p, names, table, pmap)
        return Q, proj
