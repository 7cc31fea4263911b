"""Integral lattices given by exact Gram matrices.

Covers determinants and parity, LLL reduction, Fincke-Pohst short-vector
enumeration, theta series, direct sums, orthogonal decomposition into
indecomposable summands, and the named lattices Z^n, D_n, D_n^+.

A lattice may carry basis provenance: integer coordinates of its basis in an
ambient frame whose inner product is ``dot / scale``.  D_n^+ uses scale 4
(coordinates doubled), Construction A lattices use scale 5.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import algebra
from .algebra import zmatrix

SLACK = 1.0 + 2.0**-20


class LatticeError(ValueError):
    pass


class DecompositionError(LatticeError):
    pass


def _leading_minors(G: np.ndarray) -> list[int]:
    """Leading principal minors by fraction-free elimination without pivoting."""
    M = [[int(x) for x in row] for row in G]
    n = len(M)
    minors = []
    prev = 1
    for k in range(n):
        piv = M[k][k]
        minors.append(piv)
        if piv <= 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * piv - M[i][k] * M[k][j]) // prev
        prev = piv
    return minors


@dataclass(frozen=True, eq=False)
class GramLattice:
    gram: np.ndarray
    basis: np.ndarray | None = None
    scale: int | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        G = zmatrix(self.gram)
        if G.ndim != 2 or G.shape[0] != G.shape[1]:
            raise LatticeError("Gram matrix must be square")
        if any(G[i, j] != G[j, i] for i in range(len(G)) for j in range(i)):
            raise LatticeError("Gram matrix must be symmetric")
        minors = _leading_minors(G)
        if len(G) and (len(minors) < len(G) or minors[-1] <= 0):
            raise LatticeError("Gram matrix is not positive definite")
        object.__setattr__(self, "gram", G)
        if self.basis is not None:
            B = zmatrix(self.basis)
            if self.scale is None or self.scale <= 0:
                raise LatticeError("basis provenance needs a positive scale")
            if B.shape[0] != len(G):
                raise LatticeError("basis row count must equal the dimension")
            prod = B.dot(B.T)
            for idx in np.ndindex(prod.shape):
                q, r = divmod(prod[idx], self.scale)
                if r or q != G[idx]:
                    raise LatticeError("Gram matrix disagrees with basis provenance")
            object.__setattr__(self, "basis", B)

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    @property
    def ambient_dim(self) -> int | None:
        return None if self.basis is None else self.basis.shape[1]

    def norm(self, coeffs) -> int:
        x = [int(c) for c in coeffs]
        G = self.gram
        return sum(x[i] * G[i, j] * x[j] for i in range(self.dim) for j in range(self.dim))

    def inner(self, u, v) -> int:
        u = [int(c) for c in u]
        v = [int(c) for c in v]
        return sum(u[i] * self.gram[i, j] * v[j] for i in range(self.dim) for j in range(self.dim))

    def ambient(self, coeffs) -> list[int]:
        """Ambient integer coordinates of the lattice vector with these coefficients."""
        if self.basis is None:
            raise LatticeError("lattice has no basis provenance")
        c = zmatrix([coeffs])
        return [int(v) for v in c.dot(self.basis)[0]]

    def same_gram(self, other: "GramLattice") -> bool:
        return self.gram.shape == other.gram.shape and bool(np.all(self.gram == other.gram))


# ---------------------------------------------------------------------------
# basic invariants


def determinant(L: GramLattice) -> int:
    return algebra.det(L.gram)


def is_unimodular(L: GramLattice) -> bool:
    return determinant(L) == 1


def is_even(L: GramLattice) -> bool:
    return all(int(L.gram[i, i]) % 2 == 0 for i in range(L.dim))


# ---------------------------------------------------------------------------
# LLL on the Gram matrix (all-integer variant with subdeterminants)


def lll_reduce(L: GramLattice, delta: Fraction = Fraction(99, 100)) -> tuple[GramLattice, np.ndarray]:
    """Return (reduced lattice, transform) with reduced.gram = T gram T^T."""
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    a, b = delta.numerator, delta.denominator
    n = L.dim
    G0 = [[int(x) for x in row] for row in L.gram]
    if n == 0:
        return L, zmatrix([], 0)
    # 1-indexed working arrays
    H = [[0] * (n + 1)] + [[0] + [int(i == j) for j in range(n)] for i in range(n)]
    lam = [[0] * (n + 1) for _ in range(n + 1)]
    d = [0] * (n + 1)
    d[0] = 1
    d[1] = G0[0][0]

    def dot(i, j):
        # <b_i, b_j> of the current basis
        Hi, Hj = H[i], H[j]
        Gj = [sum(G0[m][t] * Hj[t + 1] for t in range(n) if Hj[t + 1]) for m in range(n)]
        return sum(Hi[m + 1] * Gj[m] for m in range(n) if Hi[m + 1])

    def redi(k, l):
        if abs(2 * lam[k][l]) <= d[l]:
            return
        q = (2 * lam[k][l] + d[l]) // (2 * d[l])
        H[k] = [hk - q * hl for hk, hl in zip(H[k], H[l])]
        lam[k][l] -= q * d[l]
        for i in range(1, l):
            lam[k][i] -= q * lam[l][i]

    def swapi(k, kmax):
        H[k], H[k - 1] = H[k - 1], H[k]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        B = (d[k - 2] * d[k] + lm * lm) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lm * t) // d[k - 1]
            lam[i][k - 1] = (B * t + lm * lam[i][k]) // d[k]
        d[k - 1] = B

    k, kmax = 2, 1
    while k <= n:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = dot(k, j)
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise LatticeError("basis vectors are dependent")
                    d[k] = u
        while True:
            redi(k, k - 1)
            lm = lam[k][k - 1]
            if b * (d[k] * d[k - 2] + lm * lm) < a * d[k - 1] ** 2:
                swapi(k, kmax)
                k = max(2, k - 1)
                continue
            for l in range(k - 2, 0, -1):
                redi(k, l)
            k += 1
            break
    T = zmatrix([row[1:] for row in H[1:]])
    gram = T.dot(L.gram).dot(T.T)
    basis = None if L.basis is None else T.dot(L.basis)
    return GramLattice(gram, basis, L.scale, L.name), T


def lovasz_holds(L: GramLattice, delta: Fraction = Fraction(99, 100)) -> bool:
    """Exact check of size reduction and the Lovasz condition."""
    n = L.dim
    G = [[Fraction(int(x)) for x in row] for row in L.gram]
    mu = [[Fraction(0)] * n for _ in range(n)]
    Bs = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            mu[i][j] = (G[i][j] - sum(mu[j][t] * mu[i][t] * Bs[t] for t in range(j))) / Bs[j]
        Bs[i] = G[i][i] - sum(mu[i][t] ** 2 * Bs[t] for t in range(i))
    for i in range(1, n):
        if any(abs(mu[i][j]) > Fraction(1, 2) for j in range(i)):
            return False
        if Bs[i] < (delta - mu[i][i - 1] ** 2) * Bs[i - 1]:
            return False
    return True


# ---------------------------------------------------------------------------
# short vectors


@dataclass(frozen=True)
class ShortVectorReport:
    bound: int
    vectors: list  # (coefficient tuple, norm), one per +- pair, sorted
    counts_by_norm: dict  # norm -> count of vectors including both signs

    def count(self, norm: int) -> int:
        return self.counts_by_norm.get(norm, 0)


def _quadratic_form(gram: np.ndarray) -> np.ndarray:
    R = np.linalg.cholesky(np.array(gram, dtype=float)).T
    n = len(R)
    q = np.zeros((n, n))
    for i in range(n):
        q[i, i] = R[i, i] ** 2
        for j in range(i + 1, n):
            q[i, j] = R[i, j] / R[i, i]
    return q


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    nz = np.argmax(v != 0, axis=1)
    signs = np.sign(v[np.arange(len(v)), nz])
    return v * signs[:, None]


def _enumerate(L: GramLattice, bound: int) -> tuple[np.ndarray, np.ndarray]:
    """All nonzero vectors (one per +- pair) with norm <= bound, exact norms."""
    from ._enum import fincke_pohst

    n = L.dim
    if n == 0 or bound <= 0:
        return np.zeros((0, n), dtype=np.int64), np.zeros(0, dtype=np.int64)
    red, T = lll_reduce(L)
    q = _quadratic_form(red.gram)
    cap = 4096
    while True:
        out = np.zeros((cap, n), dtype=np.int64)
        cnt = fincke_pohst(q, bound * SLACK, out)
        if cnt >= 0:
            break
        cap *= 4
    Y = out[:cnt]
    T64 = algebra.as_int64(T, 2**20)
    X = Y @ T64
    G64 = algebra.as_int64(L.gram, 2**20)
    if X.size and int(np.abs(X).max()) > 2**15:
        raise OverflowError("enumerated coefficients too large for exact int64 scoring")
    norms = np.einsum("ij,jk,ik->i", X, G64, X)
    keep = norms <= bound
    X, norms = _canonical_sign(X[keep]), norms[keep]
    order = np.lexsort(tuple(X[:, j] for j in range(n - 1, -1, -1)) + (norms,))
    return X[order], norms[order]


def short_vectors(L: GramLattice, bound: int) -> ShortVectorReport:
    X, norms = _enumerate(L, bound)
    counts: dict = {}
    for m in norms.tolist():
        counts[m] = counts.get(m, 0) + 2
    vectors = [(tuple(int(c) for c in row), int(m)) for row, m in zip(X, norms)]
    return ShortVectorReport(bound, vectors, dict(sorted(counts.items())))


def naive_short_vector_counts(L: GramLattice, bound: int) -> dict:
    """Reference census by a coefficient box (small dimension only).

    Per-axis box from the exact inverse Gram: |x_i| <= sqrt(bound * (G^-1)_ii).
    """
    n = L.dim
    inv = _rational_inverse(L.gram)
    radii = [math.isqrt(int(math.floor(bound * inv[i][i]))) + 1 for i in range(n)]
    counts: dict = {}
    G = [[int(x) for x in row] for row in L.gram]
    for x in itertools.product(*(range(-r, r + 1) for r in radii)):
        if not any(x):
            continue
        m = sum(x[i] * G[i][j] * x[j] for i in range(n) for j in range(n))
        if m <= bound:
            counts[m] = counts.get(m, 0) + 1
    return dict(sorted(counts.items()))


def _rational_inverse(G: np.ndarray) -> list[list[Fraction]]:
    n = len(G)
    A = [[Fraction(int(G[i, j])) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [v / pv for v in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [u - f * v for u, v in zip(A[r], A[c])]
    return [row[n:] for row in A]


def minimum_norm(L: GramLattice) -> int:
    return _min_and_kissing(L)[0]


def kissing_number(L: GramLattice) -> int:
    return _min_and_kissing(L)[1]


def _min_and_kissing(L: GramLattice) -> tuple[int, int]:
    if L.dim == 0:
        raise LatticeError("zero lattice has no minimum")
    bound = 1
    while True:
        rep = short_vectors(L, bound)
        if rep.counts_by_norm:
            m = min(rep.counts_by_norm)
            return m, rep.counts_by_norm[m]
        bound += 1


def theta_series(L: GramLattice, max_norm: int) -> list[int]:
    rep = short_vectors(L, max_norm)
    return [1] + [rep.count(m) for m in range(1, max_norm + 1)]


# ---------------------------------------------------------------------------
# constructions


def direct_sum(L1: GramLattice, L2: GramLattice) -> GramLattice:
    n1, n2 = L1.dim, L2.dim
    G = zmatrix(np.zeros((n1 + n2, n1 + n2), dtype=np.int64))
    G[:n1, :n1] = L1.gram
    G[n1:, n1:] = L2.gram
    basis = scale = None
    if L1.basis is not None and L2.basis is not None and L1.scale == L2.scale:
        a1, a2 = L1.ambient_dim, L2.ambient_dim
        B = zmatrix(np.zeros((n1 + n2, a1 + a2), dtype=np.int64))
        B[:n1, :a1] = L1.basis
        B[n1:, a1:] = L2.basis
        basis, scale = B, L1.scale
    name = f"{L1.name}+{L2.name}" if L1.name and L2.name else ""
    return GramLattice(G, basis, scale, name)


def zn(n: int) -> GramLattice:
    I = np.eye(n, dtype=np.int64)
    return GramLattice(I, I, 1, f"Z{n}")


def _dn_basis(n: int) -> np.ndarray:
    B = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        B[i, i], B[i, i + 1] = 1, -1
    B[n - 1, n - 2], B[n - 1, n - 1] = 1, 1
    return B


def dn(n: int) -> GramLattice:
    if n < 2:
        raise ValueError("D_n needs n >= 2")
    B = _dn_basis(n)
    return GramLattice(B @ B.T, B, 1, f"D{n}")


def dn_plus(n: int) -> GramLattice:
    """D_n together with the glue vector (1/2, ..., 1/2).

    Ambient coordinates are doubled (scale 4) so the glue vector is integral.
    The basis is the Hermite normal form of the D_n basis plus the glue row.
    """
    if n % 4 or n < 4:
        raise ValueError("D_n^+ is integral only for n divisible by 4")
    gens = np.vstack([2 * _dn_basis(n), np.ones((1, n), dtype=np.int64)])
    B = algebra.hnf(zmatrix(gens))
    G = B.dot(B.T) // 4
    return GramLattice(G, B, 4, f"D{n}+")


# ---------------------------------------------------------------------------
# membership and decomposition


def member(L: GramLattice, v, scale: int | None = None) -> bool:
    """True iff ambient integer vector ``v`` is an integer combination of L's basis."""
    if L.basis is None:
        raise LatticeError("membership needs basis provenance")
    if scale is not None and scale != L.scale:
        raise LatticeError(f"frame mismatch: lattice scale {L.scale}, vector scale {scale}")
    if len(v) != L.ambient_dim:
        raise LatticeError("ambient dimension mismatch")
    return algebra.solve_integer(L.basis, v) is not None


def _lattice_membership(H: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Vectorised test of which rows of X lie in the row lattice of echelon form H."""
    R = X.copy()
    ok = np.ones(len(X), dtype=bool)
    for row in H:
        row = np.array(row, dtype=np.int64)
        c = int(np.nonzero(row)[0][0])
        q, r = np.divmod(R[:, c], row[c])
        ok &= r == 0
        R -= q[:, None] * row[None, :]
    ok &= ~np.any(R, axis=1)
    return ok


def _sublattice(L: GramLattice, coeff_rows: np.ndarray) -> GramLattice:
    S = algebra.hnf(zmatrix(coeff_rows))
    gram = S.dot(L.gram).dot(S.T)
    basis = None if L.basis is None else S.dot(L.basis)
    return GramLattice(gram, basis, L.scale)


def decompose(L: GramLattice) -> list[GramLattice]:
    """Split L into pairwise orthogonal indecomposable summands.

    Vectors of norm <= B (B the largest diagonal entry of an LLL-reduced
    Gram matrix) generate L.  Indecomposable vectors among them (those not of
    the form x + y with x, y nonzero and <x, y> >= 0) each lie in a single
    summand; a generating set of them splits into connected components under
    non-orthogonality, and the components span the indecomposable summands.
    """
    n = L.dim
    if n == 0:
        return []
    red, _ = lll_reduce(L)
    B = max(int(red.gram[i, i]) for i in range(n))
    X, norms = _enumerate(L, B)
    G64 = algebra.as_int64(L.gram, 2**20)
    XG = X @ G64
    target_det = determinant(L)

    chosen: list[int] = []
    H = np.zeros((0, n), dtype=np.int64)
    start = 0
    while start < len(X):
        if len(H) == n and algebra.det(_gram_of(H, L)) == target_det:
            break
        pending = np.arange(start, len(X))
        inside = _lattice_membership(H, X[pending]) if len(H) else np.zeros(len(pending), bool)
        outside = pending[~inside]
        if not len(outside):
            break
        for idx in outside:
            if _indecomposable(idx, X, XG, norms):
                break
        else:
            break
        chosen.append(int(idx))
        H = np.array(algebra.hnf(zmatrix(X[chosen])), dtype=np.int64)
        start = int(idx) + 1
    if len(H) != n or algebra.det(_gram_of(H, L)) != target_det:
        raise DecompositionError("indecomposable vectors below the bound do not generate the lattice")

    # union-find over the chosen generators
    parent = list(range(len(chosen)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for s in range(len(chosen)):
        for t in range(s):
            if XG[chosen[s]] @ X[chosen[t]] != 0:
                parent[find(s)] = find(t)
    groups: dict = {}
    for s in range(len(chosen)):
        groups.setdefault(find(s), []).append(chosen[s])
    comps = [_sublattice(L, X[idx]) for idx in groups.values()]

    if sum(c.dim for c in comps) != n or math.prod(determinant(c) for c in comps) != target_det:
        raise DecompositionError("components do not exhaust the lattice")
    comps.sort(key=lambda c: (-c.dim, [tuple(int(v) for v in r) for r in c.basis] if c.basis is not None else []))
    return comps


def _gram_of(H: np.ndarray, L: GramLattice) -> np.ndarray:
    S = zmatrix(H)
    return S.dot(L.gram).dot(S.T)


def _indecomposable(idx: int, X: np.ndarray, XG: np.ndarray, norms: np.ndarray) -> bool:
    nv = norms[idx]
    smaller = norms < nv
    if not smaller.any():
        return True
    ips = XG[smaller] @ X[idx]
    # x and -x both occur; x.v >= N(x) with v - x nonzero means decomposable
    return not np.any(np.abs(ips) >= norms[smaller])
