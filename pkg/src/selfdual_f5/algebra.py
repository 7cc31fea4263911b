"""Exact linear algebra over F_p and over Z.

Matrices over F_p live in :class:`FpMatrix` (canonical residues, numpy
storage).  Integer matrices are plain numpy arrays of ``dtype=object`` holding
Python ints, so nothing ever wraps around; :func:`zmatrix` builds one.

Hermite normal form convention used everywhere in the package: row style,
upper triangular, positive pivots, entries above a pivot reduced into
``[0, pivot)``, zero rows dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

_SMALL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


class DependentRowsError(ValueError):
    pass


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    return inv


_INV = {p: _inverse_table(p) for p in _SMALL_PRIMES}


@dataclass(frozen=True, eq=False)
class FpMatrix:
    """Matrix over the prime field F_p with entries stored as residues 0..p-1."""

    data: np.ndarray
    p: int = 5
    _frozen: bool = field(default=False, repr=False)

    def __post_init__(self):
        if self.p not in _INV:
            raise ValueError(f"p must be an odd prime <= 31, got {self.p}")
        arr = np.array(self.data, dtype=np.int64, copy=True)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("FpMatrix needs a 2-d array")
        arr %= self.p
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int = 5) -> "FpMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int = 5) -> "FpMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        return FpMatrix(self.data @ other.data, self.p)

    @property
    def T(self) -> "FpMatrix":
        return FpMatrix(self.data.T, self.p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.data.shape == other.data.shape and bool(
            np.array_equal(self.data, other.data)
        )

    def __hash__(self):
        return hash((self.p, self.data.shape, self.data.tobytes()))

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()


@dataclass(frozen=True)
class RREF:
    R: FpMatrix
    rank: int
    pivots: tuple[int, ...]


def rref(M: FpMatrix) -> RREF:
    """Reduced row echelon form over F_p, zero rows kept at the bottom."""
    p = M.p
    inv = _INV[p]
    A = M.data.copy()
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * inv[A[r, c]]) % p
        others = np.nonzero(A[:, c])[0]
        for j in others:
            if j != r:
                A[j] = (A[j] - A[j, c] * A[r]) % p
        pivots.append(c)
        r += 1
    return RREF(FpMatrix(A, p), r, tuple(pivots))


def rank(M: FpMatrix) -> int:
    return rref(M).rank


def kernel_basis(M: FpMatrix) -> FpMatrix:
    """Rows spanning {v : M v^T = 0}, in RREF."""
    red = rref(M)
    p, n = M.p, M.cols
    R = red.R.data[: red.rank]
    free = [c for c in range(n) if c not in red.pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(red.pivots):
            basis[t, pc] = (-R[i, f]) % p
    if not free:
        return FpMatrix.zeros(0, n, p)
    return rref(FpMatrix(basis, p)).R


# ---------------------------------------------------------------------------
# integer matrices


def zmatrix(rows: Iterable[Iterable[int]] | np.ndarray, cols: int | None = None) -> np.ndarray:
    """Integer matrix as an object array of Python ints."""
    if isinstance(rows, np.ndarray):
        out = np.empty(rows.shape, dtype=object)
        for idx in np.ndindex(rows.shape):
            out[idx] = int(rows[idx])
        if out.ndim == 1:
            out = out.reshape(1, -1) if out.size else np.empty((0, cols or 0), dtype=object)
        return out
    rows = [[int(x) for x in r] for r in rows]
    if not rows:
        return np.empty((0, cols or 0), dtype=object)
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, r in enumerate(rows):
        if len(r) != out.shape[1]:
            raise ValueError("ragged integer matrix")
        out[i, :] = r
    return out


def as_int64(A: np.ndarray, limit: int = 2**31) -> np.ndarray:
    """Convert an exact integer matrix to int64, refusing entries beyond ``limit``."""
    if A.size and max(abs(int(x)) for x in A.flat) >= limit:
        raise OverflowError("integer entries too large for the int64 fast path")
    return np.array(A, dtype=np.int64)


def hnf(A: np.ndarray) -> np.ndarray:
    """Row-style Hermite normal form (upper triangular, zero rows removed)."""
    M = [[int(x) for x in row] for row in np.asarray(A, dtype=object)]
    ncols = np.asarray(A).shape[1] if np.asarray(A).ndim == 2 else 0
    out: list[list[int]] = []
    r = 0
    for c in range(ncols):
        # gcd-combine every row below r into row r at column c
        for i in range(r + 1, len(M)):
            a, b = M[r][c], M[i][c]
            if b == 0:
                continue
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            Rr, Ri = M[r], M[i]
            M[r] = [x * u + y * v for u, v in zip(Rr, Ri)]
            M[i] = [-bg * u + ag * v for u, v in zip(Rr, Ri)]
        if r < len(M) and M[r][c] != 0:
            if M[r][c] < 0:
                M[r] = [-u for u in M[r]]
            piv = M[r][c]
            for i in range(r):
                q = M[i][c] // piv
                if q:
                    M[i] = [u - q * v for u, v in zip(M[i], M[r])]
            r += 1
            if r == len(M):
                break
    out = [row for row in M[:r]]
    return zmatrix(out, ncols)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def det(A: np.ndarray) -> int:
    """Exact determinant (Bareiss fraction-free elimination)."""
    M = [[int(x) for x in row] for row in np.asarray(A, dtype=object)]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def solve_integer(B: np.ndarray, t: Sequence[int]) -> list[int] | None:
    """Return integer ``c`` with ``c @ B == t``, or None if ``t`` is not in the row lattice.

    Raises DependentRowsError when the rows of ``B`` are linearly dependent.
    """
    rowsB = [[Fraction(int(x)) for x in row] for row in np.asarray(B, dtype=object)]
    m = len(rowsB)
    n = len(t)
    # solve B^T c = t: an n x m system, augmented
    aug = [[rowsB[j][i] for j in range(m)] + [Fraction(int(t[i]))] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if pr is None:
            raise DependentRowsError("rows of B are linearly dependent")
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][m] != 0 for i in range(r, n)):
        return None
    sol = [aug[i][m] for i in range(m)]
    if any(x.denominator != 1 for x in sol):
        return None
    return [int(x) for x in sol]


# ---------------------------------------------------------------------------
# matrix text format


def parse_matrix_lines(lines: Iterable[str]) -> list[list[int]]:
    rows = []
    for line in lines:
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        rows.append([int(tok) for tok in s.split()])
    return rows


def format_matrix(rows) -> str:
    return "\n".join(" ".join(str(int(x)) for x in row) for row in rows)
