"""Linear codes over F_p, weight enumerators and self-dual code generation."""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .algebra import FpMatrix, kernel_basis, rref

MAX_SWEEP_DIMENSION = 12
WORKERS_ENV = "SELFDUAL_F5_WORKERS"

WeightKind = Literal["hamming", "lee", "euclidean"]


class SweepBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class LinearCode:
    """An [n, k] code over F_p held by its canonical RREF generator matrix."""

    generator: FpMatrix
    n: int
    k: int

    @property
    def p(self) -> int:
        return self.generator.p

    def __str__(self) -> str:
        return f"[{self.n},{self.k}] code over F{self.p}"

    def codewords(self) -> np.ndarray:
        """All p**k codewords as rows (small k only)."""
        if self.k > 8:
            raise SweepBudgetError("explicit codeword listing limited to k <= 8")
        coeffs = np.array(list(itertools.product(range(self.p), repeat=self.k)), dtype=np.int64)
        coeffs = coeffs.reshape(self.p**self.k, self.k)
        return (coeffs @ self.generator.data) % self.p

    def contains(self, word) -> bool:
        w = np.asarray(word, dtype=np.int64) % self.p
        stacked = FpMatrix(np.vstack([self.generator.data, w[None, :]]), self.p)
        return rref(stacked).rank == self.k


def from_generator(M: FpMatrix | np.ndarray | list, p: int = 5) -> LinearCode:
    if not isinstance(M, FpMatrix):
        arr = np.asarray(M, dtype=np.int64)
        M = FpMatrix(arr.reshape(-1, arr.shape[-1]) if arr.size else arr.reshape(0, 0), p)
    red = rref(M)
    G = FpMatrix(red.R.data[: red.rank], M.p)
    return LinearCode(G, M.cols, red.rank)


def zero_code(n: int, p: int = 5) -> LinearCode:
    return LinearCode(FpMatrix.zeros(0, n, p), n, 0)


def dual(C: LinearCode) -> LinearCode:
    K = kernel_basis(C.generator) if C.k else FpMatrix.identity(C.n, C.p)
    return LinearCode(K, C.n, K.rows)


def is_self_orthogonal(C: LinearCode) -> bool:
    G = C.generator.data
    return not np.any((G @ G.T) % C.p)


def is_self_dual(C: LinearCode) -> bool:
    return C.n == 2 * C.k and is_self_orthogonal(C)


def direct_sum(C1: LinearCode, C2: LinearCode) -> LinearCode:
    if C1.p != C2.p:
        raise ValueError("codes over different fields")
    G = np.zeros((C1.k + C2.k, C1.n + C2.n), dtype=np.int64)
    G[: C1.k, : C1.n] = C1.generator.data
    G[C1.k :, C1.n :] = C2.generator.data
    return from_generator(FpMatrix(G, C1.p))


def permute(C: LinearCode, perm) -> LinearCode:
    """Code whose coordinate ``j`` is coordinate ``perm[j]`` of ``C``."""
    return from_generator(FpMatrix(C.generator.data[:, list(perm)], C.p))


def singleton_bound(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return n - k + 1


# ---------------------------------------------------------------------------
# composition census


@dataclass(frozen=True)
class CompositionTable:
    """Codeword counts keyed by (n0, n1, n2): coordinates of Lee weight 0, 1, 2."""

    n: int
    counts: dict

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def items(self):
        return sorted(self.counts.items())


def _workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def sweep_compositions(C: LinearCode, *, allow_large: bool = False) -> CompositionTable:
    """Exact census of all 5**k codewords by Lee composition."""
    if C.p != 5:
        raise ValueError("composition sweeps are defined for p = 5 only")
    if C.k > MAX_SWEEP_DIMENSION and not allow_large:
        raise SweepBudgetError(f"k = {C.k} exceeds the sweep budget (k <= {MAX_SWEEP_DIMENSION})")
    if C.k == 0:
        return CompositionTable(C.n, {(C.n, 0, 0): 1})
    from ._sweep import _key_weights, composition_census

    workers = _workers()
    nfix = 0
    while 5**nfix < 4 * workers and nfix < C.k:
        nfix += 1
    if workers > 1:
        import numba

        numba.set_num_threads(min(workers, numba.config.NUMBA_NUM_THREADS))
    G = np.ascontiguousarray(C.generator.data, dtype=np.int64)
    hist = composition_census(G, nfix, _key_weights(C.n))
    W = C.n + 1
    counts = {}
    for key in np.nonzero(hist)[0]:
        n1, n2 = int(key) % W, int(key) // W
        counts[(C.n - n1 - n2, n1, n2)] = int(hist[key])
    return CompositionTable(C.n, counts)


def naive_compositions(C: LinearCode) -> CompositionTable:
    """Reference census by explicit enumeration (k <= 8)."""
    words = C.codewords()
    lee = np.minimum(words, 5 - words)
    n1 = (lee == 1).sum(axis=1)
    n2 = (lee == 2).sum(axis=1)
    counts: dict = {}
    for a, b in zip(n1.tolist(), n2.tolist()):
        key = (C.n - a - b, a, b)
        counts[key] = counts.get(key, 0) + 1
    return CompositionTable(C.n, counts)


# ---------------------------------------------------------------------------
# weight enumerators


@dataclass(frozen=True)
class WeightEnumerator:
    """Bivariate polynomial with nonnegative integer coefficients.

    ``terms`` maps (x exponent, y exponent) to a coefficient.  Hamming
    enumerators are homogeneous of degree n; :attr:`coeffs` lists them by
    y exponent.
    """

    terms: dict

    @classmethod
    def homogeneous(cls, coeffs, degree: int) -> "WeightEnumerator":
        if len(coeffs) != degree + 1:
            raise ValueError("coefficient list must have degree + 1 entries")
        return cls({(degree - i, i): int(c) for i, c in enumerate(coeffs) if c})

    def coefficient(self, x_exp: int, y_exp: int) -> int:
        return self.terms.get((x_exp, y_exp), 0)

    @property
    def degree(self) -> int:
        degs = {a + b for a, b in self.terms}
        if len(degs) != 1:
            raise ValueError("enumerator is not homogeneous")
        return degs.pop()

    @property
    def coeffs(self) -> list[int]:
        n = self.degree
        return [self.coefficient(n - i, i) for i in range(n + 1)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightEnumerator):
            return NotImplemented
        return {k: v for k, v in self.terms.items() if v} == {
            k: v for k, v in other.terms.items() if v
        }

    def __hash__(self):
        return hash(tuple(sorted((k, v) for k, v in self.terms.items() if v)))

    def __str__(self) -> str:
        parts = []
        for (xe, ye), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], -kv[0][0])):
            if not c:
                continue
            mono = _power("x", xe) + _power("y", ye)
            parts.append(f"{c if c != 1 or not mono else ''}{mono}" or "1")
        return " + ".join(parts) if parts else "0"


def _power(v: str, e: int) -> str:
    if e == 0:
        return ""
    return v if e == 1 else f"{v}^{e}"


def _enumerator(T: CompositionTable, exps) -> WeightEnumerator:
    terms: dict = {}
    for comp, c in T.counts.items():
        key = exps(*comp)
        terms[key] = terms.get(key, 0) + c
    return WeightEnumerator(terms)


def hamming_enumerator(T: CompositionTable) -> WeightEnumerator:
    return _enumerator(T, lambda n0, n1, n2: (n0, n1 + n2))


def lee_enumerator(T: CompositionTable) -> WeightEnumerator:
    """sum over codewords of x^n0 y^(n1 + 2 n2)."""
    return _enumerator(T, lambda n0, n1, n2: (n0, n1 + 2 * n2))


def euclidean_weight_census(T: CompositionTable) -> dict[int, int]:
    out: dict[int, int] = {}
    for (n0, n1, n2), c in T.counts.items():
        w = n1 + 4 * n2
        out[w] = out.get(w, 0) + c
    return dict(sorted(out.items()))


def _weight(kind: str, n1: int, n2: int) -> int:
    if kind == "hamming":
        return n1 + n2
    if kind == "lee":
        return n1 + 2 * n2
    if kind == "euclidean":
        return n1 + 4 * n2
    raise ValueError(f"unknown weight kind {kind!r}")


def minimum_weight_from_table(T: CompositionTable, kind: WeightKind = "hamming") -> int:
    weights = [_weight(kind, n1, n2) for (n0, n1, n2) in T.counts if n0 != T.n]
    if not weights:
        raise ValueError("zero code has no minimum weight")
    return min(weights)


def minimum_weight(C: LinearCode, kind: WeightKind = "hamming") -> int:
    if C.k == 0:
        raise ValueError("zero code has no minimum weight")
    return minimum_weight_from_table(sweep_compositions(C), kind)


def low_weight_codeword(C: LinearCode, threshold: int) -> np.ndarray | None:
    """Some nonzero codeword of Hamming weight <= threshold, or None.

    Early-exit sweep in Gray order; deterministic for a given generator.
    """
    if C.k == 0:
        return None
    if C.p != 5:
        raise ValueError("sweeps are defined for p = 5 only")
    from ._sweep import find_low_weight

    coeffs = find_low_weight(np.ascontiguousarray(C.generator.data, dtype=np.int64), threshold)
    if coeffs[0] < 0:
        return None
    return (coeffs @ C.generator.data) % 5


def macwilliams_transform(W: WeightEnumerator, k: int, p: int = 5) -> WeightEnumerator:
    """p**(-k) W(x + (p-1) y, x - y) with exact integer coefficients."""
    n = W.degree
    out = [0] * (n + 1)
    for i, a in enumerate(W.coeffs):
        if not a:
            continue
        # (x + (p-1)y)^(n-i) (x - y)^i
        left = [math.comb(n - i, j) * (p - 1) ** j for j in range(n - i + 1)]
        right = [math.comb(i, j) * (-1) ** j for j in range(i + 1)]
        for s, u in enumerate(left):
            for t, v in enumerate(right):
                out[s + t] += a * u * v
    scale = p**k
    if any(c % scale for c in out):
        raise ValueError("MacWilliams transform has non-integer coefficients")
    return WeightEnumerator.homogeneous([c // scale for c in out], n)


# ---------------------------------------------------------------------------
# random self-dual codes


def _random_orthogonal(m: int, rng: np.random.Generator) -> np.ndarray:
    """Random element of O(m, F5): signed permutation times random reflections."""
    Q = np.zeros((m, m), dtype=np.int64)
    Q[np.arange(m), rng.permutation(m)] = rng.choice([1, 4], size=m)
    for _ in range(3 * m):
        v = rng.integers(0, 5, size=m)
        nv = int(v @ v) % 5
        if nv == 0:
            continue
        # reflection x -> x - 2 <x,v>/<v,v> v
        c = (2 * pow(nv, -1, 5)) % 5
        R = (np.eye(m, dtype=np.int64) - c * np.outer(v, v)) % 5
        Q = (Q @ R) % 5
    return Q


def random_self_dual(n: int, seed: int) -> LinearCode:
    """Self-dual [n, n/2] code with generator [I | A], A A^T = -I over F5.

    A = U (2I) V with U, V random orthogonal matrices; 2 * 2 = -1 in F5.
    Deterministic in ``seed`` (Philox counter-based generator).
    """
    if n % 2 or n <= 0:
        raise ValueError("self-dual codes need positive even length")
    m = n // 2
    rng = np.random.Generator(np.random.Philox(seed))
    U = _random_orthogonal(m, rng)
    V = _random_orthogonal(m, rng)
    A = (U @ (2 * V)) % 5
    G = np.concatenate([np.eye(m, dtype=np.int64), A], axis=1)
    return from_generator(FpMatrix(G, 5))
