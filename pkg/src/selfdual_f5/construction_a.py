"""Construction A over F5 and the code/lattice correspondence.

Lattice vectors are stored by integer ambient coordinates x with the inner
product x.y / 5, i.e. the lattice point is x / sqrt(5).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import algebra
from .algebra import FpMatrix, zmatrix
from .codes import CompositionTable, LinearCode, from_generator, is_self_orthogonal
from .lattices import GramLattice, LatticeError, decompose, member

SCALE = 5


class NotSelfOrthogonalError(ValueError):
    pass


class SupportMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class ConstructionALattice:
    code: LinearCode
    lattice: GramLattice


def construction_a(C: LinearCode) -> ConstructionALattice:
    """The lattice (1/sqrt 5){x in Z^n : x mod 5 in C} for a self-orthogonal C."""
    if C.p != 5:
        raise ValueError("Construction A is implemented for p = 5")
    if not is_self_orthogonal(C):
        raise NotSelfOrthogonalError("Gram matrix would not be integral: code is not self-orthogonal")
    gens = np.vstack([C.generator.data, SCALE * np.eye(C.n, dtype=np.int64)])
    B = algebra.hnf(zmatrix(gens))
    gram = B.dot(B.T) // SCALE
    return ConstructionALattice(C, GramLattice(gram, B, SCALE))


# ---------------------------------------------------------------------------
# theta series from the composition census


@lru_cache(maxsize=None)
def _residue_series(j: int, length: int) -> tuple[int, ...]:
    """Counts of integers m = j (mod 5) with m^2 = e, for e < length (units of 1/5)."""
    out = [0] * length
    m = 0
    while m * m < length:
        for s in {m, -m}:
            if s % 5 == j:
                out[s * s] += 1
        m += 1
    return tuple(out)


def _mul(a: list[int], b: list[int], length: int) -> list[int]:
    out = [0] * length
    for i, x in enumerate(a):
        if x:
            for j in range(length - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _power(base: tuple[int, ...], e: int, length: int, cache: dict) -> list[int]:
    key = (base, e)
    if key not in cache:
        if e == 0:
            cache[key] = [1] + [0] * (length - 1)
        else:
            half = _power(base, e // 2, length, cache)
            sq = _mul(half, half, length)
            cache[key] = _mul(sq, list(base), length) if e % 2 else sq
    return cache[key]


def theta_from_compositions(T: CompositionTable, max_norm: int) -> list[int]:
    """Theta coefficients a_0..a_max_norm of Construction A from codeword compositions.

    Each coordinate class contributes a one-dimensional coset series
    sum_{m = j mod 5} q^(m^2 / 5); a codeword contributes their product.
    """
    length = SCALE * max_norm + 1
    series = [_residue_series(j, length) for j in range(3)]
    cache: dict = {}
    total = [0] * length
    for (n0, n1, n2), count in T.counts.items():
        prod = _power(series[0], n0, length, cache)
        prod = _mul(prod, _power(series[1], n1, length, cache), length)
        prod = _mul(prod, _power(series[2], n2, length, cache), length)
        for e, v in enumerate(prod):
            total[e] += count * v
    if any(total[e] for e in range(length) if e % SCALE):
        raise NotSelfOrthogonalError("non-integral norms: code is not self-orthogonal")
    return [total[SCALE * m] for m in range(max_norm + 1)]


def kissing_from_compositions(T: CompositionTable, max_norm: int = 5) -> tuple[int, int]:
    """(minimum norm, kissing number) of Construction A, read off the theta series.

    ``max_norm`` is at least 5 so the norm-5 vectors 5 e_i / sqrt 5 are always seen.
    """
    theta = theta_from_compositions(T, max(max_norm, SCALE))
    for m in range(1, len(theta)):
        if theta[m]:
            return m, theta[m]
    raise AssertionError("unreachable: 5 e_i always has norm 5")


# ---------------------------------------------------------------------------
# decomposition helpers


def support(component: GramLattice) -> list[int]:
    """Ambient coordinates on which the component's basis is nonzero."""
    if component.basis is None:
        raise LatticeError("component has no basis provenance")
    return [j for j in range(component.ambient_dim) if any(component.basis[:, j])]


def merge_by_support(components: list[GramLattice]) -> list[GramLattice]:
    """Join components whose coordinate supports overlap.

    The merged blocks have pairwise disjoint supports, so each is the
    intersection of the lattice with a coordinate subspace.
    """
    sup = [set(support(c)) for c in components]
    parent = list(range(len(components)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(len(components)):
        for j in range(i):
            if sup[i] & sup[j]:
                parent[find(i)] = find(j)
    groups: dict = {}
    for i in range(len(components)):
        groups.setdefault(find(i), []).append(i)
    merged = []
    for idx in groups.values():
        if len(idx) == 1:
            merged.append(components[idx[0]])
            continue
        B = zmatrix(np.vstack([np.array(components[i].basis, dtype=object) for i in idx]))
        scale = components[idx[0]].scale
        merged.append(GramLattice(B.dot(B.T) // scale, B, scale))
    merged.sort(key=lambda c: min(support(c)))
    return merged


@dataclass(frozen=True)
class UnitVectorAssignment:
    owners: tuple  # owners[i] = tuple of component indices containing 5 e_i

    @property
    def ok(self) -> bool:
        return all(len(o) == 1 for o in self.owners)

    @property
    def mapping(self) -> dict[int, int]:
        return {i: o[0] for i, o in enumerate(self.owners) if len(o) == 1}

    @property
    def failures(self) -> list[int]:
        return [i for i, o in enumerate(self.owners) if len(o) != 1]

    def indices_of(self, comp: int) -> list[int]:
        return [i for i, o in enumerate(self.owners) if o == (comp,)]


def unit_vector_assignment(components: list[GramLattice], n: int) -> UnitVectorAssignment:
    """For each coordinate i, the components that contain 5 e_i (ambient scale 5)."""
    owners = []
    for i in range(n):
        v = [0] * n
        v[i] = SCALE
        owners.append(tuple(c for c, comp in enumerate(components) if member(comp, v, SCALE)))
    return UnitVectorAssignment(tuple(owners))


def component_code(component: GramLattice, coords: list[int]) -> LinearCode:
    """Reduce the component basis mod 5 and restrict it to ``coords``."""
    if component.basis is None:
        raise LatticeError("component has no basis provenance")
    coords = list(coords)
    outside = [j for j in range(component.ambient_dim) if j not in set(coords)]
    if any(component.basis[i, j] != 0 for i in range(component.dim) for j in outside):
        raise SupportMismatchError("component basis has entries outside the given support")
    B = np.array([[int(component.basis[i, j]) % SCALE for j in coords] for i in range(component.dim)], dtype=np.int64)
    return from_generator(FpMatrix(B.reshape(component.dim, len(coords)), SCALE))


@dataclass(frozen=True)
class CodeSplit:
    components: list  # indecomposable lattice summands
    blocks: list  # summands merged to disjoint coordinate supports
    assignment: UnitVectorAssignment
    supports: list
    codes: list


def split_code(C: LinearCode) -> CodeSplit:
    """Decompose A5(C) and read the coordinate-block component codes back off it."""
    lat = construction_a(C).lattice
    comps = decompose(lat)
    blocks = merge_by_support(comps)
    assign = unit_vector_assignment(blocks, C.n)
    supports = [assign.indices_of(b) for b in range(len(blocks))]
    codes = [component_code(blk, sup) for blk, sup in zip(blocks, supports)]
    return CodeSplit(comps, blocks, assign, supports, codes)
