"""Numba kernels for exhaustive codeword sweeps over F5.

A codeword is visited once per step of a reflected base-5 Gray sequence over
the free coefficients, so each step adds +-1 times a single generator row.
The running composition is tracked as one integer key ``n1 + (n + 1) * n2``.
"""

import numpy as np
from numba import config, njit, prange

# TBB in this environment may be too old; workqueue is always available.
config.THREADING_LAYER = "workqueue"


# composition key contribution of each residue: Lee weight 1 -> 1, Lee weight 2 -> W
def _key_weights(n):
    W = n + 1
    return np.array([0, 1, W, W, 1], dtype=np.int64)


@njit(cache=True)
def _sparse_rows(G):
    k, n = G.shape
    nnz = np.zeros(k, dtype=np.int64)
    cols = np.zeros((k, n), dtype=np.int64)
    pos = np.zeros((k, n), dtype=np.int64)
    neg = np.zeros((k, n), dtype=np.int64)
    for r in range(k):
        for j in range(n):
            g = G[r, j]
            if g != 0:
                t = nnz[r]
                cols[r, t] = j
                pos[r, t] = g
                neg[r, t] = (5 - g) % 5
                nnz[r] = t + 1
    return nnz, cols, pos, neg


@njit(cache=True)
def _start(G, nfix, prefix, cw, KW):
    n = G.shape[1]
    for j in range(n):
        cw[j] = 0
    x = prefix
    for r in range(nfix):
        c = x % 5
        x //= 5
        if c:
            for j in range(n):
                cw[j] = (cw[j] + c * G[r, j]) % 5
    key = 0
    for j in range(n):
        key += KW[cw[j]]
    return key


@njit(cache=True)
def _gray_block(G, nfix, prefix, KW, ADD, nnz, cols, pos, neg, hist):
    """Census of the 5**(k - nfix) codewords sharing one fixed prefix."""
    k, n = G.shape
    free = k - nfix
    cw = np.zeros(n, dtype=np.int64)
    digits = np.zeros(free + 1, dtype=np.int64)
    dirs = np.ones(free + 1, dtype=np.int64)
    key = _start(G, nfix, prefix, cw, KW)
    hist[key] += 1
    total = 5 ** free
    for step in range(1, total):
        i = 0
        while True:
            nd = digits[i] + dirs[i]
            if nd < 0 or nd > 4:
                dirs[i] = -dirs[i]
                i += 1
            else:
                break
        digits[i] += dirs[i]
        r = nfix + i
        vals = pos[r] if dirs[i] > 0 else neg[r]
        cr = cols[r]
        for t in range(nnz[r]):
            j = cr[t]
            old = cw[j]
            new = ADD[old, vals[t]]
            cw[j] = new
            key += KW[new] - KW[old]
        hist[key] += 1


@njit(cache=True, parallel=True)
def composition_census(G, nfix, KW):
    """Histogram over keys n1 + (n+1)*n2 of all 5**k codewords of row space G."""
    k, n = G.shape
    W = n + 1
    ADD = np.empty((5, 5), dtype=np.int64)
    for a in range(5):
        for b in range(5):
            ADD[a, b] = (a + b) % 5
    nnz, cols, pos, neg = _sparse_rows(G)
    nprefix = 5 ** nfix
    parts = np.zeros((nprefix, W * W), dtype=np.int64)
    for pre in prange(nprefix):
        _gray_block(G, nfix, pre, KW, ADD, nnz, cols, pos, neg, parts[pre])
    return parts.sum(axis=0)


@njit(cache=True)
def find_low_weight(G, threshold):
    """First codeword (in Gray order) of Hamming weight in [1, threshold].

    Returns the coefficient vector, or an all-(-1) vector when none exists.
    """
    k, n = G.shape
    ADD = np.empty((5, 5), dtype=np.int64)
    for a in range(5):
        for b in range(5):
            ADD[a, b] = (a + b) % 5
    nnz, cols, pos, neg = _sparse_rows(G)
    cw = np.zeros(n, dtype=np.int64)
    digits = np.zeros(k + 1, dtype=np.int64)
    dirs = np.ones(k + 1, dtype=np.int64)
    wt = 0
    total = 5 ** k
    for step in range(1, total):
        i = 0
        while True:
            nd = digits[i] + dirs[i]
            if nd < 0 or nd > 4:
                dirs[i] = -dirs[i]
                i += 1
            else:
                break
        digits[i] += dirs[i]
        vals = pos[i] if dirs[i] > 0 else neg[i]
        cr = cols[i]
        for t in range(nnz[i]):
            j = cr[t]
            old = cw[j]
            new = ADD[old, vals[t]]
            cw[j] = new
            if old == 0:
                wt += 1
            if new == 0:
                wt -= 1
        if wt <= threshold:
            return digits[:k].copy()
    out = np.empty(k, dtype=np.int64)
    out[:] = -1
    return out
