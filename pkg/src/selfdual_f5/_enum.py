"""Fincke-Pohst enumeration kernel (float pruning only; callers re-check exactly)."""

import math

import numpy as np
from numba import njit


@njit(cache=True)
def fincke_pohst(q, bound, out):
    """Write into ``out`` every nonzero integer x with Q(x) <= bound, one per +- pair.

    ``q`` holds the quadratic-form decomposition Q(x) = sum_i q[i,i] (x_i + sum_{j>i} q[i,j] x_j)^2.
    The kept representative has its highest-index nonzero coordinate positive.
    Returns the number of vectors written, or -1 if ``out`` is too small.
    """
    n = q.shape[0]
    x = np.zeros(n, dtype=np.int64)
    upper = np.zeros(n, dtype=np.int64)
    center = np.zeros(n)
    rem = np.zeros(n + 1)
    count = 0
    cap = out.shape[0]

    i = n - 1
    rem[i] = bound
    descend = True
    while True:
        if descend:
            c = 0.0
            for j in range(i + 1, n):
                c -= q[i, j] * x[j]
            center[i] = c
            t = rem[i] / q[i, i]
            r = math.sqrt(t) if t > 0 else 0.0
            lo = math.ceil(c - r)
            hi = math.floor(c + r)
            top_zero = True
            for j in range(i + 1, n):
                if x[j] != 0:
                    top_zero = False
                    break
            if top_zero and lo < 0:
                lo = 0
            x[i] = lo - 1
            upper[i] = hi
            descend = False
        x[i] += 1
        if x[i] > upper[i]:
            i += 1
            if i == n:
                break
            continue
        d = x[i] - center[i]
        left = rem[i] - q[i, i] * d * d
        if left < 0.0:
            # float noise at the boundary; exact check happens later
            left = 0.0
        if i == 0:
            nonzero = False
            for j in range(n):
                if x[j] != 0:
                    nonzero = True
                    break
            if nonzero:
                if count >= cap:
                    return -1
                for j in range(n):
                    out[count, j] = x[j]
                count += 1
        else:
            rem[i - 1] = left
            i -= 1
            descend = True
    return count
