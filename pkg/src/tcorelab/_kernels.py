"""Compiled inner loops for residue-mode series arithmetic.

All kernels work on int64 arrays holding residues in [0, M) with M < 2**31,
so a single product of two residues stays below 2**62.  Accumulators are
reduced lazily: ``chunk`` products may be summed before an overflow is
possible, and the caller computes that bound (see :func:`safe_chunk`).
"""

import numpy as np
from numba import njit

INT63 = (1 << 63) - 1


def safe_chunk(modulus):
    """Number of residue products that can be added to a reduced value
    without leaving the int64 range."""
    sq = (modulus - 1) ** 2
    if sq == 0:
        return 1 << 40
    return max(1, min((INT63 - modulus) // sq, 1 << 40))


@njit(cache=True)
def sparse_mul(idx, val, dense, trunc, modulus, chunk):
    out = np.zeros(trunc, np.int64)
    cnt = 0
    for k in range(idx.shape[0]):
        s = idx[k]
        if s >= trunc:
            break
        v = val[k]
        for n in range(s, trunc):
            out[n] += v * dense[n - s]
        cnt += 1
        if cnt == chunk:
            for n in range(trunc):
                out[n] %= modulus
            cnt = 0
    for n in range(trunc):
        out[n] %= modulus
    return out


@njit(cache=True)
def sparse_div(num, idx, negval, inv0, trunc, modulus, chunk):
    # idx excludes exponent 0 and is sorted ascending
    out = np.zeros(trunc, np.int64)
    for n in range(trunc):
        acc = num[n]
        cnt = 0
        for k in range(idx.shape[0]):
            s = idx[k]
            if s > n:
                break
            acc += negval[k] * out[n - s]
            cnt += 1
            if cnt == chunk:
                acc %= modulus
                cnt = 0
        out[n] = ((acc % modulus) * inv0) % modulus
    return out
