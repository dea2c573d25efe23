"""Naive reference computations used as independent oracles.

Nothing here imports the production series code: products are schoolbook
convolutions, Euler products are multiplied out factor by factor, and
quotients use the dense long-division recurrence.
"""

import numpy as np


def naive_mul(a, b, trunc=None, modulus=0):
    trunc = min(len(a), len(b)) if trunc is None else trunc
    out = [0] * trunc
    for i in range(trunc):
        if a[i] == 0:
            continue
        for j in range(trunc - i):
            out[i + j] += a[i] * b[j]
    return [c % modulus for c in out] if modulus else out


def naive_div(a, b, modulus=0):
    trunc = min(len(a), len(b))
    inv = pow(b[0], -1, modulus) if modulus else b[0]
    assert modulus or b[0] in (1, -1)
    out = [0] * trunc
    for n in range(trunc):
        acc = a[n] - sum(b[i] * out[n - i] for i in range(1, n + 1))
        out[n] = acc * inv % modulus if modulus else acc * inv
    return out


def naive_pow(a, e, modulus=0):
    out = [1] + [0] * (len(a) - 1)
    for _ in range(e):
        out = naive_mul(out, a, modulus=modulus)
    return out


def euler_product(nscale, trunc):
    """prod_{j>=1} (1 - q^(nscale j)), multiplied out."""
    out = [1] + [0] * (trunc - 1)
    for step in range(nscale, trunc, nscale):
        for e in range(trunc - 1, step - 1, -1):
            out[e] -= out[e - step]
    return out


def phi_sum(trunc):
    out = [0] * trunc
    n = 0
    while n * n < trunc:
        for m in {n, -n}:
            out[m * m] += (-1) ** m
        n += 1
    return out


def psi_sum_triangular(trunc):
    """sum_{n>=0} (-q)^(n(n+1)/2)."""
    out = [0] * trunc
    n = 0
    while n * (n + 1) // 2 < trunc:
        e = n * (n + 1) // 2
        out[e] += (-1) ** e
        n += 1
    return out


def substitute(a, d, trunc):
    out = [0] * trunc
    for i, c in enumerate(a):
        if i * d < trunc:
            out[i * d] = c
    return out


def bbar_from_theta(t, trunc):
    """psi^t(-q^t) / psi(-q) by schoolbook arithmetic on theta sums."""
    psi = psi_sum_triangular(trunc)
    psi_t = substitute(psi_sum_triangular(trunc), t, trunc)
    return naive_div(naive_pow(psi_t, t), psi)


def abar_from_theta(t, trunc):
    phi = phi_sum(trunc)
    phi_t = substitute(phi_sum(trunc), t, trunc)
    return naive_div(naive_pow(phi_t, t), phi)


def partition_counts(nmax):
    """p(0..nmax) by counting partitions with bounded largest part."""
    table = [[0] * (nmax + 1) for _ in range(nmax + 1)]
    for k in range(nmax + 1):
        table[0][k] = 1
    for n in range(1, nmax + 1):
        for k in range(1, nmax + 1):
            table[n][k] = table[n][k - 1] + (table[n - k][k] if k <= n else 0)
    return [table[n][n] for n in range(nmax + 1)]


# numpy versions for the O(T^2) density reference at T = 10^4


def np_euler_product(nscale, trunc, modulus):
    out = np.zeros(trunc, np.int64)
    out[0] = 1
    for step in range(nscale, trunc, nscale):
        out[step:] = (out[step:] - out[: trunc - step]) % modulus
    return out


def np_mul(a, b, modulus):
    return np.convolve(a, b)[: min(len(a), len(b))] % modulus


def np_div(a, b, modulus):
    trunc = min(len(a), len(b))
    inv = pow(int(b[0]), -1, modulus)
    out = np.zeros(trunc, np.int64)
    rb = b[1:trunc][::-1].copy()
    for n in range(trunc):
        acc = int(a[n]) - int(np.dot(rb[trunc - 1 - n :], out[:n])) if n else int(a[0])
        out[n] = acc * inv % modulus
    return out


def np_bbar(t, trunc, modulus):
    """f_2 f_t^t f_4t^t / (f_1 f_4 f_2t^t) with every product multiplied out densely."""
    num = np.zeros(trunc, np.int64)
    num[0] = 1
    for d, r in ((2, 1), (t, t), (4 * t, t)):
        f = np_euler_product(d, trunc, modulus)
        for _ in range(r):
            num = np_mul(num, f, modulus)
    den = np.zeros(trunc, np.int64)
    den[0] = 1
    for d, r in ((1, 1), (4, 1), (2 * t, t)):
        f = np_euler_product(d, trunc, modulus)
        for _ in range(r):
            den = np_mul(den, f, modulus)
    return np_div(num, den, modulus)
