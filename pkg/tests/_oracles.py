"""Independent reference implementations used as test oracles.

Everything here recomputes quantities from first principles (double loops,
explicit formulas) and must stay independent of the library code paths it
checks.
"""

import math

import numpy as np


def brute_triple_sums(x, y):
    a = np.abs(x[:, None] - x[None, :])
    b = np.abs(y[:, None] - y[None, :])
    return float((a * b).sum()), float((a.sum(1) * b.sum(1)).sum()), float(a.sum() * b.sum())


def ucenter_reference(v):
    v = np.asarray(v, dtype=float)
    if v.ndim == 1:
        v = v[:, None]
    n = v.shape[0]
    d = np.sqrt(((v[:, None, :] - v[None, :, :]) ** 2).sum(axis=-1))
    c = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                c[i, j] = (
                    d[i, j]
                    - d[i, :].sum() / (n - 2)
                    - d[:, j].sum() / (n - 2)
                    + d.sum() / ((n - 1) * (n - 2))
                )
    return c


def pdcor_reference(x, y, z):
    ca, cb, cc = ucenter_reference(x), ucenter_reference(y), ucenter_reference(z)
    n = ca.shape[0]

    def ip(p, q):
        total = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    total += p[i, j] * q[i, j]
        return total / (n * (n - 3))

    ccc = ip(cc, cc)
    if ccc > 0:
        ca = ca - (ip(ca, cc) / ccc) * cc
        cb = cb - (ip(cb, cc) / ccc) * cc
    na, nb = ip(ca, ca), ip(cb, cb)
    if na <= 0 or nb <= 0:
        return 0.0
    return ip(ca, cb) / math.sqrt(na * nb)
