"""Numpy implementations of the inner loops.

Summation order matches ``_ckernels.pyx`` so both backends return
bit-identical results for convolutions, window sums and Bernoulli sums.
"""
import numpy as np


def convolve(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n, m = a.shape[0], b.shape[0]
    out = np.zeros(n + m - 1)
    for i in range(n):
        out[i:i + m] += a[i] * b
    return out


def window_max(probs, width):
    """Largest sum over windows of ``width + 1`` consecutive cells.

    Returns ``(mass, start_index)``; each window is summed left to right.
    """
    p = np.asarray(probs, dtype=np.float64)
    n = p.shape[0]
    w = min(int(width), n - 1)
    count = n - w
    sums = np.zeros(count)
    for j in range(w + 1):
        sums += p[j:j + count]
    i = int(np.argmax(sums))
    return float(sums[i]), i


def log_concavity_defect(values, zero_floor=1e-300):
    """max_k [log v(k-1) + log v(k+1) - 2 log v(k)] over interior k.

    Returns ``inf`` when an entry is at or below ``zero_floor`` (broken
    contiguity) and ``-inf`` when there are no interior points.
    """
    v = np.asarray(values, dtype=np.float64)
    if np.any(v <= zero_floor):
        return np.inf
    if v.shape[0] < 3:
        return -np.inf
    lv = np.log(v)
    return float(np.max(lv[:-2] + lv[2:] - 2.0 * lv[1:-1]))


def poisson_binomial(p_list):
    p = np.asarray(p_list, dtype=np.float64)
    f = np.zeros(p.shape[0] + 1)
    f[0] = 1.0
    for n, pk in enumerate(p, start=1):
        qk = 1.0 - pk
        nxt = f[1:n + 1] * qk + f[0:n] * pk
        f[0] = f[0] * qk
        f[1:n + 1] = nxt
    return f
