"""Composite Gauss-Legendre quadrature and golden-section maximization."""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@lru_cache(maxsize=8)
def _legendre(order):
    return np.polynomial.legendre.leggauss(order)


def gauss_legendre(func, a, b, panels=1, order=16):
    """Fixed composite rule; ``func`` must accept numpy arrays."""
    x, w = _legendre(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    vals = np.asarray(func(pts), dtype=np.float64).reshape(panels, order)
    return float(np.sum(half * (vals @ w)))


def integrate(func, a, b, abs_tol=1e-12, order=16, max_panels=1 << 14):
    """Double the panel count until successive estimates differ by < ``abs_tol``.

    Returns ``(value, last_change)``.
    """
    panels = 1
    prev = gauss_legendre(func, a, b, panels, order)
    while True:
        panels *= 2
        cur = gauss_legendre(func, a, b, panels, order)
        change = abs(cur - prev)
        if change < abs_tol or panels >= max_panels:
            return cur, change
        prev = cur


def golden_section_max(func, lo, hi, tol=1e-12, max_iter=200):
    """Maximize a unimodal ``func`` on ``[lo, hi]``. Returns ``(x, f(x))``."""
    a, b = float(lo), float(hi)
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = func(x1), func(x2)
    for _ in range(max_iter):
        if b - a <= tol * max(1.0, abs(a) + abs(b)):
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = func(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = func(x1)
    x = 0.5 * (a + b)
    fx = func(x)
    best = max((fx, x), (f1, x1), (f2, x2))
    return best[1], best[0]


def grid_then_golden(func, lo, hi, points=64, tol=1e-12):
    """Coarse grid scan to bracket the maximum, then golden section inside it.

    Returns ``(x, f(x), unimodal)`` where ``unimodal`` reports whether the grid
    values rise then fall.
    """
    grid = np.linspace(lo, hi, points)
    vals = np.array([func(float(g)) for g in grid])
    i = int(np.argmax(vals))
    d = np.diff(vals)
    unimodal = bool(np.all(d[:i] >= 0) and np.all(d[i:] <= 0))
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, points - 1)]
    x, fx = golden_section_max(func, a, b, tol)
    if vals[i] > fx:
        return float(grid[i]), float(vals[i]), unimodal
    return x, fx, unimodal
