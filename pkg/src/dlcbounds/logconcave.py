"""Log-concavity, Newton coefficients, rearrangement and majorization."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .distributions import Pmf, two_sided_geometric
from .reports import check

ZERO_FLOOR = 1e-300
MAX_NEWTON_DEGREE = 40


class PreconditionError(ValueError):
    """Input does not satisfy the hypotheses of the requested check."""


def is_log_concave_sequence(values, log_tol: float = 1e-12) -> bool:
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        return False
    return bool(kernels.log_concavity_defect(v, ZERO_FLOOR) <= log_tol)


def is_log_concave(pmf: Pmf, log_tol: float = 1e-12) -> bool:
    """Contiguous support and ``2 log f(k) >= log f(k-1) + log f(k+1) - log_tol``."""
    return is_log_concave_sequence(pmf.probs, log_tol)


def newton_inequalities_hold(a: Sequence[float], rel_tol: float = 1e-9) -> bool:
    """``a_k^2 >= a_{k-1} a_{k+1}`` for interior k, up to ``rel_tol`` relative slack."""
    a = np.asarray(a, dtype=np.float64)
    for k in range(1, a.size - 1):
        lhs, rhs = a[k] * a[k], a[k - 1] * a[k + 1]
        if lhs < rhs - rel_tol * max(abs(lhs), abs(rhs)):
            return False
    return True


def newton_coefficients(roots: Sequence[float]) -> np.ndarray:
    """Expand ``prod (z - r_i) = sum_k C(n, k) a_k z^k`` and return ``a``."""
    r = [float(x) for x in roots]
    n = len(r)
    if n > MAX_NEWTON_DEGREE:
        raise ValueError(f"degree {n} exceeds {MAX_NEWTON_DEGREE}")
    poly = np.array([1.0])  # ascending powers
    for root in r:
        nxt = np.zeros(poly.size + 1)
        nxt[1:] += poly
        nxt[:-1] -= root * poly
        poly = nxt
    binom = np.array([float(math.comb(n, k)) for k in range(n + 1)])
    return poly / binom


@dataclass(frozen=True)
class RearrangedPmf:
    """``values[k] = f(sites[k])``, non-increasing in k."""

    values: np.ndarray
    sites: np.ndarray

    def partial_sums(self) -> np.ndarray:
        return np.cumsum(self.values)


def decreasing_rearrangement(pmf: Pmf) -> RearrangedPmf:
    """Sort atoms non-increasingly; ties go by |site|, then the negative site first."""
    sites = pmf.support
    order = np.lexsort((sites, np.abs(sites), -pmf.probs))
    vals = pmf.probs[order].copy()
    return RearrangedPmf(vals, sites[order].copy())


def majorizes(f: Pmf, g: Pmf, tol: float = 1e-12) -> bool:
    """Every partial sum of ``f`` sorted decreasingly dominates that of ``g``."""
    sf = decreasing_rearrangement(f).partial_sums()
    sg = decreasing_rearrangement(g).partial_sums()
    n = max(sf.size, sg.size)
    sf = np.concatenate([sf, np.full(n - sf.size, sf[-1])])
    sg = np.concatenate([sg, np.full(n - sg.size, sg[-1])])
    return bool(np.all(sf >= sg - tol))


@dataclass(frozen=True)
class GeometricMatch:
    """Two-sided geometric ``scale * q_star^|k|`` with the same maximum as the source."""

    q_star: float
    scale: float
    iterations: int
    residual: float

    @property
    def variance(self) -> float:
        q = self.q_star
        return 2.0 * q / (1.0 - q) ** 2

    def to_pmf(self, tail_eps: float = 1e-15, center: int = 0) -> Pmf:
        g = two_sided_geometric(self.q_star, tail_eps, scale=self.scale)
        return Pmf(g.offset + center, g.probs, g.tail_mass_bound)


def integer_center(pmf: Pmf, tol: float = 1e-12) -> int:
    c = pmf.symmetry_center(tol)
    if c is None:
        raise PreconditionError("distribution is not symmetric")
    if c != math.floor(c):
        raise PreconditionError(f"symmetry center {c} is not an integer")
    return int(c)


def match_two_sided_geometric(f: Pmf, tol: float = 1e-14) -> GeometricMatch:
    """Solve ``f(0) (1 + q) / (1 - q) = 1`` for q by bisection.

    ``f`` must be symmetric about an integer point (treated as the origin)
    and log-concave.
    """
    c = integer_center(f)
    if not is_log_concave(f):
        raise PreconditionError("distribution is not log-concave")
    f0 = f(c)
    if f0 > 1.0 + 1e-15:
        raise PreconditionError("f(0) > 1")
    if f0 >= 1.0:
        return GeometricMatch(0.0, 1.0, 0, 0.0)

    def total(q):
        return f0 * (1.0 + q) / (1.0 - q)

    lo, hi = 0.0, 1.0 - 1e-12
    it = 0
    # run past tol down to float resolution: near q = 1 the map is steep
    while it < 200:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if total(mid) < 1.0:
            lo = mid
        else:
            hi = mid
        it += 1
        if hi - lo <= tol and abs(total(0.5 * (lo + hi)) - 1.0) <= 1e-13:
            break
    q = 0.5 * (lo + hi)
    return GeometricMatch(q, f0, it, abs(total(q) - 1.0))


def _abs_tail(pmf: Pmf, center: float, lam: int) -> float:
    """P{|X - center| > lam}, computed as 1 minus the central mass."""
    k = pmf.support
    inside = pmf.probs[np.abs(k - center) <= lam]
    return 1.0 - math.fsum(inside)


def schur_moment_check(f: Pmf, g: Pmf, lambda_max: int):
    """Tail comparison ``P{|X| > lam} <= P{|Y| > lam}`` for lam = 0..lambda_max.

    X ~ f and Y ~ g must be symmetric and log-concave with f majorizing g;
    both are centered at their symmetry points.
    """
    for name, p in (("f", f), ("g", g)):
        if p.symmetry_center() is None:
            raise PreconditionError(f"{name} is not symmetric")
        if not is_log_concave(p):
            raise PreconditionError(f"{name} is not log-concave")
    if not majorizes(f, g):
        raise PreconditionError("f does not majorize g")
    cf, cg = f.symmetry_center(), g.symmetry_center()
    if (cf - math.floor(cf)) != (cg - math.floor(cg)):
        raise PreconditionError("f and g are centered on different lattices")
    tail = f.tail_mass_bound + g.tail_mass_bound
    out = []
    for lam in range(int(lambda_max) + 1):
        out.append(check("lemma7.2", _abs_tail(f, cf, lam), _abs_tail(g, cg, lam), tail=tail, **{"lambda": lam}))
    return out
