"""Constants of the variance-constrained Rényi entropy maximizer.

For ``1 < alpha < inf`` the maximizing density is ``c_alpha (1 - x^2)^{1/(alpha-1)}``
on (-1, 1). All Gamma/Beta values are taken in log space (``math.lgamma``),
since ``alpha / (alpha - 1)`` is huge near alpha = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .reports import BoundReport

ALPHA_MIN = 1.0 + 1e-6
ALPHA_MAX = 1e6
TWO_PI_E = 2.0 * math.pi * math.e
# A_alpha = 12 (1 + ASYMPTOTIC_SLOPE / alpha + O(alpha^-2))
ASYMPTOTIC_SLOPE = 2.0 * math.log(6.0) - 10.0 / 3.0
LOG_SQRT_PI = 0.5 * math.log(math.pi)


@dataclass(frozen=True)
class MorigutiConstants:
    alpha: float
    c_alpha: float
    beta: float
    c_beta: float
    var_extremal: float
    A_alpha: float


# B_2k / (2k (2k - 1)) for the Stirling series of log Gamma
_STIRLING = (1 / 12, -1 / 360, 1 / 1260, -1 / 1680, 1 / 1188, -691 / 360360, 1 / 156)
_STIRLING_FROM = 10.0


def log_gamma_half_ratio(s: float) -> float:
    """``log Gamma(s + 1/2) - log Gamma(s)``.

    For large s the two lgamma values are huge and their difference loses
    absolute accuracy, which the normalizer exponent 2/(alpha-1) then blows
    up; the Stirling series difference keeps it to a few ulps.
    """
    if s < _STIRLING_FROM:
        return math.lgamma(s + 0.5) - math.lgamma(s)
    x, y = s + 0.5, s
    # (x - 1/2) log x - x  -  ((y - 1/2) log y - y)
    head = 0.5 * math.log(s) + (s * math.log1p(0.5 / s) - 0.5)
    corr = 0.0
    for k, c in enumerate(_STIRLING, start=1):
        p = 2 * k - 1
        corr += c * (x ** -p - y ** -p)
    return head + corr


def log_normalizer(alpha: float) -> float:
    """``log c_alpha = -log B(alpha/(alpha-1), 1/2)``."""
    a = float(alpha)
    if math.isinf(a):
        return -math.log(2.0)
    s = a / (a - 1.0)
    return log_gamma_half_ratio(s) - LOG_SQRT_PI


def _check_alpha(alpha):
    a = float(alpha)
    if math.isnan(a) or a <= ALPHA_MIN:
        raise ValueError(f"alpha={alpha} must exceed {ALPHA_MIN}")
    return a


def a_alpha(alpha: float) -> float:
    """Sharp constant in ``N_alpha(X) <= A_alpha Var(X)``; 12 at alpha = inf."""
    a = _check_alpha(alpha)
    if math.isinf(a):
        return 12.0
    if a > ALPHA_MAX:
        return 12.0 * math.exp(ASYMPTOTIC_SLOPE / a)
    beta = (2.0 * a - 1.0) / a
    log_ratio = log_normalizer(beta) - a * log_normalizer(a)
    return (3.0 * a - 1.0) / (a - 1.0) * math.exp(2.0 / (a - 1.0) * log_ratio)


def compute_constants(alpha: float) -> MorigutiConstants:
    a = _check_alpha(alpha)
    if math.isinf(a):
        return MorigutiConstants(a, 0.5, 2.0, math.exp(log_normalizer(2.0)), 1.0 / 3.0, 12.0)
    if a > ALPHA_MAX:
        raise ValueError(f"alpha={alpha} above {ALPHA_MAX:g}; use a_alpha() for the asymptotic value")
    beta = (2.0 * a - 1.0) / a
    return MorigutiConstants(
        alpha=a,
        c_alpha=math.exp(log_normalizer(a)),
        beta=beta,
        c_beta=math.exp(log_normalizer(beta)),
        var_extremal=(a - 1.0) / (3.0 * a - 1.0),
        A_alpha=a_alpha(a),
    )


def extremal_density_value(alpha: float, x):
    a = float(alpha)
    if not a > 1.0:
        raise ValueError("alpha must exceed 1")
    x = np.asarray(x, dtype=np.float64)
    c = math.exp(log_normalizer(a))
    inside = np.abs(x) < 1.0
    base = np.where(inside, 1.0 - x * x, 0.0)
    if math.isinf(a):
        out = np.where(inside, c, 0.0)
    else:
        out = np.where(inside, c * np.power(base, 1.0 / (a - 1.0)), 0.0)
    return out if out.ndim else float(out)


def extremal_moments(alpha: float) -> tuple[float, float, float]:
    """Quadrature of ``f``, ``x^2 f`` and ``f^alpha`` over (-1, 1).

    Uses the algebraic endpoint weight ``(1+x)^s (1-x)^s`` so the
    singular derivative at the endpoints costs nothing.
    """
    a = float(alpha)
    c = math.exp(log_normalizer(a))
    s = 1.0 / (a - 1.0)
    opts = dict(weight="alg", epsabs=1e-14, epsrel=1e-13, limit=200)
    mass, _ = integrate.quad(lambda x: c, -1.0, 1.0, wvar=(s, s), **opts)
    second, _ = integrate.quad(lambda x: c * x * x, -1.0, 1.0, wvar=(s, s), **opts)
    # f^alpha = c^alpha (1-x^2)^{alpha s}; keep c^alpha outside to avoid under/overflow
    raw, _ = integrate.quad(lambda x: 1.0, -1.0, 1.0, wvar=(a * s, a * s), **opts)
    log_power = a * math.log(c) + math.log(raw)
    return mass, second, log_power


def entropy_power_by_quadrature(alpha: float) -> float:
    """``N_alpha`` of the extremal density from a direct quadrature of ``f^alpha``."""
    a = float(alpha)
    _, _, log_power = extremal_moments(a)
    return math.exp(-2.0 / (a - 1.0) * log_power)


def a_alpha_limits_check(near_one: float = 1.0 + 1e-4, large: float = 1e4):
    """Limits 2*pi*e (alpha -> 1) and 12 (alpha -> inf), plus monotonicity on a log grid."""
    a1 = a_alpha(near_one)
    a2 = a_alpha(large)
    grid = np.geomspace(1.001, 1e4, 50)
    vals = np.array([a_alpha(float(g)) for g in grid])
    worst_rise = float(np.max(np.diff(vals)))
    return [
        BoundReport("A-limit-1", abs(a1 - TWO_PI_E), 0.02, 0.0, {"alpha": near_one, "A": a1}),
        BoundReport("A-limit-inf", abs(a2 - 12.0), 0.01, 0.0, {"alpha": large, "A": a2}),
        BoundReport("A-decreasing", worst_rise, 0.0, 0.0, {"points": 50.0}),
    ]
