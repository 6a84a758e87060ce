"""Executable two-sided bounds for discrete (log-concave) distributions.

Every checker returns :class:`~dlcbounds.reports.BoundReport` records with
``slack = rhs - lhs``. Checkers whose hypotheses fail outright raise
:class:`~dlcbounds.logconcave.PreconditionError`; optional parts of a check
whose hypotheses fail come back as skipped reports.

Tolerances are ``1e-10`` relative plus the truncated tail mass amplified by
``4 (len + 1)^2`` for anything involving a variance or an entropy power,
a conservative linear bound on how far discarded tail mass can move a
second moment of a geometrically decaying pmf.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .distributions import Pmf, convolve, convolve_all, second_moment_about, variance
from .entropy import (
    AlphaOrder,
    as_order,
    collision_probability,
    concentration,
    delta,
    entropy_power,
    m_functional,
    renyi_entropy,
    smooth_with_discrete_uniform,
)
from .extension import continuous_mode_bound_check, extend, mass_sandwich_checks
from .logconcave import PreconditionError, is_log_concave
from .moriguti import TWO_PI_E, a_alpha
from .numerics import grid_then_golden
from .reports import BoundReport, check

PI_E = math.pi * math.e


def tail_factor(pmf: Pmf) -> float:
    return 4.0 * (len(pmf) + 1) ** 2


def _symmetric(pmf: Pmf, symmetric: bool | None) -> bool:
    return pmf.is_symmetric() if symmetric is None else bool(symmetric)


def _ctx_alpha(order: AlphaOrder) -> float:
    return float(order.alpha)


# --------------------------------------------------------------------------
# concentration bounds shared between the lam = 0 and general-lam forms


def q_lower(lam: int, var: float) -> float:
    l1 = lam + 1
    return l1 / math.sqrt(l1 * l1 + 12.0 * var)


def q_upper(lam: int, var: float) -> float:
    return 2 * (lam + 1) / math.sqrt(1 + lam * (lam + 2) / 3 + 4.0 * var)


def q_upper_symmetric(lam: int, var: float) -> float:
    return (lam + 1) / math.sqrt(1 + lam * (lam + 2) / 6 + 2.0 * var)


def _concentration_reports(pmf, lam, symmetric, ids):
    var = variance(pmf)
    q = concentration(pmf, lam)
    tail, tf = pmf.tail_mass_bound, tail_factor(pmf)
    ctx = {"lambda": lam, "Var": var, "Q": q}
    out = [check(ids[0], q_lower(lam, var), q, tail=tail, tail_factor=tf, **ctx)]
    if is_log_concave(pmf):
        out.append(check(ids[1], q, q_upper(lam, var), tail=tail, tail_factor=tf, **ctx))
        if _symmetric(pmf, symmetric):
            out.append(check(ids[2], q, q_upper_symmetric(lam, var), tail=tail, tail_factor=tf, **ctx))
        else:
            out.append(BoundReport.skip(ids[2], "not symmetric", ctx))
    else:
        out.append(BoundReport.skip(ids[1], "not log-concave", ctx))
        out.append(BoundReport.skip(ids[2], "not log-concave", ctx))
    return out


def check_thm_1_1(pmf: Pmf, symmetric: bool | None = None):
    """Largest atom against variance: lower bound (any pmf), upper and symmetric upper (log-concave)."""
    return _concentration_reports(pmf, 0, symmetric, ("thm1.1-lower", "thm1.1-upper", "eq1.5"))


def check_concentration_bounds(pmf: Pmf, lam: int, symmetric: bool | None = None):
    """Window-mass bounds; at ``lam = 0`` they reduce to the largest-atom checks."""
    lam = int(lam)
    if lam < 0:
        raise ValueError("lam must be >= 0")
    return _concentration_reports(pmf, lam, symmetric, ("eq8.4", "prop8.3-upper", "prop8.3-symmetric"))


def check_smoothing_identity(pmf: Pmf, lam: int):
    q = concentration(pmf, lam)
    m = m_functional(smooth_with_discrete_uniform(pmf, lam))
    return BoundReport("eq8.2", abs(q - (lam + 1) * m), 0.0, 1e-14, {"lambda": lam, "Q": q})


# --------------------------------------------------------------------------
# entropy power against variance, no log-concavity needed


def check_variance_entropy_upper(pmf: Pmf, alpha):
    order = as_order(alpha)
    a = _ctx_alpha(order)
    var = variance(pmf)
    n_a = entropy_power(pmf, order)
    n_inf = entropy_power(pmf, AlphaOrder.infinity())
    tail, tf = pmf.tail_mass_bound, 2.0 * tail_factor(pmf)
    ctx = {"alpha": a, "Var": var}
    out = []
    if a >= 1.0:
        A = TWO_PI_E if order.kind == "shannon" else a_alpha(a)
        out.append(check("eq3.1", n_a, A * (1.0 / 12.0 + var), tail=tail, tail_factor=tf, A=A, **ctx))
        out.append(check("eq3.1-2pie", n_a, TWO_PI_E * (1.0 / 12.0 + var), tail=tail, tail_factor=tf, **ctx))
    else:
        out.append(BoundReport.skip("eq3.1", "order below 1", ctx))
    out.append(check("eq3.2-lower", 1.0, n_inf, tail=tail, tail_factor=tf, **ctx))
    out.append(check("eq3.2", n_inf, 1.0 + 12.0 * var, tail=tail, tail_factor=tf, **ctx))
    if a > 1.0:
        factor = 12.0 if math.isinf(a) else 4.0 * (3.0 * a - 1.0) / (a - 1.0)
        out.append(check("eq3.3", n_a, 1.0 + factor * var, tail=tail, tail_factor=tf, **ctx))
    else:
        out.append(BoundReport.skip("eq3.3", "requires alpha > 1", ctx))
    return out


# --------------------------------------------------------------------------
# symmetric rearrangement bound with a general non-decreasing Psi


@dataclass(frozen=True)
class TabulatedPsi:
    """Non-decreasing Psi by linear interpolation, constant outside the table."""

    xs: Sequence[float]
    ys: Sequence[float]

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=np.float64)
        ys = np.asarray(self.ys, dtype=np.float64)
        if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 1:
            raise ValueError("xs and ys must be equal-length 1-D sequences")
        if np.any(np.diff(xs) <= 0) or np.any(np.diff(ys) < 0) or np.any(ys < 0):
            raise ValueError("Psi table must be increasing in x and non-decreasing, non-negative in y")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    def __call__(self, x):
        return float(np.interp(x, self.xs, self.ys))


PSI_REGISTRY: dict[str, tuple[Callable[[float], float], float | None]] = {
    # name -> (Psi, exact supremum if known)
    "sqrt1p2x": (lambda x: math.sqrt(1.0 + 2.0 * x), 1.0),
    "identity": (lambda x: x, math.inf),
}
P_MAX = 1.0 - 1e-12


def geometric_supremum(psi: Callable[[float], float]) -> float:
    """``sup_{0 <= p < 1} (1-p)/(1+p) Psi(2p/(1-p)^2)`` by grid plus golden section.

    The grid lives in ``s = -log10(1 - p)`` so the approach to p = 1 is
    resolved. The returned value never exceeds the true supremum.
    """

    def g(s):
        p = min(1.0 - 10.0 ** (-s), P_MAX) if s > 0 else 0.0
        return (1.0 - p) / (1.0 + p) * psi(2.0 * p / (1.0 - p) ** 2)

    _, best, _ = grid_then_golden(g, 0.0, 12.0, points=481)
    return float(best)


def check_prop_7_3(pmf: Pmf, psi_id: str = "sqrt1p2x", psi: Callable[[float], float] | None = None, symmetric: bool | None = None):
    """``M(X) Psi(Var X) <= sup_p (1-p)/(1+p) Psi(2p/(1-p)^2)`` for symmetric log-concave X."""
    if not _symmetric(pmf, symmetric):
        raise PreconditionError("requires a symmetric distribution")
    if not is_log_concave(pmf):
        raise PreconditionError("requires a log-concave distribution")
    if psi is None:
        if psi_id not in PSI_REGISTRY:
            raise ValueError(f"unknown Psi {psi_id!r}; known: {', '.join(sorted(PSI_REGISTRY))}")
        psi, exact = PSI_REGISTRY[psi_id]
    else:
        exact = None
    var = variance(pmf)
    m = m_functional(pmf)
    rhs = exact if exact is not None else geometric_supremum(psi)
    bid = "eq7.1" if psi_id == "sqrt1p2x" and exact is not None else f"prop7.3[{psi_id}]"
    return check(bid, m * psi(var), rhs, tail=pmf.tail_mass_bound, tail_factor=tail_factor(pmf), Var=var, M=m)


# --------------------------------------------------------------------------
# non-symmetric upper bound and its proof chain


def check_prop_7_4(pmf: Pmf):
    if not is_log_concave(pmf):
        raise PreconditionError("requires a log-concave distribution")
    var = variance(pmf)
    m = m_functional(pmf)
    diff = convolve(pmf, pmf.reversed())
    m_diff = m_functional(diff)
    coll = collision_probability(pmf)
    tail, tf = pmf.tail_mass_bound, tail_factor(pmf)
    ctx = {"Var": var, "M": m, "M_diff": m_diff}
    return [
        check("eq7.2", m * m * (1.0 + 4.0 * var), 4.0, tail=tail, tail_factor=tf, **ctx),
        check("eq7.3", m * m * var, 1.0, tail=tail, tail_factor=tf, **ctx),
        BoundReport("eq7.6", abs(m_diff - coll), 0.0, 1e-14, ctx),
        check("eq7.7", m * m, 4.0 * m_diff * m_diff, tail=tail, **ctx),
        check("eq7.1-diff", m_diff * m_diff * (1.0 + 4.0 * var), 1.0, tail=tail, tail_factor=tf, **ctx),
    ]


def check_eq_7_4(pmf: Pmf, alpha: float):
    """``H_alpha <= H_inf + log(alpha) / (alpha - 1)`` for 1 < alpha < inf (and its alpha = 2 form)."""
    a = float(alpha)
    if not (1.0 < a < math.inf) or abs(a - 1.0) < 1e-9:
        raise PreconditionError("requires 1 < alpha < inf")
    if not is_log_concave(pmf):
        raise PreconditionError("requires a log-concave distribution")
    h_a = renyi_entropy(pmf, a)
    h_inf = renyi_entropy(pmf, AlphaOrder.infinity())
    tail = pmf.tail_mass_bound
    out = [check("eq7.4", h_a, h_inf + math.log(a) / (a - 1.0), tail=tail, tail_factor=tail_factor(pmf), alpha=a)]
    if a == 2.0:
        coll = collision_probability(pmf)
        out.append(check("eq7.5", m_functional(pmf), 2.0 * coll, tail=tail, alpha=a))
    return out


def check_collision_remark(pmf: Pmf):
    """``N_2(X) >= 1 + 4 Var(X)``."""
    if not is_log_concave(pmf):
        raise PreconditionError("requires a log-concave distribution")
    var = variance(pmf)
    n2 = entropy_power(pmf, 2.0)
    return check("collision", 1.0 + 4.0 * var, n2, tail=pmf.tail_mass_bound, tail_factor=2.0 * tail_factor(pmf), Var=var)


def check_mode_moments(pmf: Pmf):
    """Largest atom against the second moment about the mode, discrete and via the extension."""
    if not is_log_concave(pmf):
        raise PreconditionError("requires a log-concave distribution")
    m = pmf.mode()
    mm = m_functional(pmf)
    em = second_moment_about(pmf, m)
    var = variance(pmf)
    tail, tf = pmf.tail_mass_bound, tail_factor(pmf)
    d = extend(pmf)
    return [
        continuous_mode_bound_check(d, tail),
        check("prop6.2", mm * mm * em, 6.0, tail=tail, tail_factor=tf, mode=float(m)),
        check("eq6.3", mm * mm * var, 6.0, tail=tail, tail_factor=tf),
    ]


# --------------------------------------------------------------------------
# sums of independent summands


def _delta_constant(alpha: float, symmetric: bool) -> float:
    core = 3.0 if math.isinf(alpha) else (3.0 * alpha - 1.0) / (alpha - 1.0)
    if alpha <= 2.0:
        return core
    if symmetric:
        return 2.0 * core
    raise PreconditionError("for alpha > 2 the summands must all be symmetric")


def _upper_var_factor(alpha: float) -> float:
    return 12.0 if math.isinf(alpha) else 4.0 * (3.0 * alpha - 1.0) / (alpha - 1.0)


def _delta_scaffold(x: Pmf, order: AlphaOrder, symmetric: bool, label: float):
    a = _ctx_alpha(order)
    var = variance(x)
    d_a = delta(x, order)
    tail, tf = x.tail_mass_bound, 2.0 * tail_factor(x)
    ctx = {"alpha": a, "summand": label, "Var": var}
    out = []
    if symmetric:
        d_inf = delta(x, AlphaOrder.infinity())
        out.append(check("eq9.1", 2.0 * var, d_inf, tail=tail, tail_factor=tf, **ctx))
        out.append(check("eq9.2-lower", 2.0 * var, d_a, tail=tail, tail_factor=tf, **ctx))
    out.append(check("eq9.2-upper", d_a, _upper_var_factor(a) * var, tail=tail, tail_factor=tf, **ctx))
    if a <= 2.0:
        out.append(check("eq9.3-lower", 4.0 * var, d_a, tail=tail, tail_factor=tf, **ctx))
    return out


def check_thm_1_2(summands: Sequence[Pmf], alpha, symmetric: bool | None = None):
    """Two-sided comparison of ``Delta_alpha(S_n)`` with ``sum Delta_alpha(X_k)``."""
    order = as_order(alpha)
    a = _ctx_alpha(order)
    if not a > 1.0:
        raise PreconditionError("requires alpha > 1")
    if not summands:
        raise PreconditionError("need at least one summand")
    for i, x in enumerate(summands):
        if not is_log_concave(x):
            raise PreconditionError(f"summand {i} is not log-concave")
    sym = all(x.is_symmetric() for x in summands) if symmetric is None else bool(symmetric)
    c = _delta_constant(a, sym)
    s = convolve_all(list(summands))
    d_sum = math.fsum(delta(x, order) for x in summands)
    d_s = delta(s, order)
    tail = s.tail_mass_bound
    tf = 2.0 * tail_factor(s)
    n = len(summands)
    ctx = {"alpha": a, "n": float(n), "c": c}
    out = [
        check("eq1.10-lower", d_sum / c, d_s, tail=tail, tail_factor=tf, **ctx),
        check("eq1.10-upper", d_s, c * d_sum, tail=tail, tail_factor=tf, **ctx),
    ]
    for i, x in enumerate(summands):
        out.extend(_delta_scaffold(x, order, sym, float(i)))
    out.extend(_delta_scaffold(s, order, sym, float(n)))
    return out


def check_thm_1_3(summands: Sequence[Pmf], alpha, sigma2: float | None = None):
    """Entropy powers of the sum against the sum of entropy powers.

    ``sigma2`` is a common lower bound on the summand variances; when omitted
    the smallest summand variance is used (and the variance-dependent bound is
    skipped if that is zero).
    """
    order = as_order(alpha)
    a = _ctx_alpha(order)
    if a < 1.0:
        raise PreconditionError("requires alpha >= 1")
    if not summands:
        raise PreconditionError("need at least one summand")
    for i, x in enumerate(summands):
        if not is_log_concave(x):
            raise PreconditionError(f"summand {i} is not log-concave")
    variances = [variance(x) for x in summands]
    if sigma2 is not None:
        if not sigma2 > 0:
            raise PreconditionError("sigma2 must be positive")
        low = [i for i, v in enumerate(variances) if v < sigma2]
        if low:
            raise PreconditionError(f"summands {low} have variance below sigma2={sigma2}")
    elif min(variances) > 0:
        sigma2 = min(variances)
    s = convolve_all(list(summands))
    n = len(summands)
    n_sum = math.fsum(entropy_power(x, order) for x in summands)
    n_s = entropy_power(s, order)
    tail = s.tail_mass_bound
    tf = 2.0 * tail_factor(s)
    ctx = {"alpha": a, "n": float(n)}
    out = []
    if sigma2 is not None:
        c_sigma = TWO_PI_E * (1.0 + 1.0 / (12.0 * sigma2))
        out.append(check("eq1.11", n_sum / c_sigma, n_s, tail=tail, tail_factor=tf, sigma2=sigma2, **ctx))
    else:
        out.append(BoundReport.skip("eq1.11", "a summand has zero variance", ctx))
    out.append(check("eq1.12", n_s, -(PI_E / 6.0) * (3 * n - 1) + TWO_PI_E * n_sum, tail=tail, tail_factor=tf, **ctx))
    for i, x in enumerate(list(summands) + [s]):
        var = variances[i] if i < n else variance(s)
        n_inf = entropy_power(x, AlphaOrder.infinity())
        n_a = entropy_power(x, order)
        xt, xtf = x.tail_mass_bound, 2.0 * tail_factor(x)
        c = {"alpha": a, "summand": float(i), "Var": var}
        out.append(check("eq9.4", 0.25 + var, n_inf, tail=xt, tail_factor=xtf, **c))
        out.append(check("eq9.5-var", var, n_inf, tail=xt, tail_factor=xtf, **c))
        out.append(check("eq9.5-order", n_inf, n_a, tail=xt, tail_factor=xtf, **c))
        if sigma2 is not None and var >= sigma2:
            bound = TWO_PI_E * (1.0 + 1.0 / (12.0 * sigma2)) * var
            out.append(check("eq9.5-upper", n_a, bound, tail=xt, tail_factor=xtf, sigma2=sigma2, **c))
    return out


# --------------------------------------------------------------------------
# everything applicable to one pmf


def _guard(bound_id: str, fn, *args, **kwargs):
    try:
        res = fn(*args, **kwargs)
    except PreconditionError as exc:
        return [BoundReport.skip(bound_id, str(exc))]
    return res if isinstance(res, list) else [res]


def run_single_suite(pmf: Pmf, alphas=(1.0, 2.0, 3.0, math.inf), lambdas=(0, 1, 2, 5), symmetric: bool | None = None):
    """Every single-distribution check; failed hypotheses become skipped rows."""
    orders = [as_order(a) for a in alphas]
    out = list(check_thm_1_1(pmf, symmetric))
    for lam in lambdas:
        out.extend(check_concentration_bounds(pmf, lam, symmetric))
        out.append(check_smoothing_identity(pmf, lam))
    for o in orders:
        out.extend(check_variance_entropy_upper(pmf, o))
        if 1.0 < o.alpha < math.inf:
            out.extend(_guard("eq7.4", check_eq_7_4, pmf, o.alpha))
    out.extend(_guard("eq7.1", check_prop_7_3, pmf, "sqrt1p2x", symmetric=symmetric))
    out.extend(_guard("eq7.2", check_prop_7_4, pmf))
    out.extend(_guard("collision", check_collision_remark, pmf))
    out.extend(_guard("prop6.2", check_mode_moments, pmf))
    if is_log_concave(pmf):
        out.extend(mass_sandwich_checks(pmf))
    else:
        out.append(BoundReport.skip("prop5.2-lower", "requires a log-concave distribution"))
    return out
