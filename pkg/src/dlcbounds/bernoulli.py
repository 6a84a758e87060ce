"""Sums of independent Bernoulli variables: exact laws and bounds on the largest atom."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .distributions import Pmf, variance
from .entropy import as_order, entropy_power, m_functional
from .logconcave import PreconditionError
from .numerics import grid_then_golden, integrate
from .reports import BoundReport, check

MAX_SUMMANDS = 10**5
ESSEEN_FACTOR = (96.0 / 95.0) ** 2
# M(S_n) * sigma <= ESSEEN_FACTOR * sqrt(pi / 2) once |v| is bounded by a Gaussian
ESSEEN_CHAIN_CONSTANT = ESSEEN_FACTOR * math.sqrt(math.pi / 2.0)
PUBLISHED_ESSEEN_CONSTANT = 1.28
C_BRACKET = (0.05, 3.0)


@dataclass(frozen=True)
class BernoulliSumSpec:
    p_list: tuple

    def __init__(self, p_list: Sequence[float]):
        ps = tuple(float(p) for p in p_list)
        if not ps:
            raise ValueError("p_list must be non-empty")
        if len(ps) > MAX_SUMMANDS:
            raise ValueError(f"at most {MAX_SUMMANDS} summands")
        if any(not (0.0 <= p <= 1.0) for p in ps):
            raise ValueError("each p must lie in [0, 1]")
        object.__setattr__(self, "p_list", ps)
        if self.variance <= 0:
            raise ValueError("all summands are degenerate (variance 0)")

    @property
    def p(self) -> np.ndarray:
        return np.asarray(self.p_list)

    @property
    def variance(self) -> float:
        p = self.p
        return math.fsum(p * (1.0 - p))

    @property
    def sigma(self) -> float:
        return math.sqrt(self.variance)


def poisson_binomial_pmf(spec: BernoulliSumSpec) -> Pmf:
    return Pmf.from_weights(kernels.poisson_binomial(spec.p))


def char_function_modulus(spec: BernoulliSumSpec, t):
    """``|E e^{itS_n}| = prod_k sqrt(1 - 4 p_k q_k sin^2(t/2))``."""
    t = np.asarray(t, dtype=np.float64)
    s2 = np.sin(0.5 * t) ** 2
    out = np.ones_like(s2)
    for pq in spec.p * (1.0 - spec.p):
        out *= np.maximum(1.0 - 4.0 * pq * s2, 0.0)
    out = np.sqrt(out)
    return out if out.ndim else float(out)


def esseen_bound(spec: BernoulliSumSpec, lam: float, abs_tol: float = 1e-12) -> float:
    """``(96/95)^2 lam int_{-1/lam}^{1/lam} |v(t)| dt`` (even integrand: twice the half range)."""
    lam = float(lam)
    if not lam > 0:
        raise ValueError("lam must be positive")
    half, _ = integrate(lambda t: char_function_modulus(spec, t), 0.0, 1.0 / lam, abs_tol=abs_tol / 2.0)
    return ESSEEN_FACTOR * lam * 2.0 * half


def series_i0(lam: float) -> float:
    """``sum_k (lam^k / k!)^2`` by the term recurrence."""
    term, total, k = 1.0, 1.0, 0
    while True:
        term *= (lam / (k + 1)) ** 2
        k += 1
        total += term
        if term < 1e-18 * total and k > lam:
            return total


def c_objective(lam: float) -> float:
    """``sqrt(2 lam) e^{-2 lam} sum_k (lam^k/k!)^2``."""
    if lam <= 0:
        return 0.0
    return math.sqrt(2.0 * lam) * math.exp(-2.0 * lam) * series_i0(lam)


def optimal_constant_search():
    """Returns ``(lam*, c, unimodal_on_grid)``."""
    return grid_then_golden(c_objective, *C_BRACKET, points=64, tol=1e-13)


def optimal_constant_c() -> float:
    return float(optimal_constant_search()[1])


def crossover_variance(c: float | None = None) -> float:
    """Variance below which ``2/sqrt(1+4V)`` beats ``c/sqrt(V)``."""
    if c is None:
        c = optimal_constant_c()
    return c * c / (4.0 * (1.0 - c * c))


def check_bernoulli_bounds(spec: BernoulliSumSpec, c: float | None = None):
    """Largest atom of S_n against the Esseen, Gaussian-envelope and variance bounds."""
    f = poisson_binomial_pmf(spec)
    m = m_functional(f)
    var = spec.variance
    sig = math.sqrt(var)
    if c is None:
        c = optimal_constant_c()
    es = esseen_bound(spec, 1.0 / math.pi)
    t = np.linspace(-math.pi, math.pi, 2049)
    envelope = float(np.max(char_function_modulus(spec, t) - np.exp(-2.0 * var * np.sin(t / 2.0) ** 2)))
    ctx = {"n": float(len(spec.p_list)), "Var": var, "M": m}
    return [
        check("eq10.1", m, es, **ctx),
        check("esseen-gaussian", es, ESSEEN_CHAIN_CONSTANT / sig, **ctx),
        check("esseen-1.28", m, PUBLISHED_ESSEEN_CONSTANT / sig, **ctx),
        BoundReport("char-envelope", envelope, 0.0, 1e-14, ctx),
        check("eq10.2-a", m, 2.0 / math.sqrt(1.0 + 4.0 * var), **ctx),
        check("eq10.2-b", 2.0 / math.sqrt(1.0 + 4.0 * var), 1.0 / sig, **ctx),
        check("eq10.3", m, c / sig, c=c, **ctx),
    ]


def check_mr_bound(spec: BernoulliSumSpec, alpha) -> BoundReport:
    """``N_alpha(S_n) >= 1 + 2 beta Var(S_n)`` with ``1/alpha + 1/beta = 1``, alpha >= 2."""
    order = as_order(alpha)
    a = float(order.alpha)
    if a < 2.0:
        raise PreconditionError("requires alpha >= 2")
    beta = 1.0 if math.isinf(a) else a / (a - 1.0)
    f = poisson_binomial_pmf(spec)
    var = variance(f)
    return check("mr-bound", 1.0 + 2.0 * beta * var, entropy_power(f, order), alpha=a, beta=beta, Var=var)
