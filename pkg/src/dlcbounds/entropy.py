"""Rényi entropies, entropy powers and concentration functions of a pmf."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .distributions import Pmf, convolve

ALPHA_GAP = 1e-9


@dataclass(frozen=True)
class AlphaOrder:
    """Rényi order: ``kind`` is ``"finite"``, ``"shannon"`` or ``"infinity"``."""

    kind: str
    alpha: float = float("nan")

    def __post_init__(self):
        if self.kind == "finite":
            a = self.alpha
            if not (a > 0 and math.isfinite(a)):
                raise ValueError(f"finite Rényi order must be positive, got {a}")
            if abs(a - 1.0) < ALPHA_GAP:
                raise ValueError("order within 1e-9 of 1; use AlphaOrder.shannon()")
        elif self.kind == "shannon":
            object.__setattr__(self, "alpha", 1.0)
        elif self.kind == "infinity":
            object.__setattr__(self, "alpha", math.inf)
        else:
            raise ValueError(f"unknown order kind {self.kind!r}")

    @classmethod
    def finite(cls, alpha: float) -> "AlphaOrder":
        return cls("finite", float(alpha))

    @classmethod
    def shannon(cls) -> "AlphaOrder":
        return cls("shannon")

    @classmethod
    def infinity(cls) -> "AlphaOrder":
        return cls("infinity")

    @property
    def value(self) -> float:
        return self.alpha

    def __str__(self):
        if self.kind == "infinity":
            return "inf"
        return repr(float(self.alpha)) if self.kind == "finite" else "1"


def as_order(alpha) -> AlphaOrder:
    """Accept an AlphaOrder, a float (1 -> Shannon, inf -> min-entropy) or a string."""
    if isinstance(alpha, AlphaOrder):
        return alpha
    if isinstance(alpha, str):
        s = alpha.strip().lower()
        if s in ("inf", "infinity", "oo", "min"):
            return AlphaOrder.infinity()
        if s in ("shannon", "1", "1.0"):
            return AlphaOrder.shannon()
        alpha = float(s)
    a = float(alpha)
    if math.isinf(a) and a > 0:
        return AlphaOrder.infinity()
    if a == 1.0:
        return AlphaOrder.shannon()
    return AlphaOrder.finite(a)


def m_functional(pmf: Pmf) -> float:
    """Largest atom ``M(X)``."""
    return float(np.max(pmf.probs))


def renyi_entropy(pmf: Pmf, order) -> float:
    order = as_order(order)
    p = pmf.probs
    if order.kind == "infinity":
        return max(0.0, -math.log(m_functional(pmf)))
    if order.kind == "shannon":
        nz = p[p > 0]
        return max(0.0, -math.fsum(nz * np.log(nz)))
    a = order.alpha
    m = m_functional(pmf)
    nz = p[p > 0]
    # sum f^a = M^a * sum (f/M)^a; the inner sum lies in [1, n]
    inner = math.fsum(np.power(nz / m, a))
    h = -(a * math.log(m) + math.log(inner)) / (a - 1.0)
    return max(0.0, h)


def entropy_power(pmf: Pmf, order) -> float:
    return math.exp(2.0 * renyi_entropy(pmf, order))


def delta(pmf: Pmf, order) -> float:
    """``N_alpha - 1``, computed with expm1 so small entropies keep precision."""
    return math.expm1(2.0 * renyi_entropy(pmf, order))


def concentration(pmf: Pmf, lam: int) -> float:
    """``Q(X; lam)``: largest mass of ``lam + 1`` consecutive integers."""
    lam = int(lam)
    if lam < 0:
        raise ValueError("window width must be >= 0")
    if lam == 0:
        return m_functional(pmf)
    mass, _ = kernels.window_max(pmf.probs, lam)
    return float(mass)


def discrete_uniform(lam: int) -> Pmf:
    n = int(lam) + 1
    return Pmf(0, np.full(n, 1.0 / n))


def smooth_with_discrete_uniform(pmf: Pmf, lam: int) -> Pmf:
    """Law of ``X + U`` with U uniform on ``{0, ..., lam}``."""
    lam = int(lam)
    if lam < 0:
        raise ValueError("lam must be >= 0")
    if lam == 0:
        return pmf
    return convolve(pmf, discrete_uniform(lam))


def collision_probability(pmf: Pmf) -> float:
    return math.fsum(pmf.probs * pmf.probs)
