"""Finite-support probability functions on the integers.

Every distribution family is reduced to a :class:`Pmf`: an integer offset,
an array of probabilities and the mass discarded when an infinite support
had to be truncated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np

from . import kernels

SUPPORT_CAP = 10**7
FAMILIES = (
    "explicit",
    "discrete_uniform",
    "bernoulli",
    "binomial",
    "poisson",
    "geometric_one_sided",
    "geometric_two_sided",
    "poisson_binomial",
)


class DistributionError(ValueError):
    """Malformed distribution description."""


class TruncationOverflow(DistributionError):
    """Support would exceed the configured cap."""


@dataclass(frozen=True)
class Pmf:
    """Probabilities ``probs[i] = P{X = offset + i}``.

    ``tail_mass_bound`` bounds the mass lost to truncation before
    renormalization (0 for exact finite families). Interior zeros are
    allowed; leading and trailing zeros are not.
    """

    offset: int
    probs: np.ndarray
    tail_mass_bound: float = 0.0

    def __post_init__(self):
        p = np.array(self.probs, dtype=np.float64)
        if p.ndim != 1 or p.shape[0] < 1:
            raise DistributionError("probs must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(p)) or np.any(p < 0):
            raise DistributionError("probs must be finite and non-negative")
        if p[0] <= 0 or p[-1] <= 0:
            raise DistributionError("first and last entries must be positive")
        if self.tail_mass_bound < 0:
            raise DistributionError("tail_mass_bound must be >= 0")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "offset", int(self.offset))

    @classmethod
    def from_weights(cls, weights, offset: int = 0, tail_mass_bound: float = 0.0) -> "Pmf":
        """Strip zero ends and normalize non-negative ``weights`` to total 1."""
        w = np.asarray(weights, dtype=np.float64)
        nz = np.flatnonzero(w > 0)
        if nz.size == 0:
            raise DistributionError("weights have no positive entry")
        w = w[nz[0]:nz[-1] + 1]
        total = math.fsum(w)
        return cls(offset + int(nz[0]), w / total, tail_mass_bound)

    @classmethod
    def point_mass(cls, at: int = 0) -> "Pmf":
        return cls(at, np.ones(1))

    def __len__(self):
        return self.probs.shape[0]

    @property
    def support(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + len(self))

    @property
    def last(self) -> int:
        return self.offset + len(self) - 1

    def total(self) -> float:
        return math.fsum(self.probs)

    def __call__(self, k: int) -> float:
        i = int(k) - self.offset
        if 0 <= i < len(self):
            return float(self.probs[i])
        return 0.0

    def reversed(self) -> "Pmf":
        """Law of ``-X``."""
        return Pmf(-self.last, self.probs[::-1].copy(), self.tail_mass_bound)

    def mode(self) -> int:
        """Leftmost argmax."""
        return self.offset + int(np.argmax(self.probs))

    def symmetry_center(self, tol: float = 1e-12) -> float | None:
        """Center of reflection symmetry (integer or half-integer), or None."""
        if np.all(np.abs(self.probs - self.probs[::-1]) <= tol):
            return (self.offset + self.last) / 2
        return None

    def is_symmetric(self, tol: float = 1e-12) -> bool:
        return self.symmetry_center(tol) is not None


def mean(pmf: Pmf) -> float:
    k = pmf.support.astype(np.float64)
    return math.fsum(k * pmf.probs)


def variance(pmf: Pmf) -> float:
    # centered form; the raw-moment difference cancels badly for far offsets
    mu = mean(pmf)
    d = pmf.support.astype(np.float64) - mu
    return math.fsum(d * d * pmf.probs)


def second_moment_about(pmf: Pmf, m: int) -> float:
    d = pmf.support.astype(np.float64) - m
    return math.fsum(d * d * pmf.probs)


def convolve(a: Pmf, b: Pmf, cap: int = SUPPORT_CAP) -> Pmf:
    """Law of the independent sum. Direct O(nm) summation, no FFT."""
    if len(a) + len(b) - 1 > cap:
        raise TruncationOverflow(f"convolution support {len(a) + len(b) - 1} exceeds cap {cap}")
    return Pmf(
        a.offset + b.offset,
        kernels.convolve(a.probs, b.probs),
        a.tail_mass_bound + b.tail_mass_bound,
    )


def convolve_all(pmfs: Sequence[Pmf], cap: int = SUPPORT_CAP) -> Pmf:
    if not pmfs:
        raise DistributionError("need at least one summand")
    out = pmfs[0]
    for p in pmfs[1:]:
        out = convolve(out, p, cap)
    return out


def total_variation(a: Pmf, b: Pmf) -> float:
    lo, hi = min(a.offset, b.offset), max(a.last, b.last)
    pa = np.zeros(hi - lo + 1)
    pb = np.zeros(hi - lo + 1)
    pa[a.offset - lo:a.last - lo + 1] = a.probs
    pb[b.offset - lo:b.last - lo + 1] = b.probs
    return 0.5 * math.fsum(np.abs(pa - pb))


# --------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class DistributionSpec:
    family: str
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DistributionError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")


def _prob(params, key, lo=0.0, hi=1.0, hi_open=False):
    if key not in params:
        raise DistributionError(f"missing parameter {key!r}")
    try:
        v = float(params[key])
    except (TypeError, ValueError):
        raise DistributionError(f"parameter {key!r} must be a real number") from None
    if not (lo <= v <= hi) or (hi_open and v >= hi) or math.isnan(v):
        bracket = ")" if hi_open else "]"
        raise DistributionError(f"parameter {key!r}={v} outside [{lo}, {hi}{bracket}")
    return v


def _int(params, key, lo=0):
    if key not in params:
        raise DistributionError(f"missing parameter {key!r}")
    v = params[key]
    if isinstance(v, bool) or not isinstance(v, (int, np.integer)) and not (isinstance(v, float) and v.is_integer()):
        raise DistributionError(f"parameter {key!r} must be an integer")
    v = int(v)
    if v < lo:
        raise DistributionError(f"parameter {key!r}={v} must be >= {lo}")
    return v


def _check_cap(n, cap):
    if n > cap:
        raise TruncationOverflow(f"support of {n} points exceeds cap {cap}")


def binomial_probs(n: int, p: float) -> np.ndarray:
    k = np.arange(n + 1)
    if p in (0.0, 1.0):
        out = np.zeros(n + 1)
        out[0 if p == 0.0 else n] = 1.0
        return out
    if n <= 1000:
        coef = np.array([float(math.comb(n, i)) for i in k])
        return coef * p**k * (1.0 - p) ** (n - k)
    lg = np.array([math.lgamma(n + 1) - math.lgamma(i + 1) - math.lgamma(n - i + 1) for i in k])
    return np.exp(lg + k * math.log(p) + (n - k) * math.log1p(-p))


def two_sided_geometric(p: float, tail_eps: float, cap: int = SUPPORT_CAP, scale: float | None = None) -> Pmf:
    """``C p^|k|`` truncated to |k| <= K with K minimal so the tail is below ``tail_eps``.

    ``scale=None`` uses the normalizing constant ``(1-p)/(1+p)`` and
    renormalizes after truncation. An explicit ``scale`` keeps the raw values
    ``scale * p^|k|`` (no renormalization), which preserves the maximum.
    """
    if p == 0.0:
        return Pmf.point_mass(0) if scale is None else Pmf(0, np.array([scale]))
    c = (1.0 - p) / (1.0 + p) if scale is None else scale
    # two-sided tail beyond K: 2 c p^(K+1) / (1 - p)
    lead = math.log(2.0 * c / (1.0 - p))
    K = max(0, math.ceil((math.log(tail_eps) - lead) / math.log(p) - 1.0))
    while K > 0 and 2.0 * c * p**K / (1.0 - p) < tail_eps:
        K -= 1
    while 2.0 * c * p ** (K + 1) / (1.0 - p) >= tail_eps:
        K += 1
    _check_cap(2 * K + 1, cap)
    tail = 2.0 * c * p ** (K + 1) / (1.0 - p)
    k = np.abs(np.arange(-K, K + 1))
    vals = c * np.power(p, k.astype(np.float64))
    if scale is None:
        return Pmf(-K, vals / math.fsum(vals), tail)
    return Pmf(-K, vals, tail)


def _one_sided_geometric(p, tail_eps, cap):
    if p == 0.0:
        return Pmf.point_mass(0)
    K = max(0, math.ceil(math.log(tail_eps) / math.log(p) - 1.0))
    while K > 0 and p**K < tail_eps:
        K -= 1
    while p ** (K + 1) >= tail_eps:
        K += 1
    _check_cap(K + 1, cap)
    k = np.arange(K + 1, dtype=np.float64)
    vals = (1.0 - p) * np.power(p, k)
    return Pmf(0, vals / math.fsum(vals), p ** (K + 1))


def _poisson(lam, tail_eps, cap):
    def logf(k):
        return k * math.log(lam) - lam - math.lgamma(k + 1)

    lo = hi = int(math.floor(lam))

    def left_tail():
        # P{X < lo} <= f(lo-1) / (1 - (lo-1)/lam), ratios f(k-1)/f(k) = k/lam
        if lo == 0:
            return 0.0
        return math.exp(logf(lo - 1)) / (1.0 - (lo - 1) / lam)

    def right_tail():
        # P{X > hi} <= f(hi+1) / (1 - lam/(hi+2))
        return math.exp(logf(hi + 1)) / (1.0 - lam / (hi + 2))

    while True:
        lt, rt = left_tail(), right_tail()
        if lt + rt < tail_eps:
            break
        if lt >= rt:
            lo -= 1
        else:
            hi += 1
        _check_cap(hi - lo + 1, cap)
    k = np.arange(lo, hi + 1)
    vals = np.exp(np.array([logf(int(i)) for i in k]))
    return Pmf(lo, vals / math.fsum(vals), lt + rt)


def build(spec: DistributionSpec, tail_eps: float = 1e-12, cap: int = SUPPORT_CAP) -> Pmf:
    """Finite pmf for ``spec``; infinite supports are cut with tail mass below ``tail_eps``."""
    if not (0.0 < tail_eps <= 1e-6):
        raise DistributionError(f"tail_eps={tail_eps} must lie in (0, 1e-6]")
    fam, prm = spec.family, spec.params
    if fam == "explicit":
        if "probs" not in prm:
            raise DistributionError("missing parameter 'probs'")
        try:
            w = np.asarray(prm["probs"], dtype=np.float64)
        except (TypeError, ValueError):
            raise DistributionError("parameter 'probs' must be a sequence of reals") from None
        if w.ndim != 1 or w.size == 0 or np.any(w < 0) or not np.all(np.isfinite(w)):
            raise DistributionError("parameter 'probs' must be a non-empty sequence of non-negative reals")
        offset = _int(prm, "offset", lo=-(2**62)) if "offset" in prm else 0
        _check_cap(w.size, cap)
        return Pmf.from_weights(w, offset)
    if fam == "discrete_uniform":
        n = _int(prm, "n", lo=1)
        _check_cap(n, cap)
        start = _int(prm, "start", lo=-(2**62)) if "start" in prm else 0
        return Pmf(start, np.full(n, 1.0 / n))
    if fam == "bernoulli":
        p = _prob(prm, "p")
        return Pmf.from_weights([1.0 - p, p])
    if fam == "binomial":
        n = _int(prm, "n", lo=0)
        _check_cap(n + 1, cap)
        p = _prob(prm, "p")
        return Pmf.from_weights(binomial_probs(n, p))
    if fam == "poisson":
        lam = float(prm.get("lambda", prm.get("lam", float("nan"))))
        if not lam > 0 or not math.isfinite(lam):
            raise DistributionError("parameter 'lambda' must be a positive real")
        return _poisson(lam, tail_eps, cap)
    if fam == "geometric_one_sided":
        return _one_sided_geometric(_prob(prm, "p", hi_open=True), tail_eps, cap)
    if fam == "geometric_two_sided":
        return two_sided_geometric(_prob(prm, "p", hi_open=True), tail_eps, cap)
    if fam == "poisson_binomial":
        pl = prm.get("p_list")
        if pl is None or len(pl) == 0:
            raise DistributionError("parameter 'p_list' must be a non-empty sequence")
        ps = [_prob({"p": v}, "p") for v in pl]
        _check_cap(len(ps) + 1, cap)
        return Pmf.from_weights(kernels.poisson_binomial(ps))
    raise DistributionError(f"unhandled family {fam!r}")  # pragma: no cover
