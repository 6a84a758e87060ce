"""Log-piecewise-linear extension of a log-concave pmf to the real line.

On ``[k, k+1]`` the extension is ``exp((1-t) log f(k) + t log f(k+1))``;
all integrals below are exact per-segment closed forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import Pmf, second_moment_about
from .logconcave import PreconditionError, is_log_concave
from .reports import BoundReport, check

# below this slope the moment closed forms lose digits to cancellation
SERIES_SLOPE = 0.5
SERIES_TERMS = 30


@dataclass(frozen=True)
class PiecewiseExpDensity:
    knots: np.ndarray
    log_values: np.ndarray
    total_integral: float

    @property
    def slopes(self) -> np.ndarray:
        return np.diff(self.log_values)

    @property
    def mode(self) -> int:
        return int(self.knots[int(np.argmax(self.log_values))])

    def __call__(self, x):
        scalar = np.ndim(x) == 0
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        out = self._eval(x)
        return float(out[0]) if scalar else out

    def _eval(self, x):
        lo, hi = self.knots[0], self.knots[-1]
        out = np.zeros_like(x)
        inside = (x >= lo) & (x <= hi)
        if self.knots.size == 1:
            out[x == lo] = math.exp(self.log_values[0])
            return out
        xi = x[inside]
        seg = np.minimum(np.floor(xi - lo).astype(np.int64), self.knots.size - 2)
        t = xi - (lo + seg)
        lv = self.log_values
        out[inside] = np.exp((1.0 - t) * lv[seg] + t * lv[seg + 1])
        # integers hit the knot value exactly
        on_knot = inside.copy()
        on_knot[inside] = t == 0.0
        out[on_knot] = np.exp(lv[seg[t == 0.0]])
        return out


def _moment_integrals(b):
    """``I_n = int_0^1 u^n e^{b u} du`` for n = 0, 1, 2 (b scalar)."""
    if abs(b) < SERIES_SLOPE:
        i0 = i1 = i2 = 0.0
        term = 1.0
        for j in range(SERIES_TERMS):
            i0 += term / (j + 1)
            i1 += term / (j + 2)
            i2 += term / (j + 3)
            term *= b / (j + 1)
        return i0, i1, i2
    eb = math.exp(b)
    i0 = math.expm1(b) / b
    i1 = (eb * (b - 1.0) + 1.0) / (b * b)
    i2 = (eb * (b * b - 2.0 * b + 2.0) - 2.0) / (b * b * b)
    return i0, i1, i2


def segment_integral(f0: float, f1: float) -> float:
    """``int_0^1 f0^{1-t} f1^t dt``."""
    if f0 == f1:
        return f0
    b = math.log(f1) - math.log(f0)
    return f0 * math.expm1(b) / b


def segment_second_moment(f0: float, f1: float, d: float) -> float:
    """``int_0^1 (u + d)^2 f0^{1-u} f1^u du``; d is the left knot minus the center."""
    b = math.log(f1) - math.log(f0)
    if b >= SERIES_SLOPE:
        # rising segment: write e^a I_n through f1 = e^{a+b} to avoid exp(b) overflow
        i0 = (f1 - f0) / b
        i1 = (f1 * (b - 1.0) + f0) / (b * b)
        i2 = (f1 * (b * b - 2.0 * b + 2.0) - 2.0 * f0) / (b * b * b)
        return d * d * i0 + 2.0 * d * i1 + i2
    i0, i1, i2 = _moment_integrals(b)
    return f0 * (d * d * i0 + 2.0 * d * i1 + i2)


def extend(pmf: Pmf) -> PiecewiseExpDensity:
    if not is_log_concave(pmf):
        raise PreconditionError("extension requires a log-concave pmf")
    knots = pmf.support
    lv = np.log(pmf.probs)
    d = PiecewiseExpDensity(knots, lv, 0.0)
    object.__setattr__(d, "total_integral", integral(d))
    return d


def integral(d: PiecewiseExpDensity) -> float:
    f = np.exp(d.log_values)
    if f.size == 1:
        return 0.0
    return math.fsum(segment_integral(float(f[i]), float(f[i + 1])) for i in range(f.size - 1))


def second_moment_integral(d: PiecewiseExpDensity, m: int) -> float:
    """``int (x - m)^2 f(x) dx`` over the extension."""
    f = np.exp(d.log_values)
    if f.size == 1:
        return 0.0
    return math.fsum(
        segment_second_moment(float(f[i]), float(f[i + 1]), float(d.knots[i] - m)) for i in range(f.size - 1)
    )


def continuous_mode_bound_check(d: PiecewiseExpDensity, tail: float = 0.0):
    """``M^2(Z) E(Z - m)^2 <= 2`` for Z with density ``f / int f``."""
    if d.knots.size < 2:
        return BoundReport.skip("prop6.1", "single-point support")
    B = d.total_integral
    m = d.mode
    fm = math.exp(float(np.max(d.log_values)))
    moment = second_moment_integral(d, m) / B
    lhs = (fm / B) ** 2 * moment
    return check("prop6.1", lhs, 2.0, tail=tail, tail_factor=8.0, B=B, mode=float(m))


def mass_sandwich_checks(pmf: Pmf):
    """``1 - f(m) <= int f <= 1`` and, where applicable, the factor-3 second-moment sandwich."""
    if len(pmf) < 2:
        reason = "support has fewer than two points"
        return [BoundReport.skip(bid, reason) for bid in ("prop5.2-lower", "prop5.2-upper", "prop5.3-lower", "prop5.3-upper")]
    d = extend(pmf)
    m = d.mode
    fm = pmf(m)
    B = d.total_integral
    tail = pmf.tail_mass_bound
    out = [
        check("prop5.2-lower", 1.0 - fm, B, tail=tail, mode=float(m)),
        check("prop5.2-upper", B, 1.0, tail=tail, mode=float(m)),
    ]
    em = second_moment_about(pmf, m)
    ix = second_moment_integral(d, m)
    out.append(check("prop5.3-lower", em / 3.0, ix, tail=tail, tail_factor=(len(pmf) + 1) ** 2, mode=float(m), fm=fm))
    if fm <= 0.5:
        out.append(check("prop5.3-upper", ix, 3.0 * em, tail=tail, tail_factor=(len(pmf) + 1) ** 2, mode=float(m), fm=fm))
    else:
        out.append(BoundReport.skip("prop5.3-upper", "mode mass exceeds 1/2", {"fm": fm}))
    return out
