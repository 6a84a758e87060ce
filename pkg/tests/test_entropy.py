import itertools
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import finite_pmfs, log_concave_pmfs
from dlcbounds.distributions import DistributionSpec, Pmf, build, convolve
from dlcbounds.entropy import (
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


def mp_renyi(probs, alpha):
    mp.mp.dps = 40
    ps = [mp.mpf(float(p)) for p in probs if p > 0]
    if alpha == 1:
        return float(-mp.fsum(p * mp.log(p) for p in ps))
    if alpha == math.inf:
        return float(-mp.log(max(ps)))
    a = mp.mpf(alpha)
    return float(mp.log(mp.fsum(p**a for p in ps)) / (1 - a))


def test_order_parsing():
    assert as_order("inf").kind == "infinity"
    assert as_order(1).kind == "shannon"
    assert as_order("2").alpha == 2.0
    assert as_order(AlphaOrder.finite(0.5)).alpha == 0.5
    with pytest.raises(ValueError):
        AlphaOrder.finite(1.0 + 1e-12)
    with pytest.raises(ValueError):
        AlphaOrder.finite(-1.0)
    with pytest.raises(ValueError):
        AlphaOrder("weird")


@pytest.mark.parametrize("alpha", [0.3, 1, 1.5, 2, 3, 10, 200, math.inf])
def test_renyi_matches_high_precision(alpha):
    rng = np.random.default_rng(3)
    for _ in range(20):
        w = rng.random(int(rng.integers(1, 40))) + 1e-3
        f = Pmf.from_weights(w)
        assert renyi_entropy(f, alpha) == pytest.approx(mp_renyi(f.probs, alpha), rel=1e-12, abs=1e-13)


def test_uniform_entropy_is_log_n_for_every_order():
    f = build(DistributionSpec("discrete_uniform", {"n": 37}))
    for a in (0.5, 1, 2, 7, math.inf):
        assert renyi_entropy(f, a) == pytest.approx(math.log(37), rel=1e-13)
        assert entropy_power(f, a) == pytest.approx(37**2, rel=1e-12)


def test_point_mass_trivia():
    f = Pmf.point_mass(-2)
    for a in (1, 2, math.inf):
        assert renyi_entropy(f, a) == 0.0
        assert entropy_power(f, a) == 1.0
        assert delta(f, a) == 0.0
    assert m_functional(f) == 1.0


def test_delta_precision_for_nearly_degenerate():
    f = Pmf.from_weights([1e-10, 1.0])
    h = renyi_entropy(f, 2)
    assert delta(f, 2) == pytest.approx(math.expm1(2 * h), rel=1e-14)
    assert delta(f, 2) > 0


def test_large_alpha_stays_finite():
    f = Pmf.from_weights([0.2, 0.5, 0.3])
    h = renyi_entropy(f, 1e6)
    assert math.isfinite(h)
    assert h == pytest.approx(-math.log(0.5), rel=1e-5)


@given(finite_pmfs(), st.sampled_from([0.5, 1.0, 2.0, 3.0, 10.0]), st.sampled_from([2.0, 5.0, math.inf]))
def test_entropy_non_increasing_in_order(f, a, b):
    if a < b:
        assert renyi_entropy(f, b) <= renyi_entropy(f, a) + 1e-12


@given(finite_pmfs(), st.integers(0, 8))
def test_concentration_brute_force(f, lam):
    brute = max(
        math.fsum(f(k) for k in range(s, s + lam + 1)) for s in range(f.offset - lam, f.last + 1)
    )
    assert concentration(f, lam) == pytest.approx(brute, abs=2e-15)


@given(finite_pmfs(), st.integers(0, 6))
def test_concentration_monotone_in_window(f, lam):
    assert concentration(f, lam) <= concentration(f, lam + 1) + 1e-15
    assert concentration(f, lam) <= 1.0 + 1e-15


@given(finite_pmfs(), st.integers(0, 8))
def test_smoothing_scales_concentration(f, lam):
    # Q(X; lam) = (lam + 1) M(X + U_lam)
    u = smooth_with_discrete_uniform(f, lam)
    assert abs(concentration(f, lam) - (lam + 1) * m_functional(u)) <= 1e-14


@given(finite_pmfs())
def test_collision_equals_exp_minus_h2(f):
    assert collision_probability(f) == pytest.approx(math.exp(-renyi_entropy(f, 2)), rel=1e-12)


@given(log_concave_pmfs(max_len=15), log_concave_pmfs(max_len=15))
def test_shannon_entropy_grows_under_convolution(a, b):
    s = convolve(a, b)
    assert renyi_entropy(s, 1) >= max(renyi_entropy(a, 1), renyi_entropy(b, 1)) - 1e-12


def test_negative_window_rejected():
    with pytest.raises(ValueError):
        concentration(Pmf.point_mass(), -1)
