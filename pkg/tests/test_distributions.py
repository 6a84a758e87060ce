import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from conftest import finite_pmfs, log_concave_pmfs
from dlcbounds.distributions import (
    DistributionError,
    DistributionSpec,
    Pmf,
    TruncationOverflow,
    build,
    convolve,
    convolve_all,
    mean,
    second_moment_about,
    total_variation,
    two_sided_geometric,
    variance,
)


def test_pmf_rejects_bad_input():
    with pytest.raises(DistributionError):
        Pmf(0, [])
    with pytest.raises(DistributionError):
        Pmf(0, [0.0, 1.0])
    with pytest.raises(DistributionError):
        Pmf(0, [0.5, -0.1, 0.6])
    with pytest.raises(DistributionError):
        Pmf.from_weights([0.0, 0.0])


def test_from_weights_strips_zero_ends():
    f = Pmf.from_weights([0, 0, 1, 0, 3, 0], offset=5)
    assert f.offset == 7 and f.last == 9
    assert f.probs.tolist() == [0.25, 0.0, 0.75]


def test_probs_are_read_only():
    f = Pmf.from_weights([1, 2, 1])
    with pytest.raises(ValueError):
        f.probs[0] = 1.0


def test_point_mass_moments():
    f = Pmf.point_mass(4)
    assert mean(f) == 4 and variance(f) == 0.0


@pytest.mark.parametrize("n,p", [(0, 0.3), (1, 0.5), (10, 0.3), (60, 0.999), (2000, 0.4)])
def test_binomial_matches_scipy(n, p):
    f = build(DistributionSpec("binomial", {"n": n, "p": p}))
    ref = stats.binom.pmf(np.arange(n + 1), n, p)
    ref = ref[ref > 0]
    got = np.array([f(k) for k in range(n + 1)])
    np.testing.assert_allclose(got[got > 0][: ref.size], ref[: got[got > 0].size], rtol=1e-9, atol=1e-300)
    assert variance(f) == pytest.approx(n * p * (1 - p), rel=1e-10, abs=1e-14)


@pytest.mark.parametrize("lam", [0.05, 1.0, 7.5, 40.0, 500.0])
def test_poisson_window_and_moments(lam):
    f = build(DistributionSpec("poisson", {"lambda": lam}), tail_eps=1e-12)
    assert f.tail_mass_bound < 1e-12
    lost = stats.poisson.cdf(f.offset - 1, lam) + stats.poisson.sf(f.last, lam)
    assert lost <= f.tail_mass_bound * (1 + 1e-6) + 1e-300
    assert mean(f) == pytest.approx(lam, rel=1e-9)
    assert variance(f) == pytest.approx(lam, rel=1e-8)


@pytest.mark.parametrize("p", [0.0, 0.1, 0.5, 0.9, 0.99])
def test_two_sided_geometric_closed_forms(p):
    f = build(DistributionSpec("geometric_two_sided", {"p": p}), tail_eps=1e-12)
    c = (1 - p) / (1 + p)
    assert f(0) == pytest.approx(c, rel=1e-11)
    assert variance(f) == pytest.approx(2 * p / (1 - p) ** 2, rel=1e-8)
    assert f.is_symmetric() and f.symmetry_center() == 0.0
    assert f.tail_mass_bound < 1e-12


def test_two_sided_geometric_truncation_is_minimal():
    p, eps = 0.5, 1e-9
    f = two_sided_geometric(p, eps)
    K = f.last
    c = (1 - p) / (1 + p)
    assert 2 * c * p ** (K + 1) / (1 - p) < eps
    assert 2 * c * p ** K / (1 - p) >= eps


@pytest.mark.parametrize("p", [0.0, 0.3, 0.9])
def test_one_sided_geometric(p):
    f = build(DistributionSpec("geometric_one_sided", {"p": p}), tail_eps=1e-12)
    assert f.offset == 0
    assert f(0) == pytest.approx(1 - p, rel=1e-11)
    assert mean(f) == pytest.approx(p / (1 - p), rel=1e-9, abs=1e-15)
    assert variance(f) == pytest.approx(p / (1 - p) ** 2, rel=1e-8, abs=1e-15)


def test_discrete_uniform():
    f = build(DistributionSpec("discrete_uniform", {"n": 7, "start": -3}))
    assert f.offset == -3 and len(f) == 7
    assert variance(f) == pytest.approx((49 - 1) / 12)


def test_poisson_binomial_against_enumeration():
    ps = [0.1, 0.7, 0.4, 0.95]
    f = build(DistributionSpec("poisson_binomial", {"p_list": ps}))
    exact = np.zeros(len(ps) + 1)
    for mask in range(1 << len(ps)):
        pr = 1.0
        for i, p in enumerate(ps):
            pr *= p if mask >> i & 1 else 1 - p
        exact[bin(mask).count("1")] += pr
    np.testing.assert_allclose(f.probs, exact, rtol=1e-13)


def test_build_rejects_bad_parameters():
    bad = [
        DistributionSpec("binomial", {"n": -1, "p": 0.5}),
        DistributionSpec("binomial", {"n": 3, "p": 1.5}),
        DistributionSpec("poisson", {"lambda": 0.0}),
        DistributionSpec("geometric_two_sided", {"p": 1.0}),
        DistributionSpec("explicit", {"probs": []}),
        DistributionSpec("poisson_binomial", {"p_list": []}),
    ]
    for spec in bad:
        with pytest.raises(DistributionError):
            build(spec)
    with pytest.raises(DistributionError):
        build(DistributionSpec("poisson", {"lambda": 1.0}), tail_eps=0.1)
    with pytest.raises(DistributionError):
        DistributionSpec("nonsense", {})


def test_truncation_cap():
    with pytest.raises(TruncationOverflow):
        build(DistributionSpec("geometric_two_sided", {"p": 0.999999}), tail_eps=1e-12, cap=1000)


def test_convolution_of_bernoullis_is_binomial():
    b = build(DistributionSpec("bernoulli", {"p": 0.3}))
    s = convolve_all([b] * 6)
    ref = build(DistributionSpec("binomial", {"n": 6, "p": 0.3}))
    assert total_variation(s, ref) < 1e-15


@given(finite_pmfs(), finite_pmfs())
def test_convolution_adds_means_and_variances(a, b):
    s = convolve(a, b)
    assert s.offset == a.offset + b.offset
    assert s.total() == pytest.approx(1.0, abs=1e-12)
    assert mean(s) == pytest.approx(mean(a) + mean(b), abs=1e-9)
    assert variance(s) == pytest.approx(variance(a) + variance(b), abs=1e-9)


@given(log_concave_pmfs())
def test_variance_is_smallest_second_moment(f):
    m = mean(f)
    for k in (math.floor(m), math.ceil(m)):
        assert variance(f) <= second_moment_about(f, k) + 1e-12


@given(finite_pmfs())
def test_reversal_negates_mean(f):
    r = f.reversed()
    assert mean(r) == pytest.approx(-mean(f), abs=1e-12)
    assert variance(r) == pytest.approx(variance(f), abs=1e-12)


@given(st.integers(-5, 5), st.integers(1, 30))
def test_uniform_is_palindromic(start, n):
    f = build(DistributionSpec("discrete_uniform", {"n": n, "start": start}))
    assert f.symmetry_center() == start + (n - 1) / 2
