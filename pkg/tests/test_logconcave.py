import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import finite_pmfs, log_concave_pmfs, random_lc
from dlcbounds.distributions import DistributionSpec, Pmf, build, convolve, variance
from dlcbounds.entropy import m_functional
from dlcbounds.logconcave import (
    PreconditionError,
    decreasing_rearrangement,
    is_log_concave,
    is_log_concave_sequence,
    majorizes,
    match_two_sided_geometric,
    newton_coefficients,
    newton_inequalities_hold,
    schur_moment_check,
)


def test_families_are_log_concave():
    specs = [
        DistributionSpec("binomial", {"n": 30, "p": 0.2}),
        DistributionSpec("poisson", {"lambda": 3.3}),
        DistributionSpec("geometric_one_sided", {"p": 0.7}),
        DistributionSpec("geometric_two_sided", {"p": 0.7}),
        DistributionSpec("discrete_uniform", {"n": 9}),
        DistributionSpec("poisson_binomial", {"p_list": [0.1, 0.9, 0.5]}),
    ]
    for s in specs:
        assert is_log_concave(build(s))


def test_point_mass_and_interior_zero():
    assert is_log_concave(Pmf.point_mass(3))
    assert not is_log_concave(Pmf.from_weights([1, 0, 1]))
    assert not is_log_concave_sequence([1, 0, 0, 1])
    assert not is_log_concave(Pmf.from_weights([1, 0.1, 1]))


def test_gap_sequences_from_product_polynomial():
    # {1,1} * {1,0,0,1} = coefficients of (1+z)(1+z^3)
    a = np.array([1.0, 1.0])
    b = np.array([1.0, 0.0, 0.0, 1.0])
    prod = np.convolve(a, b)
    assert prod.tolist() == [1, 1, 0, 1, 1]
    assert not is_log_concave_sequence(prod, 1e-9)
    assert not is_log_concave_sequence(b, 1e-9)
    assert is_log_concave_sequence(a, 1e-9)


@given(log_concave_pmfs(max_len=25), log_concave_pmfs(max_len=25))
def test_convolution_preserves_log_concavity(a, b):
    assert is_log_concave(convolve(a, b), log_tol=1e-9)


@given(st.lists(st.floats(-5, 5), min_size=1, max_size=12))
def test_real_rooted_polynomial_coefficients_satisfy_newton(roots):
    assert newton_inequalities_hold(newton_coefficients(roots), rel_tol=1e-7)


def test_newton_degree_cap():
    with pytest.raises(ValueError):
        newton_coefficients([0.0] * 41)


def test_rearrangement_ties_are_deterministic():
    f = Pmf.from_weights([1, 2, 2, 1], offset=-1)
    r = decreasing_rearrangement(f)
    assert r.sites.tolist() == [0, 1, -1, 2]
    assert np.all(np.diff(r.values) <= 0)


@given(finite_pmfs())
def test_majorization_is_reflexive_and_point_mass_dominates(f):
    assert majorizes(f, f)
    assert majorizes(Pmf.point_mass(), f)
    u = build(DistributionSpec("discrete_uniform", {"n": len(f) + 3}))
    assert majorizes(f, u)


@pytest.mark.parametrize("p", [0.05, 0.3, 0.6, 0.9])
def test_match_recovers_geometric(p):
    g = build(DistributionSpec("geometric_two_sided", {"p": p}), tail_eps=1e-14)
    m = match_two_sided_geometric(g)
    assert m.q_star == pytest.approx(p, rel=1e-9)


@given(log_concave_pmfs(symmetric=True))
def test_match_against_closed_form(f):
    assume(len(f) % 2 == 1)
    m = match_two_sided_geometric(f)
    f0 = m_functional(f)
    assert m.q_star == pytest.approx((1 - f0) / (1 + f0), abs=1e-12)
    assert m.residual <= 1e-12
    assert m.scale == f0


def test_match_preconditions():
    with pytest.raises(PreconditionError):
        match_two_sided_geometric(Pmf.from_weights([1, 2]))  # half-integer center
    with pytest.raises(PreconditionError):
        match_two_sided_geometric(Pmf.from_weights([1, 2, 3]))
    with pytest.raises(PreconditionError):
        match_two_sided_geometric(Pmf.from_weights([2, 1, 2]))
    assert match_two_sided_geometric(Pmf.point_mass(5)).q_star == 0.0


@given(log_concave_pmfs(symmetric=True))
def test_symmetric_pmf_majorizes_its_geometric_match(f):
    assume(len(f) % 2 == 1)
    m = match_two_sided_geometric(f)
    g = m.to_pmf(center=int(f.symmetry_center()))
    assert majorizes(f, g, tol=1e-12)
    assert variance(f) <= m.variance + 1e-12
    assert all(r.holds for r in schur_moment_check(f, Pmf.from_weights(g.probs, g.offset), 6))


def test_schur_check_preconditions():
    f = Pmf.from_weights([1, 2, 1])
    with pytest.raises(PreconditionError):
        schur_moment_check(f, Pmf.from_weights([1, 2]), 2)
    with pytest.raises(PreconditionError):
        schur_moment_check(build(DistributionSpec("discrete_uniform", {"n": 5})), f, 2)
