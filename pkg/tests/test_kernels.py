import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dlcbounds import kernels
from dlcbounds.kernels import _pykernels as py

ckern = pytest.importorskip("dlcbounds.kernels._ckernels")

arrays = st.lists(st.floats(0.0, 1.0), min_size=1, max_size=80).map(lambda v: np.asarray(v, dtype=np.float64))


def test_compiled_backend_selected():
    assert kernels.BACKEND == "cython"


@given(arrays, arrays)
def test_convolve_bit_identical(a, b):
    x = ckern.convolve(a, b)
    y = py.convolve(a, b)
    assert np.array_equal(np.asarray(x), y)
    np.testing.assert_allclose(y, np.convolve(a, b), rtol=1e-12, atol=1e-15)


@given(arrays, st.integers(1, 20))
def test_window_max_bit_identical(p, w):
    assert tuple(ckern.window_max(p, w)) == tuple(py.window_max(p, w))


@given(arrays, st.integers(1, 20))
def test_window_max_brute_force(p, w):
    mass, start = py.window_max(p, w)
    padded = np.concatenate([np.zeros(w), p, np.zeros(w)])
    sums = [padded[i:i + w + 1].sum() for i in range(padded.size - w)]
    assert mass == pytest.approx(max(sums), abs=1e-14)


@given(arrays)
def test_log_concavity_defect_bit_identical(v):
    a = ckern.log_concavity_defect(v, 1e-300)
    b = py.log_concavity_defect(v, 1e-300)
    assert a == b


@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=80))
def test_poisson_binomial_bit_identical(ps):
    p = np.asarray(ps)
    assert np.array_equal(np.asarray(ckern.poisson_binomial(p)), py.poisson_binomial(p))


def test_defect_edge_cases():
    assert py.log_concavity_defect(np.array([1.0, 1.0]), 1e-300) == -np.inf
    assert py.log_concavity_defect(np.array([1.0, 0.0, 1.0]), 1e-300) == np.inf


def test_fallback_selected_without_extension():
    import subprocess
    import sys

    code = (
        "import sys; sys.modules['dlcbounds.kernels._ckernels'] = None\n"
        "import dlcbounds\n"
        "from dlcbounds import DistributionSpec, build, variance\n"
        "f = build(DistributionSpec('poisson_binomial', {'p_list': [0.2, 0.5]}))\n"
        "print(dlcbounds.BACKEND, round(variance(f), 12))\n"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True).stdout.split()
    assert out == ["python", "0.41"]
