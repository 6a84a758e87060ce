import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dlcbounds.distributions import Pmf

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def log_concave_pmfs(draw, max_len=40, symmetric=False):
    """Random log-concave pmf built from a non-increasing slope sequence."""
    n = draw(st.integers(1, max_len))
    offset = draw(st.integers(-15, 15))
    if symmetric:
        h = (n - 1) // 2 if n % 2 else n // 2 - 1
        steps = draw(st.lists(st.floats(0.0, 3.0), min_size=h, max_size=h))
        half = np.exp(-np.cumsum(np.concatenate([[0.0], np.sort(steps)])))
        w = np.concatenate([half[::-1], half[1:] if n % 2 else half])
    else:
        slopes = draw(st.lists(st.floats(-3.0, 3.0), min_size=n - 1, max_size=n - 1))
        logs = np.concatenate([[0.0], np.cumsum(np.sort(slopes)[::-1])])
        w = np.exp(logs - logs.max())
    return Pmf.from_weights(w, offset)


@st.composite
def finite_pmfs(draw, max_len=30):
    """Any finite pmf (not necessarily log-concave)."""
    n = draw(st.integers(1, max_len))
    w = draw(st.lists(st.floats(0.0, 1.0), min_size=n, max_size=n))
    w[0] = max(w[0], 0.01)
    w[-1] = max(w[-1], 0.01)
    return Pmf.from_weights(w, draw(st.integers(-10, 10)))


def random_lc(rng, n=None, max_len=40):
    n = int(rng.integers(1, max_len + 1)) if n is None else n
    slopes = np.sort(rng.normal(0.0, 1.0, size=n - 1))[::-1]
    logs = np.concatenate([[0.0], np.cumsum(slopes)])
    return Pmf.from_weights(np.exp(logs - logs.max()), int(rng.integers(-10, 11)))


ACCEPTANCE_LINES = []


def record_criterion(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
