"""Hot loops: convolution, window sums, log-concavity scan, Bernoulli sums.

The compiled Cython module is used when it was built; otherwise the numpy
implementation in :mod:`._pykernels` is imported. ``BACKEND`` names the one
in use.
"""
try:
    from ._ckernels import convolve, log_concavity_defect, poisson_binomial, window_max

    BACKEND = "cython"
except ImportError:  # extension not built
    from ._pykernels import convolve, log_concavity_defect, poisson_binomial, window_max

    BACKEND = "python"

__all__ = ["BACKEND", "convolve", "log_concavity_defect", "poisson_binomial", "window_max"]
