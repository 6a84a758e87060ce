"""Entropy, concentration and variance bounds for discrete log-concave distributions."""
from .distributions import DistributionError, DistributionSpec, Pmf, build, convolve, mean, variance
from .entropy import AlphaOrder, concentration, delta, entropy_power, m_functional, renyi_entropy
from .kernels import BACKEND
from .logconcave import PreconditionError, is_log_concave, majorizes, match_two_sided_geometric
from .reports import BoundReport

__all__ = [
    "AlphaOrder",
    "BACKEND",
    "BoundReport",
    "DistributionError",
    "DistributionSpec",
    "Pmf",
    "PreconditionError",
    "build",
    "concentration",
    "convolve",
    "delta",
    "entropy_power",
    "is_log_concave",
    "m_functional",
    "majorizes",
    "match_two_sided_geometric",
    "mean",
    "renyi_entropy",
    "variance",
]
__version__ = "0.1.0"
