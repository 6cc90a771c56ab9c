"""Desk-scale numerical laboratory for multiplicative sign statistics:
segmented sieves, smoothed contour sums, Dirichlet-polynomial mean values,
factorization weights, short-interval variance, circle-method exponential
sums, and entropy accounting for logarithmically weighted sign patterns.
"""

from . import (
    arith_core,
    dirichlet_poly,
    entropy_chowla,
    expsum_circle,
    interval_stats,
    mr_factorization,
    util,
    zeta_mellin,
)

__version__ = "0.1.0"

__all__ = [
    "arith_core",
    "dirichlet_poly",
    "entropy_chowla",
    "expsum_circle",
    "interval_stats",
    "mr_factorization",
    "util",
    "zeta_mellin",
    "__version__",
]
