"""Exact syzygy orders for big-polygon-space modules.

Combinatorial side: length vectors, long/short families, the invariant
mu, chamber enumeration.  Algebraic side: Koszul-type presentations and
a Groebner-based regular-sequence oracle for the syzygy order.
"""

from .backend import BACKEND
from .lenvec import (
    LengthVector,
    LongFamily,
    equivalent,
    is_generic,
    is_long,
    is_strongly_generic,
    long_family,
    mu,
    mu_of_family,
    sigma,
)

__all__ = [
    "BACKEND",
    "LengthVector",
    "LongFamily",
    "equivalent",
    "is_generic",
    "is_long",
    "is_strongly_generic",
    "long_family",
    "mu",
    "mu_of_family",
    "sigma",
]

__version__ = "0.1.0"
