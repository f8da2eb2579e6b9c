"""orbpairs: exact calculus for geometric orbifold pairs.

Classification of orbifold curves and plane-arrangement pairs by canonical
degree, orbifold bases of fibrations under both multiplicity conventions,
contact-order restriction of plane divisors to parametrized curves,
exhaustive floor-exponent verification, and searches for rational points on
three-marked orbifold lines.  All core arithmetic is exact.
"""

from .orbcore import (
    INFINITY,
    DomainError,
    Multiplicity,
    OrbifoldDivisor,
    coefficient,
    divisor_leq,
    multiplicity_from_coefficient,
)
from .curveclass import CurveOrbifold, Kappa, canonical_degree, kappa_curve

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "DomainError",
    "Multiplicity",
    "OrbifoldDivisor",
    "CurveOrbifold",
    "Kappa",
    "canonical_degree",
    "coefficient",
    "divisor_leq",
    "kappa_curve",
    "multiplicity_from_coefficient",
    "__version__",
]
