"""divlab: ramification-based diversity experiments for parametric
families of number fields."""

from .algebra import (
    CurveCover,
    IntPoly,
    critical_polynomial,
    discriminant_in_u,
    parse_cover,
    parse_univariate,
    poly_discriminant,
    resultant,
    squarefree_primitive_part,
)
from .diversity import (
    FieldFingerprint,
    fiber_poly,
    fingerprint,
    is_fiber_irreducible,
    run_census,
)
from .factorization import (
    IntFactorization,
    ModPolyFactorization,
    factor_integer,
    factor_mod_p,
    factor_over_Z,
    is_prime,
    roots_mod_p,
)
from .sieve import ChebotarevSieve, DiversityParams, build_PF, enumerate_MF
from .witnesses import WitnessRecord, primitive_witness, rho_F

__all__ = [
    "ChebotarevSieve",
    "CurveCover",
    "DiversityParams",
    "FieldFingerprint",
    "IntFactorization",
    "IntPoly",
    "ModPolyFactorization",
    "WitnessRecord",
    "build_PF",
    "critical_polynomial",
    "discriminant_in_u",
    "enumerate_MF",
    "factor_integer",
    "factor_mod_p",
    "factor_over_Z",
    "fiber_poly",
    "fingerprint",
    "is_fiber_irreducible",
    "is_prime",
    "parse_cover",
    "parse_univariate",
    "poly_discriminant",
    "primitive_witness",
    "resultant",
    "rho_F",
    "roots_mod_p",
    "run_census",
    "squarefree_primitive_part",
]

__version__ = "0.1.0"
