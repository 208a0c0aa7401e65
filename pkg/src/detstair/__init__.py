"""detstair: exact Hilbert series of generic determinantal ideals, staircase
structure checks, and change-of-ordering cost predictions, with a prime-field
Groebner verifier for desk-scale instances."""

from .hilbert import (
    HilbertProfile,
    InternalInconsistencyError,
    SystemParams,
    hilbert_binomial,
    hilbert_determinant,
    is_unimodal,
    profile,
    quotient_series,
    section_drop,
    section_series,
    truncate_plus,
)
from .intpoly import IntPoly, IntPolyMatrix, binomial, cauchy_binet_rhs, geo, pascal_minor, poly_det
from .fglm import MulMatrix, ShapePositionError, StructureViolation, build_mul_matrix, lex_parametrization, min_poly_least
from .groebner import (
    DEFAULT_PRIME,
    DimensionError,
    MPoly,
    PolyRing,
    buchberger_reduced,
    extend_primitive,
    gen_system,
    staircase,
)
from .verify import GuardExceeded, RunReport, verify_many, verify_quotient_series, verify_run
from .predict import (
    PredictionReport,
    central_coefficient_estimate,
    cost_model,
    dense_columns_asymptotic,
    dense_columns_exact,
    dense_columns_quadratic,
    ideal_degree,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PRIME",
    "DimensionError",
    "GuardExceeded",
    "HilbertProfile",
    "InternalInconsistencyError",
    "IntPoly",
    "IntPolyMatrix",
    "MPoly",
    "MulMatrix",
    "PolyRing",
    "PredictionReport",
    "RunReport",
    "ShapePositionError",
    "StructureViolation",
    "SystemParams",
    "binomial",
    "buchberger_reduced",
    "build_mul_matrix",
    "cauchy_binet_rhs",
    "central_coefficient_estimate",
    "cost_model",
    "dense_columns_asymptotic",
    "dense_columns_exact",
    "dense_columns_quadratic",
    "extend_primitive",
    "gen_system",
    "geo",
    "hilbert_binomial",
    "hilbert_determinant",
    "ideal_degree",
    "is_unimodal",
    "lex_parametrization",
    "min_poly_least",
    "pascal_minor",
    "poly_det",
    "profile",
    "staircase",
    "quotient_series",
    "section_drop",
    "section_series",
    "truncate_plus",
    "verify_many",
    "verify_quotient_series",
    "verify_run",
]
