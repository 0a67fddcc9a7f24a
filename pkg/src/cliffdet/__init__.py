"""Determinants, adjugates and inverses of Clifford numbers in Cl(0)..Cl(5)."""

from .algebra import (
    EMPTY,
    GradeSet,
    Metric,
    Multivector,
    blade_mul,
    conjugate_grades,
    dual_left,
    geometric_product,
    grade_negate,
    grade_project,
    grade_support,
    inversion_grades,
    involution,
    linear_combine,
    pseudoscalar_square,
    random_multivector,
    reverse_grades,
)
from .errors import (
    CliffordError,
    DimensionZero,
    GradeOutOfRange,
    InternalNonScalar,
    MetricMismatch,
    NonScalarResult,
    NonScalarSymbolic,
    NotScalarBladeForm,
    ParseError,
    Singular,
    UnsupportedDimension,
)
from .literal import format_multivector, parse_metric, parse_multivector

__version__ = "0.1.0"
