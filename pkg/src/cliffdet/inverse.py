"""Determinant, adjugate and inverse of Clifford numbers in dimensions 0 to 5."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .algebra import (
    RATIONAL,
    GradeSet,
    Metric,
    Multivector,
    grade_negate,
    grade_of,
    grade_support,
    random_multivector,
)
from .catalog import DetExpression, canonical_expression, get_expression
from .errors import (
    GradeOutOfRange,
    InternalNonScalar,
    NonScalarResult,
    NotScalarBladeForm,
    Singular,
    UnsupportedDimension,
)
from .expressions import evaluate

MAX_DET_DIM = 5
CALIBRATION_SEED = 20240611


def gn_self_product(A: Multivector, grades) -> Multivector:
    """``f[A, S] = A * [[A]]_S``.  Note ``[[A]]_S * A`` differs in general."""
    return A * grade_negate(A, grades)


def _check(A: Multivector) -> None:
    if A.dim > MAX_DET_DIM:
        raise UnsupportedDimension(f"no determinant formula for dimension {A.dim}")


def _expr(expr) -> DetExpression:
    return get_expression(expr) if isinstance(expr, str) else expr


def _scalar_or_raise(value: Multivector, A: Multivector, order: int, exc) -> object:
    """Return the scalar part after checking that every other part vanishes."""
    if value.ring is RATIONAL:
        residue = [k for k in value.nonzero_masks() if k]
    else:
        scale = max(A.scale(), 1.0) ** order
        residue = [k for k in value.nonzero_masks(scale) if k]
    if residue:
        raise exc(f"non-scalar residue on blades {residue}")
    return value.scalar_part


def _det_and_cache(A: Multivector, expr: DetExpression, check: bool):
    cache: dict = {}
    value = evaluate(expr.root, A, cache)
    if check:
        det = _scalar_or_raise(value, A, expr.order, InternalNonScalar)
    else:
        det = value.scalar_part
    return det, cache


def determinant(A: Multivector, check: bool = True):
    """Scalar determinant via the canonical formula of ``A``'s dimension.

    With ``check`` set, non-scalar residues raise :class:`InternalNonScalar`
    instead of being dropped silently.
    """
    _check(A)
    return _det_and_cache(A, canonical_expression(A.dim), check)[0]


def adjugate(A: Multivector) -> Multivector:
    """Canonical expression with the leading ``A`` removed; ``A*adj(A) == det(A)``."""
    _check(A)
    return det_adj(A)[1]


def det_adj(A: Multivector, expr=None, check: bool = True):
    """Determinant and matching adjugate from one expression, sharing subresults."""
    _check(A)
    expr = canonical_expression(A.dim) if expr is None else _expr(expr)
    if not expr.adjugatable:
        raise ValueError(f"expression {expr.id} has no removable outer factor")
    det, cache = _det_and_cache(A, expr, check)
    adj = evaluate(expr.adjugate_root, A, cache)
    return det, adj


def inverse(A: Multivector, expr=None) -> Multivector:
    """``adj(A) / det(A)``; raises :class:`Singular` when the determinant vanishes."""
    det, adj = det_adj(A, expr)
    if A.ring is RATIONAL:
        if det == 0:
            raise Singular("determinant is zero")
    elif A.ring.is_zero(det, max(A.scale(), 1e-300) ** canonical_expression(A.dim).order):
        raise Singular("determinant is zero to working precision")
    return adj / det


@dataclass(frozen=True)
class DetResult:
    value: object
    expression: str
    sign_convention: int | None


_SIGNS: dict = {}


def _probe(metric: Metric, attempt: int) -> Multivector:
    rng = np.random.default_rng([CALIBRATION_SEED, metric.dim, attempt])
    return random_multivector(metric, rng, RATIONAL)


def sign_convention(expr, metric: Metric) -> int:
    """Fixed sign relating ``expr`` to the canonical determinant for ``metric``.

    Computed once on a deterministic rational probe with nonzero determinant,
    then cached.  Raises :class:`NonScalarResult` if the expression is not a
    determinant for this metric.
    """
    expr = _expr(expr)
    key = (expr.id, metric)
    if key in _SIGNS:
        return _SIGNS[key]
    canon = canonical_expression(metric.dim)
    for attempt in range(16):
        A = _probe(metric, attempt)
        ref = _scalar_or_raise(evaluate(canon.root, A), A, canon.order, InternalNonScalar)
        if ref == 0:
            continue
        val = _scalar_or_raise(evaluate(expr.root, A), A, expr.order, NonScalarResult)
        ratio = Fraction(val) / Fraction(ref)
        if ratio not in (1, -1):
            raise NonScalarResult(f"{expr.id} is not a determinant form for {metric}")
        _SIGNS[key] = int(ratio)
        return _SIGNS[key]
    # every probe singular, e.g. a metric full of zeros: the sign carries no information
    _SIGNS[key] = 1
    return 1


def evaluate_expression(expr, A: Multivector, mode: str = "det"):
    """Evaluate a catalog expression on ``A``.

    ``mode='det'`` requires a scalar result and returns a :class:`DetResult`;
    ``mode='value'`` returns the raw multivector.
    """
    expr = _expr(expr)
    if A.dim not in expr.dims:
        raise UnsupportedDimension(f"{expr.id} is not defined in dimension {A.dim}")
    value = evaluate(expr.root, A)
    if mode == "value":
        return value
    if mode != "det":
        raise ValueError(f"unknown mode {mode!r}")
    scalar = _scalar_or_raise(value, A, expr.order, NonScalarResult)
    sign = None
    if expr.determinant and not expr.special:
        sign = sign_convention(expr, A.metric)
    return DetResult(scalar, expr.id, sign)


def is_blade(B: Multivector) -> bool:
    """True when ``B`` is a pure r-vector and some ``e_J * B`` is a pure 1-vector."""
    support = grade_support(B)
    if len(support) != 1 or 0 in support:
        return False
    metric = B.metric
    scale = B.scale()
    for J in range(metric.size):
        C = Multivector.blade(metric, J, 1, B.ring) * B
        masks = C.nonzero_masks(scale)
        if masks and all(grade_of(k) == 1 for k in masks):
            return True
    return False


def scalar_blade_det(A: Multivector):
    """``A*[[A]]_0 = -a0^2 + A_r^2`` for ``A`` a scalar plus an r-blade."""
    support = grade_support(A)
    others = [r for r in support if r != 0]
    if len(others) > 1:
        raise NotScalarBladeForm(f"support {sorted(support)} has more than one non-scalar grade")
    if others:
        r = others[0]
        if not (r <= 1 or r >= A.dim - 1) and not is_blade(A.grade(r)):
            raise NotScalarBladeForm(f"grade-{r} part is not a blade")
    value = gn_self_product(A, GradeSet([0]))
    return _scalar_or_raise(value, A, 2, NotScalarBladeForm)


def resolve_negated_dual(grades: Iterable[int], d: int) -> GradeSet:
    """Map negative entries ``-k`` to ``d - k``; e.g. ``{2, -2}`` in 5D is ``{2, 3}``."""
    out = []
    for g in grades:
        g = int(g)
        if not -d <= g <= d:
            raise GradeOutOfRange(f"grade {g} outside -{d}..{d}")
        out.append(d + g if g < 0 else g)
    return GradeSet(out)
