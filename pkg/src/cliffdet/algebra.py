"""Clifford algebra Cl(d) over a diagonal metric.

Basis blades are bitmasks: bit ``i`` set means ``e_{i+1}`` is present, and the
empty mask is the scalar ``e0 = 1``.  A :class:`Multivector` stores a dense
vector of ``2**d`` coefficients indexed by mask, together with its metric and
scalar ring.

Three scalar rings are supported: exact rationals (``fractions.Fraction`` in
object arrays), float64 and complex128.  Mixed operands are promoted along
rational < float < complex.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from .errors import DimensionZero, GradeOutOfRange, MetricMismatch, UnsupportedDimension

MAX_DIM = 6
FLOAT_RTOL = 1e-9


# ---------------------------------------------------------------------------
# scalars and rings


def _plain(x):
    """Normalize a scalar to int, Fraction, float or complex."""
    if isinstance(x, (bool, np.bool_)):
        return int(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return complex(x)
    if isinstance(x, numbers.Rational):
        return _plain(Fraction(x.numerator, x.denominator))
    raise TypeError(f"unsupported scalar {x!r}")


class ScalarRing:
    """Arithmetic contract for multivector coefficients."""

    name: str = ""
    rank: int = 0
    dtype: object = object

    def coerce(self, x):
        raise NotImplementedError

    def array(self, values) -> np.ndarray:
        out = np.empty(len(values), dtype=self.dtype)
        for i, v in enumerate(values):
            out[i] = self.coerce(v)
        return out

    def zeros(self, n: int) -> np.ndarray:
        return self.array([0] * n)

    def is_zero(self, x, scale: float = 1.0) -> bool:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<ring {self.name}>"


class RationalRing(ScalarRing):
    name = "rational"
    rank = 0
    dtype = object

    def coerce(self, x):
        x = _plain(x)
        if isinstance(x, complex):
            raise TypeError("complex value in rational ring")
        return Fraction(x)

    def is_zero(self, x, scale: float = 1.0) -> bool:
        return x == 0


class FloatRing(ScalarRing):
    name = "float"
    rank = 1
    dtype = np.float64

    def coerce(self, x):
        x = _plain(x)
        if isinstance(x, complex):
            raise TypeError("complex value in float ring")
        return float(x)

    def array(self, values) -> np.ndarray:
        return np.array([self.coerce(v) for v in values], dtype=np.float64)

    def is_zero(self, x, scale: float = 1.0) -> bool:
        return abs(x) <= FLOAT_RTOL * scale


class ComplexRing(FloatRing):
    name = "complex"
    rank = 2
    dtype = np.complex128

    def coerce(self, x):
        return complex(_plain(x))

    def array(self, values) -> np.ndarray:
        return np.array([self.coerce(v) for v in values], dtype=np.complex128)


RATIONAL = RationalRing()
FLOAT = FloatRing()
COMPLEX = ComplexRing()
RINGS = {r.name: r for r in (RATIONAL, FLOAT, COMPLEX)}


def get_ring(ring) -> ScalarRing:
    if isinstance(ring, ScalarRing):
        return ring
    try:
        return RINGS[ring]
    except KeyError:
        raise ValueError(f"unknown ring {ring!r}; expected one of {sorted(RINGS)}") from None


def promote(*rings: ScalarRing) -> ScalarRing:
    return max(rings, key=lambda r: r.rank)


def ring_of_scalar(x) -> ScalarRing:
    x = _plain(x)
    if isinstance(x, complex):
        return COMPLEX
    if isinstance(x, float):
        return FLOAT
    return RATIONAL


# ---------------------------------------------------------------------------
# metric


class Metric:
    """Diagonal metric ``(g_11, ..., g_dd)``; entries may be zero or arbitrary scalars."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable):
        entries = tuple(_plain(g) for g in entries)
        if len(entries) > MAX_DIM:
            raise UnsupportedDimension(f"dimension {len(entries)} exceeds {MAX_DIM}")
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Metric is immutable")

    @classmethod
    def euclidean(cls, d: int) -> "Metric":
        return cls((1,) * d)

    @classmethod
    def minkowski(cls, d: int) -> "Metric":
        """Signature (1, d-1): one positive entry followed by negatives."""
        if d == 0:
            return cls(())
        return cls((1,) + (-1,) * (d - 1))

    @classmethod
    def degenerate(cls, d: int) -> "Metric":
        """Euclidean except the last entry, which is zero."""
        if d == 0:
            return cls(())
        return cls((1,) * (d - 1) + (0,))

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def size(self) -> int:
        return 1 << len(self.entries)

    @property
    def ring(self) -> ScalarRing:
        return promote(RATIONAL, *(ring_of_scalar(g) for g in self.entries))

    def signature(self) -> tuple[int, int, int]:
        """Counts of positive, negative and zero entries (real metrics only)."""
        p = sum(1 for g in self.entries if g > 0)
        q = sum(1 for g in self.entries if g < 0)
        return p, q, self.dim - p - q

    def __eq__(self, other) -> bool:
        return isinstance(other, Metric) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(("Metric", self.entries))

    def __repr__(self) -> str:
        return f"Metric({list(self.entries)})"

    def __reduce__(self):
        return (Metric, (self.entries,))


# ---------------------------------------------------------------------------
# blades


def grade_of(mask: int) -> int:
    return mask.bit_count()


def blade_label(mask: int) -> str:
    """Ascending index digits, e.g. ``0b101 -> '13'``; scalar is ``''``."""
    return "".join(str(i + 1) for i in range(MAX_DIM) if mask >> i & 1)


def blade_name(mask: int) -> str:
    return "e" + blade_label(mask) if mask else "1"


def mask_from_label(label: str) -> int:
    mask = 0
    for ch in label:
        mask |= 1 << (int(ch) - 1)
    return mask


def reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenated index lists of blades ``a`` and ``b``."""
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_mul(a: int, b: int, metric: Metric):
    """Product of basis blades: returns ``(scale, mask)`` with ``e_a e_b = scale e_mask``."""
    scale = reorder_sign(a, b)
    common = a & b
    i = 0
    while common:
        if common & 1:
            scale = scale * metric.entries[i]
        common >>= 1
        i += 1
    return scale, a ^ b


class _Tables:
    """Product tables for one metric.

    ``lsgn[k, j]`` is the scale of ``e_{k^j} e_j``, so the left-regular matrix of
    ``A`` is ``A[perm] * lsgn`` and ``A*B == (A[perm] * lsgn) @ B``.
    """

    def __init__(self, metric: Metric):
        n = metric.size
        idx = np.arange(n)
        self.perm = idx[:, None] ^ idx[None, :]
        lsgn = np.empty((n, n), dtype=object)
        for k in range(n):
            for j in range(n):
                lsgn[k, j] = blade_mul(k ^ j, j, metric)[0]
        self.exact = lsgn
        self.integral = all(isinstance(x, int) for x in lsgn.flat)
        ring = metric.ring
        self.float = lsgn.astype(np.complex128 if ring is COMPLEX else np.float64)
        self.complex = lsgn.astype(np.complex128)


@lru_cache(maxsize=64)
def tables(metric: Metric) -> _Tables:
    return _Tables(metric)


# ---------------------------------------------------------------------------
# grade sets


class GradeSet:
    """A set of grades acting as a sign-flip operator; composition is symmetric difference."""

    __slots__ = ("mask",)

    def __init__(self, grades: Iterable[int] | "GradeSet" | str = ()):
        if isinstance(grades, GradeSet):
            mask = grades.mask
        else:
            if isinstance(grades, str):
                grades = [int(ch) for ch in grades if not ch.isspace()]
            mask = 0
            for g in grades:
                g = int(g)
                if not 0 <= g <= MAX_DIM:
                    raise GradeOutOfRange(f"grade {g} outside 0..{MAX_DIM}")
                mask |= 1 << g
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("GradeSet is immutable")

    @classmethod
    def from_mask(cls, mask: int) -> "GradeSet":
        out = cls()
        object.__setattr__(out, "mask", mask)
        return out

    def __iter__(self) -> Iterator[int]:
        return (g for g in range(MAX_DIM + 1) if self.mask >> g & 1)

    def __contains__(self, g: int) -> bool:
        return 0 <= g <= MAX_DIM and bool(self.mask >> g & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __xor__(self, other: "GradeSet") -> "GradeSet":
        return GradeSet.from_mask(self.mask ^ GradeSet(other).mask)

    compose = __xor__

    def __or__(self, other) -> "GradeSet":
        return GradeSet.from_mask(self.mask | GradeSet(other).mask)

    def __and__(self, other) -> "GradeSet":
        return GradeSet.from_mask(self.mask & GradeSet(other).mask)

    def __le__(self, other) -> bool:
        return self.mask & ~GradeSet(other).mask == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, GradeSet):
            return self.mask == other.mask
        if isinstance(other, (set, frozenset)):
            return self == GradeSet(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("GradeSet", self.mask))

    def restrict(self, d: int) -> "GradeSet":
        """Drop grades above ``d``; they act trivially in Cl(d)."""
        return GradeSet.from_mask(self.mask & ((1 << (d + 1)) - 1))

    def complement(self, d: int) -> "GradeSet":
        return GradeSet.from_mask(~self.mask & ((1 << (d + 1)) - 1))

    def label(self) -> str:
        """Digits in ascending order, e.g. ``'12'``; empty set is ``''``."""
        return "".join(str(g) for g in self)

    def __repr__(self) -> str:
        return "GradeSet({" + ", ".join(str(g) for g in self) + "})"

    def __reduce__(self):
        return (GradeSet.from_mask, (self.mask,))


EMPTY = GradeSet()


def reverse_grades(d: int) -> GradeSet:
    return GradeSet(r for r in range(d + 1) if r % 4 in (2, 3))


def inversion_grades(d: int) -> GradeSet:
    return GradeSet(r for r in range(d + 1) if r % 2 == 1)


def conjugate_grades(d: int) -> GradeSet:
    return GradeSet(r for r in range(d + 1) if r % 4 in (1, 2))


@lru_cache(maxsize=None)
def negation_signs(grades_mask: int, d: int) -> np.ndarray:
    """Per-blade ``+1/-1`` vector implementing grade negation in Cl(d)."""
    signs = np.array(
        [-1 if grades_mask >> grade_of(k) & 1 else 1 for k in range(1 << d)], dtype=np.int64
    )
    signs.setflags(write=False)
    return signs


# ---------------------------------------------------------------------------
# multivectors


def _check_dim(d: int) -> None:
    if not 0 <= d <= MAX_DIM:
        raise UnsupportedDimension(f"dimension {d} outside 0..{MAX_DIM}")


class Multivector:
    """Dense multivector with an attached metric and scalar ring. Immutable."""

    __slots__ = ("metric", "coeffs", "ring", "_intform")

    def __init__(self, metric: Metric, coeffs, ring=None):
        if not isinstance(metric, Metric):
            metric = Metric(metric)
        n = metric.size
        values = list(coeffs)
        if len(values) != n:
            raise ValueError(f"expected {n} coefficients, got {len(values)}")
        if ring is None:
            ring = promote(RATIONAL, *(ring_of_scalar(v) for v in values))
        ring = get_ring(ring)
        arr = coeffs if isinstance(coeffs, np.ndarray) and coeffs.dtype == ring.dtype else None
        arr = ring.array(values) if arr is None or ring is RATIONAL else arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "metric", metric)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_intform", None)

    @classmethod
    def _raw(cls, metric: Metric, arr: np.ndarray, ring: ScalarRing) -> "Multivector":
        out = object.__new__(cls)
        arr.setflags(write=False)
        object.__setattr__(out, "metric", metric)
        object.__setattr__(out, "coeffs", arr)
        object.__setattr__(out, "ring", ring)
        object.__setattr__(out, "_intform", None)
        return out

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    def __reduce__(self):
        return (Multivector, (self.metric, list(self.coeffs), self.ring.name))

    # construction helpers

    @classmethod
    def zero(cls, metric: Metric, ring=RATIONAL) -> "Multivector":
        ring = get_ring(ring)
        return cls._raw(metric, ring.zeros(metric.size), ring)

    @classmethod
    def scalar(cls, metric: Metric, value, ring=None) -> "Multivector":
        ring = get_ring(ring) if ring is not None else promote(RATIONAL, ring_of_scalar(value))
        arr = ring.zeros(metric.size)
        arr[0] = ring.coerce(value)
        return cls._raw(metric, arr, ring)

    @classmethod
    def blade(cls, metric: Metric, mask: int, value=1, ring=None) -> "Multivector":
        if not 0 <= mask < metric.size:
            raise ValueError(f"blade mask {mask} invalid in dimension {metric.dim}")
        ring = get_ring(ring) if ring is not None else promote(RATIONAL, ring_of_scalar(value))
        arr = ring.zeros(metric.size)
        arr[mask] = ring.coerce(value)
        return cls._raw(metric, arr, ring)

    @classmethod
    def from_dict(cls, metric: Metric, components: dict, ring=None) -> "Multivector":
        """Build from ``{mask or label: value}``; labels are digit strings like ``'12'``."""
        values = [0] * metric.size
        for key, v in components.items():
            mask = mask_from_label(key) if isinstance(key, str) else int(key)
            if not 0 <= mask < metric.size:
                raise ValueError(f"blade {key!r} invalid in dimension {metric.dim}")
            values[mask] = v
        return cls(metric, values, ring)

    def one(self) -> "Multivector":
        return Multivector.scalar(self.metric, 1, self.ring)

    # accessors

    @property
    def dim(self) -> int:
        return self.metric.dim

    def __getitem__(self, mask: int):
        return self.coeffs[mask]

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def scalar_part(self):
        return self.coeffs[0]

    def to_dict(self) -> dict[int, object]:
        return {k: v for k, v in enumerate(self.coeffs) if v != 0}

    def scale(self) -> float:
        """Largest coefficient magnitude, used by the float zero test."""
        if self.ring is RATIONAL:
            return float(max((abs(v) for v in self.coeffs), default=0))
        return float(np.max(np.abs(self.coeffs))) if len(self.coeffs) else 0.0

    def is_zero_coeff(self, mask: int, scale: float | None = None) -> bool:
        if self.ring is RATIONAL:
            return self.coeffs[mask] == 0
        return self.ring.is_zero(self.coeffs[mask], self.scale() if scale is None else scale)

    def nonzero_masks(self, scale: float | None = None) -> list[int]:
        if self.ring is RATIONAL:
            return [k for k, v in enumerate(self.coeffs) if v != 0]
        s = self.scale() if scale is None else scale
        return [k for k, v in enumerate(self.coeffs) if not self.ring.is_zero(v, s)]

    def is_scalar(self, scale: float | None = None) -> bool:
        return all(k == 0 for k in self.nonzero_masks(scale))

    def astype(self, ring) -> "Multivector":
        ring = get_ring(ring)
        if ring is self.ring:
            return self
        if ring.rank < self.ring.rank:
            raise TypeError(f"cannot demote {self.ring.name} to {ring.name}")
        return Multivector._raw(self.metric, ring.array(list(self.coeffs)), ring)

    # integer form for the rational fast path

    def _ints(self):
        cached = self._intform
        if cached is None:
            dens = [v.denominator for v in self.coeffs]
            den = math.lcm(*dens) if dens else 1
            nums = np.array([v.numerator * (den // v.denominator) for v in self.coeffs], dtype=object)
            cached = (nums, den)
            object.__setattr__(self, "_intform", cached)
        return cached

    # arithmetic

    def _align(self, other: "Multivector"):
        if self.metric != other.metric:
            raise MetricMismatch(f"{self.metric} vs {other.metric}")
        ring = promote(self.ring, other.ring)
        return self.astype(ring), other.astype(ring), ring

    def __add__(self, other):
        if not isinstance(other, Multivector):
            other = Multivector.scalar(self.metric, other)
        a, b, ring = self._align(other)
        return Multivector._raw(self.metric, a.coeffs + b.coeffs, ring)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            other = Multivector.scalar(self.metric, other)
        a, b, ring = self._align(other)
        return Multivector._raw(self.metric, a.coeffs - b.coeffs, ring)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Multivector._raw(self.metric, -self.coeffs, self.ring)

    def __pos__(self):
        return self

    def _scaled(self, x):
        ring = promote(self.ring, ring_of_scalar(x))
        a = self.astype(ring)
        return Multivector._raw(self.metric, a.coeffs * ring.coerce(x), ring)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return self._scaled(other)

    def __rmul__(self, other):
        return self._scaled(other)

    def __truediv__(self, other):
        if isinstance(other, Multivector):
            raise TypeError("divide by a scalar, or multiply by an inverse")
        if self.ring is RATIONAL and ring_of_scalar(other) is RATIONAL:
            return self._scaled(1 / Fraction(other))
        return self._scaled(1 / other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
            if isinstance(other, (numbers.Number, Fraction)):
                other = Multivector.scalar(self.metric, other)
            else:
                return NotImplemented
        if self.metric != other.metric:
            return False
        return bool(np.all(self.coeffs == other.coeffs))

    __hash__ = None

    def isclose(self, other: "Multivector", rtol: float = FLOAT_RTOL) -> bool:
        """Tolerance comparison relative to the largest coefficient of either side."""
        a, b, _ = self._align(other)
        scale = max(a.scale(), b.scale(), 1e-300)
        diff = np.abs(np.asarray(a.coeffs, dtype=np.complex128) - np.asarray(b.coeffs, dtype=np.complex128))
        return bool(np.all(diff <= rtol * scale))

    # grade operations

    def grade(self, r: int) -> "Multivector":
        return grade_project(self, r)

    def grades(self) -> GradeSet:
        return grade_support(self)

    def negate_grades(self, grades) -> "Multivector":
        return grade_negate(self, grades)

    def reverse(self) -> "Multivector":
        return involution(self, "reverse")

    def inversion(self) -> "Multivector":
        return involution(self, "inversion")

    def conjugate(self) -> "Multivector":
        return involution(self, "conjugate")

    def dual(self) -> "Multivector":
        return dual_left(self)

    def __str__(self) -> str:
        from .literal import format_multivector

        return format_multivector(self)

    def __repr__(self) -> str:
        return f"Multivector({self}, metric={list(self.metric.entries)}, ring={self.ring.name})"


def _object_array(values: list) -> np.ndarray:
    arr = np.empty(len(values), dtype=object)
    arr[:] = values
    return arr


def geometric_product(A: Multivector, B: Multivector) -> Multivector:
    """Bilinear extension of :func:`blade_mul`."""
    if A.metric != B.metric:
        raise MetricMismatch(f"{A.metric} vs {B.metric}")
    metric = A.metric
    t = tables(metric)
    ring = promote(A.ring, B.ring, metric.ring)
    if ring is RATIONAL:
        if t.integral:
            na, da = A._ints()
            nb, db = B._ints()
            prod = (na[t.perm] * t.exact).dot(nb)
            den = da * db
            if den == 1:
                coeffs = [Fraction(int(v)) for v in prod]
            else:
                coeffs = [Fraction(int(v), den) for v in prod]
            return Multivector._raw(metric, _object_array(coeffs), RATIONAL)
        a = A.coeffs
        prod = (a[t.perm] * t.exact).dot(B.coeffs)
        return Multivector._raw(metric, _object_array([Fraction(v) for v in prod]), RATIONAL)
    a = A.astype(ring).coeffs
    b = B.astype(ring).coeffs
    table = t.complex if ring is COMPLEX else t.float
    return Multivector._raw(metric, (a[t.perm] * table) @ b, ring)


def linear_combine(alpha, A: Multivector, beta, B: Multivector) -> Multivector:
    if A.metric != B.metric:
        raise MetricMismatch(f"{A.metric} vs {B.metric}")
    return alpha * A + beta * B


def grade_project(A: Multivector, r: int) -> Multivector:
    if not 0 <= r <= A.dim:
        raise GradeOutOfRange(f"grade {r} outside 0..{A.dim}")
    keep = np.array([grade_of(k) == r for k in range(A.metric.size)])
    arr = A.coeffs.copy()
    arr[~keep] = A.ring.coerce(0)
    return Multivector._raw(A.metric, arr, A.ring)


def grade_support(A: Multivector, scale: float | None = None) -> GradeSet:
    """Grades carrying a coefficient that survives the ring's zero test."""
    return GradeSet(grade_of(k) for k in A.nonzero_masks(scale))


def grade_negate(A: Multivector, grades) -> Multivector:
    """Flip the sign of every part whose grade is in ``grades``; grades above d are ignored."""
    S = GradeSet(grades)
    if not S.restrict(A.dim):
        return A
    signs = negation_signs(S.restrict(A.dim).mask, A.dim)
    if A.ring is RATIONAL:
        arr = np.array([-v if s < 0 else v for v, s in zip(A.coeffs, signs)], dtype=object)
    else:
        arr = A.coeffs * signs
    return Multivector._raw(A.metric, arr, A.ring)


_INVOLUTIONS = {
    "reverse": reverse_grades,
    "inversion": inversion_grades,
    "conjugate": conjugate_grades,
}


def involution(A: Multivector, kind: str) -> Multivector:
    try:
        grades = _INVOLUTIONS[kind](A.dim)
    except KeyError:
        raise ValueError(f"unknown involution {kind!r}") from None
    return grade_negate(A, grades)


def pseudoscalar(metric: Metric, ring=RATIONAL) -> Multivector:
    if metric.dim == 0:
        raise DimensionZero("no pseudoscalar in dimension 0")
    return Multivector.blade(metric, metric.size - 1, 1, ring)


def pseudoscalar_square(metric: Metric):
    """``(e_1...e_d)^2 = (-1)^(d(d-1)/2) * prod(g_ii)``."""
    d = metric.dim
    if d == 0:
        raise DimensionZero("no pseudoscalar in dimension 0")
    value = -1 if (d * (d - 1) // 2) % 2 else 1
    for g in metric.entries:
        value = value * g
    return value


def dual_left(A: Multivector) -> Multivector:
    """Left multiplication by the unit pseudoscalar."""
    return geometric_product(pseudoscalar(A.metric, A.ring), A)


def random_multivector(
    metric: Metric,
    rng: np.random.Generator,
    ring="rational",
    *,
    low: int = -9,
    high: int = 9,
    max_den: int = 1,
    grades: Iterable[int] | None = None,
) -> Multivector:
    """Random multivector for probes and tests.

    Rational coefficients are ``n/q`` with ``n`` uniform in ``[low, high]`` and
    ``q`` uniform in ``[1, max_den]``; float and complex coefficients are
    standard normal.  ``grades`` restricts the support.
    """
    ring = get_ring(ring)
    n = metric.size
    mask = None
    if grades is not None:
        G = GradeSet(grades)
        mask = np.array([grade_of(k) in G for k in range(n)])
    if ring is RATIONAL:
        nums = rng.integers(low, high + 1, size=n)
        dens = rng.integers(1, max_den + 1, size=n) if max_den > 1 else np.ones(n, dtype=np.int64)
        values = [Fraction(int(a), int(b)) for a, b in zip(nums, dens)]
        if mask is not None:
            values = [v if m else Fraction(0) for v, m in zip(values, mask)]
        return Multivector._raw(metric, np.array(values, dtype=object), RATIONAL)
    if ring is FLOAT:
        arr = rng.standard_normal(n)
    else:
        arr = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    if mask is not None:
        arr = np.where(mask, arr, 0)
    return Multivector._raw(metric, arr.astype(ring.dtype), ring)


def generic_probe(metric: Metric, seed: int = 0, ring="rational") -> Multivector:
    """Deterministic multivector with every coefficient nonzero.

    Numerators are drawn from 1..97 with random signs so accidental
    cancellations are unlikely.
    """
    rng = np.random.default_rng([7919, metric.dim, seed])
    n = metric.size
    values = rng.integers(1, 98, size=n) * rng.choice([-1, 1], size=n)
    return Multivector(metric, [int(v) for v in values], ring)
