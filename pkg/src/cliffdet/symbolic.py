"""Symbolic expansion of expressions over indeterminate coefficients ``a_I``.

The native :class:`Polynomial` packs each monomial into one Python int: the low
8 bits hold the total degree and variable ``i`` owns 5 bits starting at bit
``8 + 5*i``.  Multiplying monomials is then integer addition, and the degree
comes for free.  Exponents stay below 32 for every expression handled here.

Variable ``i`` for ``i < 2**d`` is the coefficient of blade mask ``i``
(``a0``, ``a1``, ``a2``, ``a12``, ...).  In symbolic-metric mode the entries
``g11, g22, ...`` follow at indices ``2**d + k``.

For 5D work an optional backend built on ``python-flint``'s ``fmpz_mpoly`` is
available; it is cross-checked against the native code in the tests.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import (
    GradeSet,
    Metric,
    blade_label,
    blade_mul,
    grade_of,
    mask_from_label,
    negation_signs,
    reorder_sign,
)
from .catalog import DetExpression, canonical_expression, get_expression
from .errors import NonScalarSymbolic, UnsupportedDimension
from .expressions import Node, evaluate

DEG_BITS = 8
EXP_BITS = 5
EXP_MASK = (1 << EXP_BITS) - 1
MAX_DEGREE = EXP_MASK


def var_key(i: int) -> int:
    return (1 << (DEG_BITS + EXP_BITS * i)) | 1


def pack(exponents: Mapping[int, int]) -> int:
    key = 0
    for i, e in exponents.items():
        if e < 0 or e > MAX_DEGREE:
            raise ValueError(f"exponent {e} out of range")
        key += e * var_key(i)
    return key


def unpack(key: int) -> dict[int, int]:
    out = {}
    key >>= DEG_BITS
    i = 0
    while key:
        e = key & EXP_MASK
        if e:
            out[i] = e
        key >>= EXP_BITS
        i += 1
    return out


def var_name(i: int, d: int) -> str:
    n = 1 << d
    if i < n:
        return "a" + (blade_label(i) or "0")
    k = i - n + 1
    return f"g{k}{k}"


def var_index(name: str, d: int) -> int:
    m = re.fullmatch(r"a(\d+)|g(\d)\2", name)
    if not m:
        raise ValueError(f"bad variable name {name!r}")
    if m.group(1) is not None:
        label = m.group(1)
        mask = 0 if label == "0" else mask_from_label(label)
        if mask >= 1 << d or (label != "0" and blade_label(mask) != label):
            raise ValueError(f"variable {name!r} is not a canonical blade of dimension {d}")
        return mask
    return (1 << d) + int(m.group(2)) - 1


class Polynomial:
    """Sparse polynomial with exact integer or rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        self.terms: dict[int, object] = {k: c for k, c in (terms or {}).items() if c != 0}

    @classmethod
    def variable(cls, i: int) -> "Polynomial":
        return cls({var_key(i): 1})

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls({0: c})

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return self.terms == {0: other}

    __hash__ = None

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({k: -c for k, c in self.terms.items()})

    def __add__(self, other) -> "Polynomial":
        other = _as_poly(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            if other == 0:
                return Polynomial()
            return Polynomial._raw({k: c * other for k, c in self.terms.items()})
        if self.degree() + other.degree() > MAX_DEGREE:
            raise OverflowError("degree exceeds packed exponent width")
        out: dict = {}
        _mul_into(out, self.terms, other.terms, 1, 0)
        return Polynomial._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p.terms = terms
        return p

    def degree(self) -> int:
        return max((k & 0xFF for k in self.terms), default=0)

    def coefficient(self, exponents: Mapping[int, int]):
        return self.terms.get(pack(exponents), 0)

    def flip(self, variables: Iterable[int]) -> "Polynomial":
        """Substitute ``x_i -> -x_i`` for each listed variable."""
        shifts = [DEG_BITS + EXP_BITS * i for i in variables]
        out = {}
        for k, c in self.terms.items():
            odd = sum((k >> s) & EXP_MASK for s in shifts) & 1
            out[k] = -c if odd else c
        return Polynomial._raw(out)

    def evaluate(self, values) -> object:
        total = 0
        for k, c in self.terms.items():
            term = c
            for i, e in unpack(k).items():
                term = term * values[i] ** e
            total += term
        return total

    def sorted_terms(self) -> list[tuple[dict[int, int], object]]:
        def order(item):
            exps = unpack(item[0])
            top = max(exps, default=-1) + 1
            return (-(item[0] & 0xFF), [-exps.get(i, 0) for i in range(top)])

        return [(unpack(k), c) for k, c in sorted(self.terms.items(), key=order)]

    def to_text(self, d: int) -> str:
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(var_name(i, d) + (f"^{e}" if e > 1 else "") for i, e in sorted(exps.items()))
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    def __repr__(self) -> str:
        return f"Polynomial({len(self.terms)} terms)"


def _as_poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial.constant(x)


def _mul_into(out: dict, a: dict, b: dict, sign: int, shift: int) -> None:
    """``out += sign * x^shift * a * b`` on raw term dicts."""
    get = out.get
    b_items = list(b.items())
    for ka, ca in a.items():
        ca = ca * sign
        ka += shift
        for kb, cb in b_items:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb


# ---------------------------------------------------------------------------
# symbolic multivectors


@dataclass(frozen=True)
class _Backend:
    name: str
    d: int
    context: object = None

    def zero(self):
        return Polynomial() if self.context is None else self.context.from_dict({})

    def var(self, i: int):
        if self.context is None:
            return Polynomial.variable(i)
        return self.context.gens()[i]


def _flint_backend(d: int) -> _Backend:
    try:
        import flint
    except ImportError as exc:  # pragma: no cover - depends on environment
        raise RuntimeError("the flint backend needs the python-flint package") from exc
    names = [var_name(i, d) for i in range(1 << d)]
    return _Backend("flint", d, flint.fmpz_mpoly_ctx.get(names, "lex"))


def flint_available() -> bool:
    try:
        import flint  # noqa: F401
    except ImportError:
        return False
    return True


def make_backend(name: str, d: int) -> _Backend:
    if name == "native":
        return _Backend("native", d)
    if name == "flint":
        return _flint_backend(d)
    if name == "auto":
        return make_backend("flint" if d >= 5 and flint_available() else "native", d)
    raise ValueError(f"unknown backend {name!r}")


class SymbolicMultivector:
    """Multivector whose coefficients are polynomials in the ``a_I``."""

    __slots__ = ("metric", "coeffs", "backend", "_signs")

    def __init__(self, metric: Metric, coeffs: list, backend: _Backend, signs=None):
        self.metric = metric
        self.coeffs = coeffs
        self.backend = backend
        self._signs = signs if signs is not None else _sign_table(metric, False)

    @property
    def dim(self) -> int:
        return self.metric.dim

    def _new(self, coeffs: list) -> "SymbolicMultivector":
        return SymbolicMultivector(self.metric, coeffs, self.backend, self._signs)

    def one(self) -> "SymbolicMultivector":
        coeffs = [self.backend.zero() for _ in self.coeffs]
        coeffs[0] = coeffs[0] + 1
        return self._new(coeffs)

    @property
    def scalar_part(self):
        return self.coeffs[0]

    def __neg__(self) -> "SymbolicMultivector":
        return self._new([-c for c in self.coeffs])

    def __add__(self, other: "SymbolicMultivector") -> "SymbolicMultivector":
        return self._new([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "SymbolicMultivector") -> "SymbolicMultivector":
        return self._new([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def negate_grades(self, grades) -> "SymbolicMultivector":
        S = GradeSet(grades).restrict(self.dim)
        signs = negation_signs(S.mask, self.dim)
        return self._new([-c if s < 0 else c for c, s in zip(self.coeffs, signs)])

    def dual(self) -> "SymbolicMultivector":
        n = len(self.coeffs)
        coeffs = [self.backend.zero() for _ in range(n)]
        coeffs[n - 1] = coeffs[n - 1] + 1
        return self._new(coeffs) * self

    def __mul__(self, other):
        if not isinstance(other, SymbolicMultivector):
            return self._new([c * other for c in self.coeffs])
        n = len(self.coeffs)
        signs = self._signs
        if self.backend.context is None:
            out = [dict() for _ in range(n)]
            for i, p in enumerate(self.coeffs):
                if not p:
                    continue
                row = signs[i]
                for j, q in enumerate(other.coeffs):
                    if not q:
                        continue
                    s, shift = row[j]
                    if s:
                        _mul_into(out[i ^ j], p.terms, q.terms, s, shift)
            return self._new([Polynomial._raw({k: c for k, c in t.items() if c}) for t in out])
        out = [None] * n
        for i, p in enumerate(self.coeffs):
            if p == 0:
                continue
            row = signs[i]
            for j, q in enumerate(other.coeffs):
                if q == 0:
                    continue
                s = row[j][0]
                if not s:
                    continue
                term = p * q
                if s != 1:
                    term = term * s
                k = i ^ j
                out[k] = term if out[k] is None else out[k] + term
        return self._new([self.backend.zero() if c is None else c for c in out])

    __rmul__ = __mul__

    def __truediv__(self, other):
        raise TypeError("symbolic division is not supported")

    def support(self) -> GradeSet:
        return GradeSet(grade_of(k) for k, c in enumerate(self.coeffs) if c != 0)

    def term_counts(self) -> list[int]:
        return [len(c) for c in self.coeffs]


def _sign_table(metric: Metric, symbolic: bool) -> list[list[tuple[int, int]]]:
    """``table[i][j] = (sign, shift)`` with ``e_i e_j = sign * g^shift * e_{i^j}``.

    In symbolic-metric mode the metric factor is a monomial in the ``g``
    variables, applied by adding ``shift`` to the packed key.
    """
    n = metric.size
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            if symbolic:
                common = i & j
                shift = sum(var_key(n + b) for b in range(metric.dim) if common >> b & 1)
                row.append((reorder_sign(i, j), shift))
            else:
                s = blade_mul(i, j, metric)[0]
                if isinstance(s, Fraction) or not isinstance(s, int):
                    raise ValueError("symbolic expansion needs an integer metric")
                row.append((s, 0))
        table.append(row)
    return table


def generic_multivector(
    d: int,
    metric: Metric | None = None,
    backend: str = "native",
    symbolic_metric: bool = False,
) -> SymbolicMultivector:
    """``a0 + a1 e1 + a2 e2 + a12 e12 + ...`` with one variable per blade."""
    if not 0 <= d <= 5:
        raise UnsupportedDimension(f"symbolic expansion covers dimensions 0..5, got {d}")
    if symbolic_metric and d > 2:
        raise UnsupportedDimension("symbolic metric entries are supported for d <= 2 only")
    if metric is None:
        metric = Metric.euclidean(d)
    if metric.dim != d:
        raise ValueError(f"metric has dimension {metric.dim}, expected {d}")
    be = make_backend(backend, d)
    if symbolic_metric and be.context is not None:
        raise ValueError("symbolic metric entries need the native backend")
    coeffs = [be.var(i) for i in range(1 << d)]
    return SymbolicMultivector(metric, coeffs, be, _sign_table(metric, symbolic_metric))


def _resolve(expr) -> tuple[Node, DetExpression | None]:
    if isinstance(expr, str):
        e = get_expression(expr)
        return e.root, e
    if isinstance(expr, DetExpression):
        return expr.root, expr
    return expr, None


def expand(
    expr,
    d: int,
    metric: Metric | None = None,
    *,
    mode: str = "det",
    backend: str = "native",
    symbolic_metric: bool = False,
):
    """Expand ``expr`` on the generic multivector of dimension ``d``.

    ``mode='det'`` returns the scalar polynomial after proving every other
    blade coefficient is identically zero.  ``mode='adjugate'`` returns the
    per-blade polynomials of the adjugate.  ``mode='full'`` returns the
    :class:`SymbolicMultivector`.
    """
    root, meta = _resolve(expr)
    X = generic_multivector(d, metric, backend, symbolic_metric)
    if mode == "adjugate":
        if meta is None or not meta.adjugatable:
            raise ValueError("adjugate mode needs an adjugatable catalog expression")
        return evaluate(meta.adjugate_root, X).coeffs
    value = evaluate(root, X)
    if mode == "full":
        return value
    if mode != "det":
        raise ValueError(f"unknown mode {mode!r}")
    residue = [k for k, c in enumerate(value.coeffs) if k and c != 0]
    if residue:
        name = meta.id if meta else str(root)
        raise NonScalarSymbolic(f"{name} has non-scalar terms on blades {residue}")
    return value.coeffs[0]


def expand_determinant(d: int, metric: Metric | None = None, backend: str = "native", symbolic_metric=False):
    return expand(canonical_expression(d), d, metric, backend=backend, symbolic_metric=symbolic_metric)


def term_count(p) -> tuple[int, int]:
    """Number of stored monomials and the largest total degree."""
    if isinstance(p, Polynomial):
        return len(p), p.degree()
    if p == 0:
        return 0, 0
    return len(p), int(p.total_degree())


def to_native(p) -> Polynomial:
    """Convert a flint polynomial to :class:`Polynomial`."""
    if isinstance(p, Polynomial):
        return p
    out = {}
    for exps, c in p.to_dict().items():
        out[pack({i: e for i, e in enumerate(exps) if e})] = int(c)
    return Polynomial._raw(out)


def parse_monomial(spec, d: int) -> dict[int, int]:
    """``'a2*a3*a12*a13'``, ``'a0^2 a123^2'`` or a mapping of blade masks to exponents."""
    if isinstance(spec, Mapping):
        return {int(k): int(v) for k, v in spec.items()}
    exps: dict[int, int] = {}
    for tok in re.split(r"[\s*]+", spec.strip()):
        if not tok:
            continue
        name, _, power = tok.partition("^")
        i = var_index(name, d)
        exps[i] = exps.get(i, 0) + (int(power) if power else 1)
    return exps


def coefficient_of(p, monomial, d: int):
    """Exact coefficient of ``monomial`` in ``p`` (0 when absent)."""
    return to_native(p).coefficient(parse_monomial(monomial, d))


def grade_variables(d: int, grades) -> list[int]:
    S = GradeSet(grades)
    return [k for k in range(1 << d) if grade_of(k) in S]


@dataclass(frozen=True)
class DeltaReport:
    dim: int
    first: GradeSet
    second: GradeSet
    count: int
    monomials: tuple[str, ...]


def nondet_delta(d: int = 3, first=(), second=(1,), det_poly=None) -> DeltaReport:
    """Monomials whose coefficients differ between ``det([[A]]_first)`` and ``det([[A]]_second)``."""
    if not 1 <= d <= 4:
        raise UnsupportedDimension(f"delta reports cover dimensions 1..4, got {d}")
    P = expand_determinant(d) if det_poly is None else to_native(det_poly)
    S1, S2 = GradeSet(first), GradeSet(second)
    P1 = P.flip(grade_variables(d, S1))
    P2 = P.flip(grade_variables(d, S2))
    diff = P1 - P2
    names = []
    for exps, _ in diff.sorted_terms():
        names.append("*".join(var_name(i, d) + (f"^{e}" if e > 1 else "") for i, e in sorted(exps.items())))
    return DeltaReport(d, S1, S2, len(diff), tuple(names))


@dataclass(frozen=True)
class AdjugateCounts:
    dim: int
    per_component: dict
    max_component: int
    distinct_total: int
    degree: int


def adjugate_term_counts(d: int, backend: str = "native") -> AdjugateCounts:
    """Per-blade and total distinct monomial counts of the canonical adjugate."""
    comps = expand(canonical_expression(d), d, mode="adjugate", backend=backend)
    per = {blade_label(k) or "0": term_count(c)[0] for k, c in enumerate(comps) if c != 0}
    keys: set = set()
    degree = 0
    for c in comps:
        if c != 0:
            native = to_native(c)
            keys.update(native.terms)
            degree = max(degree, native.degree())
    return AdjugateCounts(d, per, max(per.values(), default=0), len(keys), degree)
