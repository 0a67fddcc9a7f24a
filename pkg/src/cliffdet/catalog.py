"""Registry of named determinant expressions and the 3D non-determinant family."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import UnsupportedDimension
from .expressions import (
    A,
    Dual,
    Negate,
    Node,
    chain,
    count_products,
    f,
    neg,
    order,
    prod,
    reversed_order,
    strip_left,
    strip_right,
)


@dataclass(frozen=True)
class DetExpression:
    """A named expression with the dimensions it applies to.

    ``determinant`` is False for scalar-valued forms that are not determinants.
    ``special`` marks forms valid only on restricted inputs (scalar plus blade).
    """

    id: str
    root: Node
    dims: frozenset
    determinant: bool = True
    special: bool = False
    note: str = field(default="", compare=False)

    @cached_property
    def order(self) -> int:
        return order(self.root)

    @cached_property
    def side(self) -> str | None:
        """``'left'`` or ``'right'`` when a bare outer factor of A can be removed."""
        if strip_left(self.root) is not None:
            return "left"
        if strip_right(self.root) is not None:
            return "right"
        return None

    @property
    def adjugatable(self) -> bool:
        return self.side is not None

    @cached_property
    def adjugate_root(self) -> Node | None:
        if self.side == "left":
            return strip_left(self.root)
        if self.side == "right":
            return strip_right(self.root)
        return None

    @property
    def text(self) -> str:
        return str(self.root)

    def supports(self, d: int) -> bool:
        return d in self.dims

    def product_count(self, d: int | None = None, metric=None) -> int:
        """Blade-pair products used by this form; see :func:`count_products`."""
        from .algebra import Metric, generic_probe

        if metric is None:
            metric = Metric.euclidean(min(self.dims) if d is None else d)
        return count_products(self.root, generic_probe(metric))


def _dims(*ds: int) -> frozenset:
    return frozenset(ds)


def _rotations(factors: list) -> list[list]:
    return [factors[s:] + factors[:s] for s in range(len(factors))]


def _build() -> dict[str, DetExpression]:
    reg: dict[str, DetExpression] = {}

    def add(eid, root, dims, **kw):
        reg[eid] = DetExpression(eid, root, frozenset(dims), **kw)

    add("det0", A, _dims(0), note="the number itself")
    add("det2", f(A, "12"), _dims(1, 2), note="canonical in 1D and 2D")
    add("split2", prod(neg(A, "1"), neg(A, "2")), _dims(2), note="split grade negations")
    add("dual1", Dual(prod(neg(A, "1"), Dual(A))), _dims(1))
    add("dual2", Negate(Dual(prod(neg(A, "2"), Dual(A)))), _dims(2))
    add("dual3", f(prod(neg(A, "12"), Dual(A)), "3"), _dims(3))

    add("det4a", chain("12", "34"), _dims(3, 4), note="canonical in 3D and 4D")
    add("det4b", chain("23", "14"), _dims(3, 4))
    add("det3c", chain("13", "12"), _dims(3), note="cancellation hidden in one class")

    # A[[A]]_23[[A]]_13[[A]]_12 and its siblings, each with three cyclic shifts
    bases = [
        [A, neg(A, "23"), neg(A, "13"), neg(A, "12")],
        [A, neg(A, "13"), neg(A, "23"), neg(A, "12")],
        [A, neg(A, "12"), neg(A, "13"), neg(A, "23")],
        [A, neg(A, "12"), neg(A, "23"), neg(A, "13")],
    ]
    for i, base in enumerate(bases):
        for s, rot in enumerate(_rotations(base)):
            add(f"prod3-{4 * s + i + 1}", prod(*rot), _dims(3))

    add("nest3a", prod(A, neg(prod(A, neg(prod(A, neg(A, "12")), "3")), "12")), _dims(3))
    add("nest3b", prod(A, neg(prod(A, neg(prod(A, neg(A, "13")), "2")), "13")), _dims(3))

    # 3D conjugate {1,2}, reverse {2,3}, inversion {1,3} applied to A and to A times its image
    for eid, first, second in (("revinv3a", "12", "23"), ("revinv3b", "23", "13"), ("revinv3c", "13", "12")):
        add(eid, prod(A, neg(A, first), neg(prod(A, neg(A, first)), second)), _dims(3))

    add("det4c", prod(A, neg(prod(neg(prod(A, neg(A, "12")), "34"), A), "12")), _dims(3, 4))
    add("det4d", prod(A, neg(prod(neg(prod(A, neg(A, "23")), "14"), A), "23")), _dims(3, 4))
    add("det4e", prod(neg(A, "12"), A, neg(prod(neg(A, "12"), A), "34")), _dims(3, 4))
    add("det4f", prod(neg(A, "23"), A, neg(prod(neg(A, "23"), A), "14")), _dims(3, 4))

    add("det5", chain("23", "14", "5"), _dims(5), note="canonical in 5D")
    add("det5r", reversed_order(chain("23", "14", "5")), _dims(5), note="reversed product order")
    add("det5b", chain("23", "15", "34"), _dims(5))
    add("det5c", chain("23", "45", "13"), _dims(5))
    add("det5d", chain("125", "3", "14"), _dims(5))
    add("det5e", chain("135", "23", "14"), _dims(5))
    add("det5f", f(prod(A, neg(prod(neg(prod(A, neg(A, "23")), "14"), A), "23")), "5"), _dims(5))
    add("det5g", f(prod(neg(A, "23"), A, neg(prod(neg(A, "23"), A), "14")), "5"), _dims(5))

    add("blade0r", f(A, "0"), _dims(*range(7)), special=True, note="scalar plus one blade only")

    nondet = [
        [neg(A, "123"), neg(A, "1"), neg(A, "2"), neg(A, "3")],
        [neg(A, "123"), neg(A, "2"), neg(A, "1"), neg(A, "3")],
        [neg(A, "123"), neg(A, "3"), neg(A, "2"), neg(A, "1")],
        [neg(A, "123"), neg(A, "3"), neg(A, "1"), neg(A, "2")],
    ]
    for i, base in enumerate(nondet):
        for s, rot in enumerate(_rotations(base)):
            add(f"nondet3-{4 * s + i + 1}", prod(*rot), _dims(3), determinant=False)
    return reg


REGISTRY: dict[str, DetExpression] = _build()

CANONICAL = {0: "det0", 1: "det2", 2: "det2", 3: "det4a", 4: "det4a", 5: "det5"}

# valid only for restricted inputs, so kept out of the general catalog
_NON_CATALOG = {"blade0r"}


def get_expression(eid: str) -> DetExpression:
    try:
        return REGISTRY[eid]
    except KeyError:
        raise KeyError(f"unknown expression id {eid!r}") from None


def canonical_expression(d: int) -> DetExpression:
    if d not in CANONICAL:
        raise UnsupportedDimension(f"no determinant formula for dimension {d}")
    return REGISTRY[CANONICAL[d]]


def expression_catalog(d: int) -> list[DetExpression]:
    """Every registered determinant form for dimension ``d`` (canonical first)."""
    if not 0 <= d <= 5:
        raise UnsupportedDimension(f"no determinant formula for dimension {d}")
    canon = canonical_expression(d)
    rest = [
        e
        for e in REGISTRY.values()
        if e.determinant and d in e.dims and e.id not in _NON_CATALOG and e is not canon
    ]
    return [canon] + rest


def non_det_catalog(d: int) -> list[DetExpression]:
    """The sixteen scalar-valued 3D products that are not determinants."""
    if d != 3:
        raise UnsupportedDimension("non-determinant products are listed for 3D only")
    return [e for e in REGISTRY.values() if not e.determinant]

