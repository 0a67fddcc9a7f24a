"""Syntax trees for determinant-style product expressions.

Nodes are frozen dataclasses, so structurally equal subtrees hash equal and
evaluation can memoize repeated subexpressions.  Evaluation is generic: any
value type providing ``*``, unary ``-``, ``negate_grades``, ``dual`` and
``one`` works, which lets the same tree run on numeric and symbolic
multivectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .algebra import GradeSet


@dataclass(frozen=True)
class Var:
    """The input multivector ``A``."""

    def __str__(self) -> str:
        return "A"


@dataclass(frozen=True)
class GradeNeg:
    child: "Node"
    grades: GradeSet

    def __str__(self) -> str:
        return f"[[{self.child}]]_{{{self.grades.label()}}}"


@dataclass(frozen=True)
class Product:
    """Ordered product of factors; the empty product is 1."""

    factors: tuple

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(_paren(f) for f in self.factors)


@dataclass(frozen=True)
class SelfProd:
    """``f[child, S] = child * [[child]]_S``."""

    child: "Node"
    grades: GradeSet

    def __str__(self) -> str:
        return f"f[{self.child},{{{','.join(str(g) for g in self.grades)}}}]"


@dataclass(frozen=True)
class Dual:
    """Left multiplication by the unit pseudoscalar."""

    child: "Node"

    def __str__(self) -> str:
        return f"dual({self.child})"


@dataclass(frozen=True)
class Negate:
    child: "Node"

    def __str__(self) -> str:
        return f"-{_paren(self.child)}"


@dataclass(frozen=True)
class ScalarDiv:
    """``num / den`` where ``den`` evaluates to a scalar."""

    num: "Node"
    den: "Node"

    def __str__(self) -> str:
        return f"{_paren(self.num)}/{_paren(self.den)}"


Node = Union[Var, GradeNeg, Product, SelfProd, Dual, Negate, ScalarDiv]

A = Var()
ONE = Product(())


def _paren(node: Node) -> str:
    text = str(node)
    return f"({text})" if isinstance(node, (Product, Negate, ScalarDiv)) and "*" in text else text


# constructors -------------------------------------------------------------


def gs(grades) -> GradeSet:
    return grades if isinstance(grades, GradeSet) else GradeSet(grades)


def neg(child: Node, grades) -> Node:
    """``[[child]]_grades``; an empty set is the identity."""
    S = gs(grades)
    return child if not S else GradeNeg(child, S)


def prod(*factors: Node) -> Node:
    """Flattening product constructor."""
    flat: list = []
    for f in factors:
        if isinstance(f, Product):
            flat.extend(f.factors)
        else:
            flat.append(f)
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def f(child: Node, grades) -> SelfProd:
    return SelfProd(child, gs(grades))


def chain(*grade_sets) -> Node:
    """Nested self-product ``f[...f[A, S1]..., Sk]``."""
    node: Node = A
    for S in grade_sets:
        node = f(node, S)
    return node


# evaluation ---------------------------------------------------------------


def evaluate(node: Node, value, cache: dict | None = None):
    """Evaluate ``node`` with ``A`` bound to ``value``; shared subtrees run once."""
    if cache is None:
        cache = {}
    hit = cache.get(node)
    if hit is not None:
        return hit
    if isinstance(node, Var):
        out = value
    elif isinstance(node, GradeNeg):
        out = evaluate(node.child, value, cache).negate_grades(node.grades)
    elif isinstance(node, SelfProd):
        x = evaluate(node.child, value, cache)
        out = x * x.negate_grades(node.grades)
    elif isinstance(node, Product):
        if not node.factors:
            out = value.one()
        else:
            out = evaluate(node.factors[0], value, cache)
            for fac in node.factors[1:]:
                out = out * evaluate(fac, value, cache)
    elif isinstance(node, Dual):
        out = evaluate(node.child, value, cache).dual()
    elif isinstance(node, Negate):
        out = -evaluate(node.child, value, cache)
    elif isinstance(node, ScalarDiv):
        num = evaluate(node.num, value, cache)
        den = evaluate(node.den, value, cache)
        out = num / den.scalar_part
    else:
        raise TypeError(f"not an expression node: {node!r}")
    cache[node] = out
    return out


# structure ----------------------------------------------------------------


def order(node: Node) -> int:
    """Power of ``A`` in the expanded expression."""
    if isinstance(node, Var):
        return 1
    if isinstance(node, (GradeNeg, Dual, Negate)):
        return order(node.child)
    if isinstance(node, SelfProd):
        return 2 * order(node.child)
    if isinstance(node, Product):
        return sum(order(x) for x in node.factors)
    if isinstance(node, ScalarDiv):
        return order(node.num) - order(node.den)
    raise TypeError(f"not an expression node: {node!r}")


def strip_left(node: Node) -> Node | None:
    """Remove a leading factor of ``A``; ``None`` if the expression does not start with one."""
    if isinstance(node, Var):
        return ONE
    if isinstance(node, Product) and node.factors:
        rest = strip_left(node.factors[0])
        return None if rest is None else prod(rest, *node.factors[1:])
    if isinstance(node, SelfProd):
        rest = strip_left(node.child)
        return None if rest is None else prod(rest, GradeNeg(node.child, node.grades))
    if isinstance(node, Negate):
        rest = strip_left(node.child)
        return None if rest is None else Negate(rest)
    return None


def strip_right(node: Node) -> Node | None:
    """Remove a trailing factor of ``A``; sees through the pseudoscalar of a dual."""
    if isinstance(node, Var):
        return ONE
    if isinstance(node, Product) and node.factors:
        rest = strip_right(node.factors[-1])
        return None if rest is None else prod(*node.factors[:-1], rest)
    if isinstance(node, Dual):
        rest = strip_right(node.child)
        return None if rest is None else Dual(rest)
    if isinstance(node, Negate):
        rest = strip_right(node.child)
        return None if rest is None else Negate(rest)
    return None


def desugar(node: Node) -> Node:
    """Rewrite self-products as explicit products."""
    if isinstance(node, SelfProd):
        c = desugar(node.child)
        return prod(c, GradeNeg(c, node.grades))
    if isinstance(node, GradeNeg):
        return GradeNeg(desugar(node.child), node.grades)
    if isinstance(node, Product):
        return prod(*(desugar(x) for x in node.factors))
    if isinstance(node, (Dual, Negate)):
        return type(node)(desugar(node.child))
    if isinstance(node, ScalarDiv):
        return ScalarDiv(desugar(node.num), desugar(node.den))
    return node


def reversed_order(node: Node) -> Node:
    """Reverse every product (after desugaring); the reverse of a scalar form is again scalar."""
    node = desugar(node)
    return _rev(node)


def _rev(node: Node) -> Node:
    if isinstance(node, Product):
        return prod(*(_rev(x) for x in reversed(node.factors)))
    if isinstance(node, GradeNeg):
        return GradeNeg(_rev(node.child), node.grades)
    if isinstance(node, (Dual, Negate)):
        return type(node)(_rev(node.child))
    if isinstance(node, ScalarDiv):
        return ScalarDiv(_rev(node.num), _rev(node.den))
    return node


def subnodes(node: Node):
    """Distinct subtrees in post-order."""
    seen: dict = {}

    def walk(n: Node) -> None:
        if n in seen:
            return
        if isinstance(n, (GradeNeg, SelfProd, Dual, Negate)):
            walk(n.child)
        elif isinstance(n, Product):
            for x in n.factors:
                walk(x)
        elif isinstance(n, ScalarDiv):
            walk(n.num)
            walk(n.den)
        seen[n] = None

    walk(node)
    return list(seen)


def count_products(node: Node, probe) -> int:
    """Blade-pair products needed to evaluate ``node``.

    Supports are read from the numeric evaluation on ``probe`` (a generic
    multivector).  A self-product ``X*[[X]]_S`` counts unordered blade pairs of
    ``X`` (squares included) whose two cross terms do not cancel
    structurally and whose product lands on a blade present in the result.
    Ordinary products count ordered pairs landing on a present blade.
    Repeated subexpressions are counted once.
    """
    from .algebra import blade_mul, grade_of

    metric = probe.metric
    cache: dict = {}
    evaluate(node, probe, cache)
    total = 0

    def present(mv) -> set:
        return set(mv.nonzero_masks())

    def ordered_pairs(left, right, out) -> int:
        keep = present(out)
        n = 0
        for b1 in left.nonzero_masks():
            for b2 in right.nonzero_masks():
                s, k = blade_mul(b1, b2, metric)
                if s != 0 and k in keep:
                    n += 1
        return n

    for sub in subnodes(node):
        if isinstance(sub, SelfProd):
            x = cache[sub.child]
            keep = present(cache[sub])
            blades = x.nonzero_masks()
            for i, b1 in enumerate(blades):
                for b2 in blades[i:]:
                    if b1 ^ b2 not in keep:
                        continue
                    s1 = -1 if grade_of(b1) in sub.grades else 1
                    s2 = -1 if grade_of(b2) in sub.grades else 1
                    if b1 == b2:
                        c = blade_mul(b1, b1, metric)[0] * s1
                    else:
                        c = blade_mul(b1, b2, metric)[0] * s2 + blade_mul(b2, b1, metric)[0] * s1
                    if c != 0:
                        total += 1
        elif isinstance(sub, Product) and len(sub.factors) > 1:
            acc = cache[sub.factors[0]]
            for fac in sub.factors[1:]:
                nxt = acc * cache[fac]
                total += ordered_pairs(acc, cache[fac], nxt)
                acc = nxt
        elif isinstance(sub, Dual):
            total += len(cache[sub.child].nonzero_masks())
    return total
