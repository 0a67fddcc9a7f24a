"""Which grade pairs feed which output grades of a grade-negated self-product.

For an operand ``X`` split into grade parts ``X_r``, the self-product
``X * [[X]]_S`` collects the cross terms ``X_r [[X_s]] + X_s [[X_r]]``.  Each
part of grade ``g`` either survives or cancels.  Reversing ``X_r X_s`` flips
the grade-``g`` part by ``(-1)**((r(r-1) + s(s-1) - g(g-1)) / 2)``, which
predicts the cancellations.  The tables below also evaluate every cross term
on exact probes so the rule is checked rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .algebra import GradeSet, Metric, generic_probe, grade_of
from .errors import UnsupportedDimension
from .expressions import A, Node, evaluate

STATES = ("absent", "contribute", "cancel")


def reversal_sign(r: int, s: int, g: int) -> int:
    """Sign relating the grade-``g`` parts of ``X_s X_r`` and ``X_r X_s``."""
    return -1 if ((r * (r - 1) + s * (s - 1) - g * (g - 1)) // 2) % 2 else 1


def product_kind(r: int, s: int, g: int) -> str:
    if min(r, s) == 0:
        return "scalar"
    if g == r + s:
        return "outer"
    if g == abs(s - r):
        return "inner"
    return "middle"


def class_label(r: int, s: int, g: int) -> str:
    sym = {"outer": "^", "inner": ".", "middle": "*", "scalar": "*"}[product_kind(r, s, g)]
    return f"{r}{sym}{s}"


@dataclass(frozen=True)
class Cell:
    grade: int
    r: int
    s: int
    kind: str
    state: str
    predicted: str

    @property
    def label(self) -> str:
        return class_label(self.r, self.s, self.grade)


@dataclass(frozen=True)
class ContributionTable:
    dim: int
    negate: GradeSet
    operand_support: GradeSet
    output_support: GradeSet
    cells: tuple

    def cell(self, g: int, r: int, s: int) -> Cell:
        r, s = min(r, s), max(r, s)
        for c in self.cells:
            if (c.grade, c.r, c.s) == (g, r, s):
                return c
        raise KeyError((g, r, s))

    def rule_agrees(self) -> bool:
        return all(c.state == c.predicted for c in self.cells)

    def rows(self) -> dict[int, list[Cell]]:
        out: dict[int, list[Cell]] = {}
        for c in self.cells:
            out.setdefault(c.grade, []).append(c)
        return out

    def to_text(self) -> str:
        mark = {"contribute": "+", "cancel": "x", "absent": "."}
        lines = [
            f"dim {self.dim}  negate {{{self.negate.label()}}}  "
            f"operand {{{','.join(map(str, self.operand_support))}}}  "
            f"output {{{','.join(map(str, self.output_support))}}}"
        ]
        for g, cells in sorted(self.rows().items()):
            lines.append(f"g={g}: " + " ".join(f"{c.label}{mark[c.state]}" for c in cells))
        lines.append("legend: + contributes, x cancels, . grade absent from operand")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "negate": sorted(self.negate),
            "operand_support": sorted(self.operand_support),
            "output_support": sorted(self.output_support),
            "cells": [
                {"grade": c.grade, "r": c.r, "s": c.s, "class": c.label, "kind": c.kind, "state": c.state, "predicted": c.predicted}
                for c in self.cells
            ],
        }


def _grade_part(X, r: int):
    return X.grade(r)


def contribution_table(d: int, negate=(), operand: Node | None = None, probes: int = 2) -> ContributionTable:
    """Cell states of ``X * [[X]]_negate`` where ``X`` is ``operand`` (default ``A``)."""
    if not 1 <= d <= 5:
        raise UnsupportedDimension(f"contribution tables cover dimensions 1..5, got {d}")
    S = GradeSet(negate).restrict(d)
    node = A if operand is None else operand
    metric = Metric.euclidean(d)
    values = [evaluate(node, generic_probe(metric, seed)) for seed in range(probes)]
    support = GradeSet()
    out_support = GradeSet()
    for X in values:
        support = support | X.grades()
        out_support = out_support | (X * X.negate_grades(S)).grades()
    cells = []
    for r in range(d + 1):
        for s in range(r, d + 1):
            for g in range(s - r, min(r + s, 2 * d - r - s) + 1, 2):
                sig_r = -1 if r in S else 1
                sig_s = -1 if s in S else 1
                if r == s:
                    predicted = "contribute" if reversal_sign(r, s, g) == 1 else "cancel"
                else:
                    predicted = "contribute" if sig_s + sig_r * reversal_sign(r, s, g) else "cancel"
                if r not in support or s not in support:
                    state = predicted = "absent"
                else:
                    state = "cancel"
                    for X in values:
                        Xr, Xs = _grade_part(X, r), _grade_part(X, s)
                        term = Xr * Xs.negate_grades(S)
                        if r != s:
                            term = term + Xs * Xr.negate_grades(S)
                        if any(term.grade(g).coeffs):
                            state = "contribute"
                            break
                cells.append(Cell(g, r, s, product_kind(r, s, g), state, predicted))
    return ContributionTable(d, S, support, out_support, tuple(cells))


@dataclass(frozen=True)
class ClassCountTable:
    dim: int
    rows: dict

    def total(self, g: int) -> int:
        return sum(self.rows.get(g, {}).values())

    def totals(self) -> dict[int, int]:
        return {g: self.total(g) for g in sorted(self.rows)}

    def to_text(self) -> str:
        lines = [f"dim {self.dim}: unordered blade pairs per product class"]
        for g in sorted(self.rows):
            body = " ".join(f"{class_label(r, s, g)}:{n}" for (r, s), n in sorted(self.rows[g].items()))
            lines.append(f"g={g}: {body}  total {self.total(g)}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "rows": {str(g): {class_label(r, s, g): n for (r, s), n in sorted(cells.items())} for g, cells in sorted(self.rows.items())},
            "totals": {str(g): t for g, t in self.totals().items()},
        }


def class_count_table(d: int) -> ClassCountTable:
    """Unordered blade pairs ``{b1, b2}`` by grades ``(r, s)`` and product grade ``g``.

    A pair and its swap give the same cross term, so each is counted once,
    diagonal pairs included.  Row ``g`` then totals ``2**d * C(d, g) / 2`` for
    ``g > 0`` and ``2**d`` for ``g = 0``.
    """
    if not 3 <= d <= 5:
        raise UnsupportedDimension(f"class-count tables cover dimensions 3..5, got {d}")
    n = 1 << d
    rows: dict[int, dict] = {g: {} for g in range(d + 1)}
    for a in range(n):
        for b in range(a, n):
            r, s = sorted((grade_of(a), grade_of(b)))
            g = grade_of(a ^ b)
            rows[g][(r, s)] = rows[g].get((r, s), 0) + 1
    return ClassCountTable(d, rows)


def expected_row_total(d: int, g: int) -> int:
    return 1 << d if g == 0 else (1 << d) * comb(d, g) // 2
