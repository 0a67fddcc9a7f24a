from itertools import product
from math import comb

import pytest

from cliffdet import GradeSet, UnsupportedDimension
from cliffdet.expressions import A, f
from cliffdet.tables import (
    class_count_table,
    class_label,
    contribution_table,
    expected_row_total,
    product_kind,
    reversal_sign,
)


def test_reversal_sign_against_blade_reordering():
    # reversing a grade-k blade gives (-1)^(k(k-1)/2); the cell sign follows from rev(XY) = rev(Y) rev(X)
    rev = lambda k: -1 if (k * (k - 1) // 2) % 2 else 1
    for r, s in product(range(6), repeat=2):
        for g in range(abs(r - s), r + s + 1, 2):
            assert reversal_sign(r, s, g) == rev(r) * rev(s) * rev(g)


def test_product_kinds():
    assert product_kind(1, 2, 3) == "outer"
    assert product_kind(1, 2, 1) == "inner"
    assert product_kind(2, 2, 2) == "middle"
    assert product_kind(0, 3, 3) == "scalar"
    assert class_label(1, 2, 3) == "1^2"
    assert class_label(2, 3, 1) == "2.3"


@pytest.mark.parametrize("d", range(1, 6))
def test_rule_agrees_with_evaluation(d):
    assert contribution_table(d).rule_agrees()


def test_five_dimensional_cells():
    t = contribution_table(5)
    assert t.cell(0, 5, 5).state == "contribute"
    assert t.cell(3, 1, 4).state == "cancel"
    # plain self-product: a diagonal cell survives exactly when the reversal sign is +1
    for c in t.cells:
        if c.r == c.s:
            assert (c.state == "contribute") == (reversal_sign(c.r, c.s, c.grade) == 1)


def test_negated_tables():
    t = contribution_table(4, {1, 2})
    assert t.output_support == GradeSet([0, 3, 4])
    assert t.rule_agrees()
    t = contribution_table(5, {1, 4}, operand=f(A, "23"))
    assert t.operand_support == GradeSet([0, 1, 4, 5])
    assert t.output_support == GradeSet([0, 5])
    assert t.rule_agrees()
    assert all(c.state == "absent" for c in t.cells if c.r in (2, 3) or c.s in (2, 3))


def test_table_serialisation():
    t = contribution_table(3, {1})
    js = t.to_json()
    assert js["negate"] == [1] and len(js["cells"]) == len(t.cells)
    assert t.to_text().startswith("dim 3")


def _ordered_counts(d):
    """Ordered blade pairs by grades and product grade, folded to unordered pairs afterwards."""
    n = 1 << d
    ordered, diag = {}, {}
    for a in range(n):
        for b in range(n):
            key = (bin(a ^ b).count("1"), *sorted((bin(a).count("1"), bin(b).count("1"))))
            ordered[key] = ordered.get(key, 0) + 1
            if a == b:
                diag[key] = diag.get(key, 0) + 1
    return {k: (v + diag.get(k, 0)) // 2 for k, v in ordered.items()}


@pytest.mark.parametrize("d", [3, 4, 5])
def test_class_counts(d):
    t = class_count_table(d)
    folded = _ordered_counts(d)
    for g, cells in t.rows.items():
        for (r, s), n in cells.items():
            assert folded[(g, r, s)] == n
        assert t.total(g) == expected_row_total(d, g)
    assert sum(t.totals().values()) == (4**d + 2**d) // 2


def test_class_count_totals():
    assert class_count_table(5).totals() == {0: 32, 1: 80, 2: 160, 3: 160, 4: 80, 5: 16}
    assert class_count_table(3).totals() == {0: 8, 1: 12, 2: 12, 3: 4}
    assert expected_row_total(4, 2) == 16 * comb(4, 2) // 2


def test_dimension_limits():
    with pytest.raises(UnsupportedDimension):
        class_count_table(6)
    with pytest.raises(UnsupportedDimension):
        contribution_table(6)
