from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliffdet import (
    DimensionZero,
    GradeOutOfRange,
    GradeSet,
    Metric,
    MetricMismatch,
    Multivector,
    UnsupportedDimension,
    blade_mul,
    dual_left,
    geometric_product,
    grade_negate,
    grade_project,
    grade_support,
    involution,
    linear_combine,
    pseudoscalar_square,
    random_multivector,
)
from cliffdet.algebra import FLOAT, RATIONAL, conjugate_grades, inversion_grades, reverse_grades
from cliffdet.inverse import gn_self_product
from cliffdet.literal import parse_multivector as P


def bubble_sign(a: int, b: int, metric: Metric):
    """Naive oracle: concatenate index lists, bubble sort, contract equal neighbours."""
    idx = [i for i in range(metric.dim) if a >> i & 1] + [i for i in range(metric.dim) if b >> i & 1]
    sign = 1
    changed = True
    while changed:
        changed = False
        for k in range(len(idx) - 1):
            if idx[k] > idx[k + 1]:
                idx[k], idx[k + 1] = idx[k + 1], idx[k]
                sign = -sign
                changed = True
    scale = sign
    out = []
    k = 0
    while k < len(idx):
        if k + 1 < len(idx) and idx[k] == idx[k + 1]:
            scale *= metric.entries[idx[k]]
            k += 2
        else:
            out.append(idx[k])
            k += 1
    return scale, sum(1 << i for i in out)


@pytest.mark.parametrize("d", range(0, 6))
def test_blade_mul_matches_bubble_sort(d):
    metric = Metric([1, -1, 0, 2, -3][:d])
    for a, b in product(range(1 << d), repeat=2):
        assert blade_mul(a, b, metric) == bubble_sign(a, b, metric)


def test_blade_mul_examples():
    e = Metric.euclidean(3)
    assert blade_mul(0b1, 0b1, e) == (1, 0)
    assert blade_mul(0b011, 0b110, e) == (1, 0b101)  # e12 e23 = e13
    assert blade_mul(0b10, 0b01, Metric([5, 7])) == (-1, 0b11)


@pytest.mark.parametrize("d", range(1, 6))
def test_blade_associativity(d):
    metric = Metric([1, -1, 0, 2, -1][:d])
    n = 1 << d
    for a, b, c in product(range(n), repeat=3):
        s1, ab = blade_mul(a, b, metric)
        s2, abc = blade_mul(ab, c, metric)
        t1, bc = blade_mul(b, c, metric)
        t2, abc2 = blade_mul(a, bc, metric)
        assert abc == abc2 and s1 * s2 == t1 * t2


def test_product_examples():
    e2 = Metric.euclidean(2)
    assert P("2+3e12", e2) * P("-2+3e12", e2) == Multivector.scalar(e2, -13)
    e5 = Metric.euclidean(5)
    X = P("e1+e1234", e5)
    assert X * X == Multivector.scalar(e5, 2)
    A = P("1+2e1-3e12", e2)
    assert Multivector.scalar(e2, 1) * A == A


def test_metric_mismatch():
    with pytest.raises(MetricMismatch):
        geometric_product(Multivector.scalar(Metric.euclidean(2), 1), Multivector.scalar(Metric([1, -1]), 1))
    with pytest.raises(MetricMismatch):
        linear_combine(1, Multivector.scalar(Metric.euclidean(1), 1), 1, Multivector.scalar(Metric.euclidean(2), 1))


def test_linear_combine():
    m = Metric.euclidean(2)
    A = P("1+e1+e12", m)
    B = P("3e2", m)
    assert linear_combine(1, A, 0, B) == A
    assert linear_combine(1, A, -1, A) == Multivector.zero(m)
    assert linear_combine(2, P("e1", m), 3, P("e2", m)) == P("2e1+3e2", m)


def test_grade_project_and_support():
    m = Metric.euclidean(3)
    A = P("3+2e1+4e123", m)
    assert grade_project(A, 1) == P("2e1", m)
    assert grade_project(A, 2) == Multivector.zero(m)
    assert grade_support(A) == GradeSet([0, 1, 3])
    assert grade_support(Multivector.zero(m)) == GradeSet()
    with pytest.raises(GradeOutOfRange):
        grade_project(A, 4)


def test_grade_negate_examples():
    m = Metric.euclidean(3)
    A = P("3+2e1+4e123", m)
    assert grade_negate(A, {2, 3}) == P("3+2e1-4e123", m)
    assert grade_negate(A, ()) == A


def test_involution_grade_sets():
    assert reverse_grades(6) == GradeSet([2, 3, 6])
    assert inversion_grades(6) == GradeSet([1, 3, 5])
    assert conjugate_grades(6) == GradeSet([1, 2, 5, 6])
    m = Metric.euclidean(2)
    assert involution(P("e12", m), "reverse") == P("-e12", m)
    assert involution(P("e1", m), "inversion") == P("-e1", m)


def test_pseudoscalar_squares():
    # (-1)**(d(d-1)/2) times the metric product; counted by hand from the reordering
    expected = {1: 1, 2: -1, 3: -1, 4: 1, 5: 1}
    for d, sign in expected.items():
        assert pseudoscalar_square(Metric.euclidean(d)) == sign
    assert pseudoscalar_square(Metric([1, 0])) == 0
    with pytest.raises(DimensionZero):
        pseudoscalar_square(Metric(()))
    with pytest.raises(DimensionZero):
        dual_left(Multivector.scalar(Metric(()), 1))


def test_dual_left_examples():
    m3 = Metric.euclidean(3)
    assert dual_left(Multivector.scalar(m3, 1)) == P("e123", m3)
    m4 = Metric.euclidean(4)
    assert P("e1234", m4) * P("e1", m4) == -(P("e1", m4) * P("e1234", m4))


def test_unsupported_dimension():
    with pytest.raises(UnsupportedDimension):
        Metric.euclidean(7)


# ---------------------------------------------------------------------------
# random-sample properties

METRICS = [Metric([1, -1, 0, 1, -1][:d]) for d in range(1, 6)]


@pytest.mark.parametrize("metric", METRICS, ids=lambda m: f"d{m.dim}")
def test_involution_product_rules(metric):
    rng = np.random.default_rng(metric.dim)
    for _ in range(100):
        A = random_multivector(metric, rng)
        B = random_multivector(metric, rng)
        AB = A * B
        assert AB.reverse() == B.reverse() * A.reverse()
        assert AB.inversion() == A.inversion() * B.inversion()
        assert AB.conjugate() == B.conjugate() * A.conjugate()


@pytest.mark.parametrize("d", [2, 4])
def test_even_dual_commutation(d):
    m = Metric.euclidean(d)
    rng = np.random.default_rng(d)
    I = P("e" + "".join(str(i) for i in range(1, d + 1)), m)
    odd = GradeSet(range(1, d + 1, 2))
    for _ in range(50):
        A = random_multivector(m, rng)
        assert dual_left(A) == grade_negate(A, odd) * I


def test_double_dual_in_odd_dimension():
    m = Metric.euclidean(3)
    rng = np.random.default_rng(3)
    for _ in range(50):
        A = random_multivector(m, rng)
        assert dual_left(dual_left(A)) == A * pseudoscalar_square(m)


def test_three_dimensional_involution_combinations():
    m = Metric.euclidean(3)
    rng = np.random.default_rng(33)
    for _ in range(50):
        A = random_multivector(m, rng)
        n, r, c = A.inversion(), A.reverse(), A.conjugate()
        assert grade_negate(A, {1}) == (A + n - r + c) / 2
        assert grade_negate(A, {2}) == (A - n + r + c) / 2
        assert grade_negate(A, {3}) == (A + n + r - c) / 2


def test_complement_negation_identity():
    m = Metric.euclidean(5)
    rng = np.random.default_rng(5)
    for _ in range(20):
        A = random_multivector(m, rng)
        assert grade_negate(A, {1, 2, 4}) == -grade_negate(A, {0, 3, 5})


@pytest.mark.parametrize(
    "d,grades,support",
    [(4, {1, 2}, {0, 3, 4}), (5, {2, 3}, {0, 1, 4, 5}), (6, {1, 2, 5, 6}, {0, 3, 4})],
)
def test_self_product_support(d, grades, support):
    m = Metric.euclidean(d)
    rng = np.random.default_rng(d)
    seen = GradeSet()
    for _ in range(20):
        S = grade_support(gn_self_product(random_multivector(m, rng), grades))
        assert S <= GradeSet(support)
        seen = seen | S
    assert seen == GradeSet(support)


def test_float_and_complex_rings():
    m = Metric([1.0, -1.0])
    A = P("1.5+2e1", m, "float")
    assert A.ring is FLOAT
    B = A * A
    assert B.isclose(P("6.25+6e1", m, "float"))
    C = P("(1+2j)+e12", Metric.euclidean(2), "complex")
    assert (C * C).isclose(P("(-4+4j)+(2+4j)e12", Metric.euclidean(2), "complex"))


def test_rational_metric_entries():
    m = Metric([Fraction(1, 2), 3])
    assert P("e1", m) * P("e1", m) == Multivector.scalar(m, Fraction(1, 2))
    assert m.ring is RATIONAL


# ---------------------------------------------------------------------------
# hypothesis

coeffs = st.lists(st.integers(-5, 5), min_size=8, max_size=8)
metric3 = st.lists(st.sampled_from([-1, 0, 1, 2]), min_size=3, max_size=3).map(Metric)


@settings(max_examples=60, deadline=None)
@given(metric3, coeffs, coeffs, coeffs)
def test_associative_and_distributive(metric, a, b, c):
    A, B, C = (Multivector(metric, x) for x in (a, b, c))
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert (A + B) * C == A * C + B * C


@settings(max_examples=60, deadline=None)
@given(coeffs, st.integers(0, 15), st.integers(0, 15))
def test_grade_negation_group_law(a, s1, s2):
    A = Multivector(Metric.euclidean(3), a)
    S1, S2 = GradeSet.from_mask(s1), GradeSet.from_mask(s2)
    assert grade_negate(grade_negate(A, S1), S2) == grade_negate(A, S1 ^ S2)
    assert grade_negate(grade_negate(A, S1), S1) == A


@settings(max_examples=40, deadline=None)
@given(coeffs)
def test_projections_reconstruct(a):
    A = Multivector(Metric.euclidean(3), a)
    total = Multivector.zero(A.metric)
    for r in range(4):
        P_r = grade_project(A, r)
        assert grade_project(P_r, r) == P_r
        total = total + P_r
    assert total == A


def test_gradeset_operations():
    assert GradeSet("12") ^ GradeSet("23") == GradeSet([1, 3])
    assert GradeSet([1, 5]).restrict(3) == GradeSet([1])
    assert GradeSet([0, 3]).complement(5) == GradeSet([1, 2, 4, 5])
    assert GradeSet([1, 2]).label() == "12"
    assert GradeSet() == set()
