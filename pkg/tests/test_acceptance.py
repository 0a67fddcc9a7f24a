"""Acceptance suite: one recorded PASS/FAIL line per criterion.

Each test computes its verdict, records it through ``conftest.record`` and then
asserts, so the summary printed at the end of the run lists every criterion
even when one of them fails.
"""

import time

import numpy as np
import pytest

from cliffdet import GradeSet, Metric, Multivector, random_multivector
from cliffdet.algebra import grade_support, pseudoscalar, pseudoscalar_square
from cliffdet.catalog import expression_catalog
from cliffdet.expressions import A, chain, evaluate, f
from cliffdet.group import algebraic_partition, cayley_table, cosets, empirical_partition, normal_subgroup
from cliffdet.inverse import adjugate, determinant, inverse
from cliffdet.oracle import oracle_check
from cliffdet.search import search_nested, search_plain_products
from cliffdet.symbolic import coefficient_of, expand, expand_determinant, term_count
from cliffdet.tables import class_count_table

from .conftest import metrics_for, record
from .test_group import PUBLISHED_ROWS

# budgets and sample sizes
INVERSE_SAMPLES, INVERSE_BUDGET = 1000, 120.0
ORACLE_SAMPLES, ORACLE_BUDGET = 200, 300.0
TERM_BUDGET = 10.0
FIVE_D_PROBES = 200
SUPPORT_SAMPLES = 100
POSITIVITY_SAMPLES = 10_000
PROPERTY_SAMPLES = 100
SIX_D_BUDGET = 30 * 60.0
FLOAT_RTOL = 1e-9

TERM_COUNTS = {1: (2, 2), 2: (4, 2), 3: (42, 4), 4: (196, 4)}
COEFFICIENTS = {"a0^4": 1, "a2 a3 a12 a13": -8, "a0 a1 a23 a123": -8, "a0^2 a123^2": 2}
# sign column of the pseudoscalar-square table, d = 0..5
PSEUDO_SIGNS = {0: 1, 1: 1, 2: -1, 3: -1, 4: 1, 5: -1}
CLASS_TOTALS_5 = {0: 32, 1: 80, 2: 160, 3: 160, 4: 80, 5: 16}
ORACLE_EXPONENTS = {1: 1, 2: 2, 3: 2, 4: 4, 5: 4}


def test_criterion_1_inverse_correctness():
    rng = np.random.default_rng(1)
    failures, checked = [], 0
    start = time.perf_counter()
    for d in range(6):
        for metric in metrics_for(d):
            one = Multivector.scalar(metric, 1)
            for _ in range(INVERSE_SAMPLES):
                X = random_multivector(metric, rng)
                if determinant(X) == 0:
                    continue
                Y = inverse(X)
                checked += 1
                if X * Y != one or Y * X != one:
                    failures.append((metric, X))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < INVERSE_BUDGET
    record(1, ok, f"{checked} invertible samples, {len(failures)} failures, {elapsed:.1f}s")
    assert not failures
    assert elapsed < INVERSE_BUDGET


def test_criterion_2_matrix_oracle():
    rng = np.random.default_rng(2)
    failures, checked = 0, 0
    start = time.perf_counter()
    for d in range(1, 6):
        for metric in (Metric.euclidean(d), Metric.minkowski(d)):
            for _ in range(ORACLE_SAMPLES):
                r = oracle_check(random_multivector(metric, rng))
                checked += 1
                exact = abs(r.matrix_det) == abs(r.clifford_det) ** ORACLE_EXPONENTS[d]
                failures += not (r.passed and exact and r.exponent == ORACLE_EXPONENTS[d])
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < ORACLE_BUDGET
    record(2, ok, f"{checked} samples, {failures} failures, {elapsed:.1f}s")
    assert failures == 0
    assert elapsed < ORACLE_BUDGET


def test_criterion_3_term_counts():
    start = time.perf_counter()
    got = {d: term_count(expand_determinant(d)) for d in TERM_COUNTS}
    elapsed = time.perf_counter() - start
    ok = got == TERM_COUNTS and elapsed < TERM_BUDGET
    record(3, ok, f"{got}, {elapsed:.2f}s")
    assert got == TERM_COUNTS
    assert elapsed < TERM_BUDGET


def test_criterion_4_printed_coefficients():
    p = expand_determinant(3)
    got = {m: coefficient_of(p, m, 3) for m in COEFFICIENTS}
    record(4, got == COEFFICIENTS, str(got))
    assert got == COEFFICIENTS


def test_criterion_5_expression_equivalence():
    bad = []
    for d in range(5):
        canon = expand_determinant(d)
        for e in expression_catalog(d):
            p = expand(e, d)
            if p != canon and p != -canon:
                bad.append((d, e.id))
    rng = np.random.default_rng(5)
    metric = Metric.euclidean(5)
    probes = [random_multivector(metric, rng, max_den=3) for _ in range(FIVE_D_PROBES)]
    refs = [determinant(X) for X in probes]
    five = expression_catalog(5)
    for e in five:
        signs = set()
        for X, ref in zip(probes, refs):
            value = evaluate(e.root, X)
            if not value.grades() <= GradeSet([0]):
                signs.add(None)
            elif ref:
                signs.add(value.scalar_part / ref)
        if not (len(signs) == 1 and signs <= {1, -1}):
            bad.append((5, e.id))
    record(5, not bad, f"{sum(len(expression_catalog(d)) for d in range(5))} forms symbolic, {len(five)} 5D forms on {FIVE_D_PROBES} probes, mismatches {bad}")
    assert not bad


@pytest.fixture(scope="module")
def searches():
    out = {}
    out["p3"] = search_plain_products(3, 4)
    out["p4"] = search_plain_products(4, 4)
    start = time.perf_counter()
    out["n6"] = search_nested(6, 3)
    out["n6_time"] = time.perf_counter() - start
    out["n5"] = search_nested(5, 3)
    return out


def test_criterion_6_search_reproduction(searches):
    p3, p4, n6, n5 = searches["p3"], searches["p4"], searches["n6"], searches["n5"]
    a = len(p3.scalar()) == 32 and len(p3.det_valued()) == 16
    b = len(p4.det_valued()) == 0
    c = n6.summary["candidates"] == 64**3 and len(n6.scalar()) == 0 and searches["n6_time"] < SIX_D_BUDGET
    chains = [("23", "14", "5"), ("23", "15", "34"), ("23", "45", "13"), ("125", "3", "14"), ("135", "23", "14")]
    found = [n5.find(*c) for c in chains]
    d = all(v is not None and v.det_valued for v in found)
    detail = (
        f"(a) {len(p3.scalar())} scalar/{len(p3.det_valued())} det; (b) {len(p4.det_valued())} det; "
        f"(c) {len(n6.scalar())} of {n6.summary['candidates']} in {searches['n6_time']:.0f}s; "
        f"(d) {sum(v is not None for v in found)}/5 chains among {len(n5.scalar())} hits"
    )
    record(6, a and b and c and d, detail)
    assert a and b and c and d


def test_criterion_7_quotient_groups():
    counts = {d: len(cosets(d)) for d in (3, 4, 5, 6)}
    rows_ok = all([[S.label() or "Id" for S in row] for row in cosets(d).cosets] == PUBLISHED_ROWS[d] for d in PUBLISHED_ROWS)
    normal_ok = all([S.label() or "Id" for S in normal_subgroup(d)] == PUBLISHED_ROWS[d][0] for d in PUBLISHED_ROWS)
    types = {d: cayley_table(d).isomorphism_type() for d in (3, 4, 5, 6)}
    partition_ok = all(empirical_partition(d, probes=3) == algebraic_partition(d) for d in range(2, 6))
    ok = (
        counts == {3: 2, 4: 4, 5: 8, 6: 16}
        and rows_ok
        and normal_ok
        and types == {3: "C2", 4: "Klein four", 5: "C2^3", 6: "C2^4"}
        and partition_ok
    )
    record(7, ok, f"cosets {counts}, types {types}, rows {rows_ok}, partition {partition_ok}")
    assert ok


SUPPORT_CASES = [
    (4, f(A, "12"), {0, 3, 4}),
    (5, f(A, "23"), {0, 1, 4, 5}),
    (5, chain("23", "14"), {0, 5}),
    (6, f(A, "1256"), {0, 3, 4}),
]


def test_criterion_8_grade_support():
    rng = np.random.default_rng(8)
    results = []
    for d, node, bound in SUPPORT_CASES:
        metric = Metric.euclidean(d)
        within, equal = True, False
        for _ in range(SUPPORT_SAMPLES):
            support = grade_support(evaluate(node, random_multivector(metric, rng)))
            within &= support <= GradeSet(bound)
            equal |= support == GradeSet(bound)
        results.append(within and equal)
    record(8, all(results), f"cases within bound with equality seen: {results}")
    assert all(results)


def _pseudo_checks():
    """(d, signature name, computed, from the product, from the table) for d = 0..5."""
    rows = []
    for d in range(6):
        for name, metric in (("euclidean", Metric.euclidean(d)), ("mixed", Metric.minkowski(d))):
            if d == 0:
                computed = product = 1
            else:
                computed = pseudoscalar_square(metric)
                I = pseudoscalar(metric)
                product = (I * I).scalar_part
            table = PSEUDO_SIGNS[d]
            for g in metric.entries:
                table *= g
            rows.append((d, name, computed, product, table))
    return rows


def _positivity():
    out = {}
    for d in (3, 5):
        rng = np.random.default_rng(90 + d)
        metric = Metric.euclidean(d)
        order = 1 << (d + 1) // 2 if d else 1
        worst = 0
        for _ in range(POSITIVITY_SAMPLES):
            X = random_multivector(metric, rng, "float")
            det = determinant(X, check=False)
            floor = -FLOAT_RTOL * X.scale() ** order
            worst += int(det < floor)
        out[d] = worst
    return out


def test_criterion_9_sign_and_positivity():
    negatives = _positivity()
    rows = _pseudo_checks()
    consistent = all(c == p for _, _, c, p, _ in rows)
    table_miss = [(d, name) for d, name, c, _, t in rows if c != t]
    ok = not any(negatives.values()) and consistent and not table_miss
    record(
        9,
        ok,
        f"negative dets {negatives}; pseudoscalar squares agree with products: {consistent}; "
        f"table mismatches {table_miss}",
    )
    assert not any(negatives.values())
    assert consistent
    # every table entry other than the five-dimensional one matches
    assert all(d == 5 for d, _ in table_miss)


@pytest.mark.xfail(strict=True, reason="the printed 5D pseudoscalar sign is -1; the product rule gives +1")
def test_criterion_9_five_dimensional_table_entry():
    for d, _, computed, _, table in _pseudo_checks():
        if d == 5:
            assert computed == table


def test_criterion_10_property_identities():
    failures = []
    for d in range(1, 6):
        rng = np.random.default_rng(100 + d)
        metric = Metric.euclidean(d)
        dual_sign = -1 if d == 1 else 1
        for _ in range(PROPERTY_SAMPLES):
            X, Y = random_multivector(metric, rng), random_multivector(metric, rng)
            checks = [
                determinant(X * Y) == determinant(X) * determinant(Y),
                adjugate(X * Y) == adjugate(Y) * adjugate(X),
                determinant(X.reverse()) == determinant(X),
                determinant(X.dual()) == dual_sign * determinant(X),
            ]
            if determinant(X):
                checks.append(inverse(inverse(X)) == X)
            if not all(checks):
                failures.append((d, checks))
    record(10, not failures, f"{5 * PROPERTY_SAMPLES} pairs, {len(failures)} failures")
    assert not failures


def test_criterion_11_class_counts():
    got = class_count_table(5).totals()
    record(11, got == CLASS_TOTALS_5, str(got))
    assert got == CLASS_TOTALS_5
