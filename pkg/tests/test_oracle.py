from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from cliffdet import Metric, Multivector, UnsupportedDimension, random_multivector
from cliffdet.inverse import determinant
from cliffdet.literal import parse_multivector as P
from cliffdet.oracle import exact_det, oracle_check, oracle_exponent, regular_rep, sign_census


def leibniz(M):
    """Permutation-sum determinant, independent of the elimination code."""
    n = len(M)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            term *= M[i][j]
        total += term
    return total


def test_exact_det_small_cases():
    assert exact_det(np.eye(3, dtype=int).astype(object)) == 1
    assert exact_det(np.array([[2, 0], [0, 3]], dtype=object)) == 6
    rng = np.random.default_rng(0)
    for n in range(1, 6):
        for _ in range(10):
            M = [[Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4))) for _ in range(n)] for _ in range(n)]
            arr = np.array(M, dtype=object)
            assert exact_det(arr) == leibniz(M)
            assert exact_det(arr.T) == exact_det(arr)


def test_exact_det_singular_and_pivoting():
    assert exact_det(np.array([[0, 1], [1, 0]], dtype=object)) == -1
    assert exact_det(np.array([[1, 2], [2, 4]], dtype=object)) == 0


def test_float_det():
    M = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert exact_det(M) == pytest.approx(-2.0)


def test_regular_rep_examples():
    m2 = Metric.euclidean(2)
    assert (regular_rep(Multivector.scalar(m2, 1)) == np.eye(4, dtype=int)).all()
    g = Fraction(-3)
    m1 = Metric([g])
    A = P("5+7e1", m1)
    L = regular_rep(A)
    assert L.tolist() == [[5, 7 * g], [7, 5]]
    assert exact_det(L) == 25 - 49 * g
    assert exact_det(regular_rep(P("1+2e1+3e2+4e12", m2))) == 16


@pytest.mark.parametrize("d", range(1, 6))
def test_homomorphism(d):
    rng = np.random.default_rng(d)
    m = Metric([1, -1, 0, 1, -1][:d])
    for _ in range(50 if d < 5 else 10):
        A, B = random_multivector(m, rng), random_multivector(m, rng)
        assert (regular_rep(A * B) == regular_rep(A).dot(regular_rep(B))).all()


def test_exponents():
    assert [oracle_exponent(d) for d in range(1, 6)] == [1, 2, 2, 4, 4]
    with pytest.raises(UnsupportedDimension):
        oracle_exponent(6)
    with pytest.raises(UnsupportedDimension):
        oracle_check(Multivector.scalar(Metric.euclidean(6), 1))


@pytest.mark.parametrize("d", range(1, 6))
def test_oracle_agrees(d):
    rng = np.random.default_rng(d)
    for metric in (Metric.euclidean(d), Metric.minkowski(d), Metric.degenerate(d)):
        for _ in range(10):
            r = oracle_check(random_multivector(metric, rng))
            assert r.passed, (metric, r)


def test_light_cone_and_unit():
    r = oracle_check(P("e1+e2", Metric([1, -1])))
    assert r.clifford_det == 0 and r.matrix_det == 0 and r.passed
    r = oracle_check(Multivector.scalar(Metric.euclidean(5), 1))
    assert r.clifford_det == 1 and r.matrix_det == 1


def test_float_oracle():
    rng = np.random.default_rng(1)
    m = Metric.minkowski(4)
    for _ in range(10):
        assert oracle_check(random_multivector(m, rng, "float")).passed


def test_sign_census_reports():
    out = sign_census(Metric.euclidean(3), 20, seed=1)
    assert out["failures"] == 0
    assert sum(out["signs"].values()) == 20
    assert determinant(Multivector.scalar(Metric.euclidean(3), 2)) == 16
