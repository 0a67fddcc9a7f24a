
import numpy as np
import pytest

from cliffdet import Metric, NonScalarSymbolic, UnsupportedDimension, random_multivector
from cliffdet.catalog import expression_catalog
from cliffdet.expressions import A, f
from cliffdet.inverse import determinant
from cliffdet.symbolic import (
    Polynomial,
    adjugate_term_counts,
    coefficient_of,
    expand,
    expand_determinant,
    flint_available,
    generic_multivector,
    nondet_delta,
    pack,
    parse_monomial,
    term_count,
    to_native,
    unpack,
)

from .conftest import stretch_enabled


def test_pack_round_trip():
    exps = {0: 2, 5: 1, 31: 3}
    assert unpack(pack(exps)) == exps
    assert pack({}) == 0


def test_polynomial_arithmetic():
    x, y = Polynomial.variable(0), Polynomial.variable(1)
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert term_count(p) == (2, 2)
    assert term_count(Polynomial()) == (0, 0)
    assert p.evaluate({0: 3, 1: 2}) == 5
    assert (x * 2 - x - x) == 0


def test_generic_multivector():
    X = generic_multivector(1)
    assert [str(c.to_text(1)) for c in X.coeffs] == ["a0", "a1"]
    assert len(generic_multivector(4).coeffs) == 16
    with pytest.raises(UnsupportedDimension):
        generic_multivector(6)


def test_two_dimensional_expansion():
    p = expand_determinant(2)
    assert p.to_text(2) == "a0^2 - a1^2 - a2^2 + a12^2"


def test_two_dimensional_symbolic_metric():
    p = expand_determinant(2, symbolic_metric=True)
    text = p.to_text(2)
    for piece in ("a0^2", "g11", "g22"):
        assert piece in text
    # substituting the Euclidean metric recovers the numeric expansion
    assert len(p) == 4


@pytest.mark.parametrize("d,expected", [(0, (1, 1)), (1, (2, 2)), (2, (4, 2)), (3, (42, 4)), (4, (196, 4))])
def test_term_counts(d, expected):
    assert term_count(expand_determinant(d)) == expected


def test_three_dimensional_coefficients():
    p = expand_determinant(3)
    assert coefficient_of(p, "a0^4", 3) == 1
    assert coefficient_of(p, "a2 a3 a12 a13", 3) == -8
    assert coefficient_of(p, "a0*a1*a23*a123", 3) == -8
    assert coefficient_of(p, "a0^2 a123^2", 3) == 2
    assert coefficient_of(p, "a1^3 a2", 3) == 0


def test_parse_monomial():
    assert parse_monomial("a0^2 a12", 2) == {0: 2, 3: 1}


@pytest.mark.parametrize("d", range(1, 5))
def test_symbolic_matches_numeric(d):
    p = expand_determinant(d)
    rng = np.random.default_rng(d)
    m = Metric.euclidean(d)
    for _ in range(20):
        X = random_multivector(m, rng, max_den=3)
        assert p.evaluate(list(X.coeffs)) == determinant(X)


@pytest.mark.parametrize("d", range(1, 5))
def test_catalog_forms_expand_identically(d):
    canon = expand_determinant(d)
    for e in expression_catalog(d):
        p = expand(e, d)
        assert p == canon or p == -canon, e.id


def test_non_scalar_expansion_raises():
    from cliffdet.catalog import DetExpression

    with pytest.raises(NonScalarSymbolic):
        expand(DetExpression("half", f(A, "12"), frozenset({3})), 3)
    full = expand(f(A, "12"), 4, mode="full")
    assert full.support() == {0, 3, 4}


def test_alternate_three_dimensional_form_expands_to_canonical():
    assert expand("det3c", 3) == expand_determinant(3)


def test_nondet_delta_three_dimensions():
    # only monomials with an odd number of grade-1 factors change sign
    rep = nondet_delta(3)
    assert rep.count == 3
    assert set(rep.monomials) == {"a0*a1*a23*a123", "a0*a2*a13*a123", "a0*a12*a3*a123"}


@pytest.mark.parametrize(
    "first,second,count",
    [((), (1,), 24), ((), (4,), 15), ((), (1, 4), 15), ((1,), (4,), 15), ((1,), (1, 4), 15), ((4,), (1, 4), 24)],
)
def test_nondet_delta_four_dimensions(first, second, count):
    assert nondet_delta(4, first, second).count == count


def test_adjugate_counts_per_component():
    three = adjugate_term_counts(3)
    assert three.max_component == 11 and three.degree == 3
    four = adjugate_term_counts(4)
    assert four.max_component == 31 and four.degree == 3


@pytest.mark.skipif(not flint_available(), reason="python-flint not installed")
@pytest.mark.parametrize("d", range(0, 4))
def test_flint_backend_agrees(d):
    assert to_native(expand_determinant(d, backend="flint")) == expand_determinant(d)


def test_symbolic_metric_limited_to_two_dimensions():
    with pytest.raises(UnsupportedDimension):
        generic_multivector(3, symbolic_metric=True)


@pytest.mark.slow
@pytest.mark.skipif(not stretch_enabled(), reason="set CLIFF_STRETCH=1 for the five-dimensional expansion")
def test_five_dimensional_term_count():
    assert term_count(expand_determinant(5, backend="auto")) == (698340, 8)
