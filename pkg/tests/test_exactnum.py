from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chi2axioms.errors import Chi2Error, DimensionMismatch, IndexOutOfRange, NegativeEntry, NotIntegral, ZeroSize
from chi2axioms.exactnum import (
    CountVector,
    IntVector,
    ReferencePoint,
    SimplexPoint,
    format_rational,
    lcm_denominators,
    normalize,
    parse_rational,
    reference,
    scaled_reference,
    uniform,
    unit_vector,
)

STAIR3 = reference("1/6", "1/3", "1/2")

rationals = st.fractions(max_denominator=10**6).filter(lambda q: abs(q) < 10**9)
counts = st.lists(st.integers(0, 30), min_size=2, max_size=5).filter(lambda c: sum(c) > 0)


def test_normalize_examples():
    assert normalize(CountVector((1, 2, 3))).coords == (F(1, 6), F(1, 3), F(1, 2))
    assert normalize(CountVector((2, 0))).coords == (F(1), F(0))
    with pytest.raises(ZeroSize):
        normalize(CountVector((0, 0, 0)))


@pytest.mark.parametrize(
    "pi, expected",
    [(reference("1/2", "1/2"), 2), (STAIR3, 6), (reference("1/4", "1/4", "1/2"), 4)],
)
def test_lcm_denominators(pi, expected):
    assert lcm_denominators(pi) == expected


def test_unit_vector():
    assert unit_vector(3, 1).counts == (1, 0, 0)
    assert unit_vector(2, 2).counts == (0, 1)
    with pytest.raises(IndexOutOfRange):
        unit_vector(3, 4)
    with pytest.raises(IndexOutOfRange):
        unit_vector(3, 0)


def test_scaled_reference():
    assert scaled_reference(reference("1/2", "1/2"), 2).entries == (1, 1)
    assert scaled_reference(STAIR3, 6).entries == (1, 2, 3)
    with pytest.raises(NotIntegral):
        scaled_reference(STAIR3, 4)


@pytest.mark.parametrize("mult", [1, 2, 3, 7])
def test_scaled_reference_sums_to_k(mult):
    for pi in (STAIR3, uniform(4), reference("1/10", "2/10", "3/10", "4/10")):
        k = mult * lcm_denominators(pi)
        assert sum(scaled_reference(pi, k)) == k


def test_reference_point_validation():
    with pytest.raises(Chi2Error):
        reference("0", "1")
    with pytest.raises(Chi2Error):
        reference("1/2", "1/3")
    with pytest.raises(DimensionMismatch):
        reference("1")


def test_simplex_point_allows_zero_but_not_negative():
    SimplexPoint((F(0), F(1)))
    with pytest.raises(Chi2Error):
        SimplexPoint((F(-1, 2), F(3, 2)))


def test_count_vector_rejects_negatives_and_short():
    with pytest.raises(NegativeEntry):
        CountVector((1, -1))
    with pytest.raises(DimensionMismatch):
        CountVector((3,))


def test_int_vector_arithmetic():
    v = scaled_reference(STAIR3, 6) + unit_vector(3, 1) - unit_vector(3, 2)
    assert v.entries == (2, 1, 3)
    assert v.to_counts() == CountVector((2, 1, 3))
    with pytest.raises(NegativeEntry):
        (IntVector((0, 1)) - unit_vector(2, 1)).to_counts()


def test_simplex_to_counts_scale():
    p = SimplexPoint((F(1, 4), F(3, 4)))
    assert p.to_counts().counts == (1, 3)
    assert p.to_counts(8).counts == (2, 6)
    with pytest.raises(NotIntegral):
        p.to_counts(6)


@pytest.mark.parametrize("text, value", [("16/3", F(16, 3)), ("2", F(2)), ("-4/6", F(-2, 3)), (" 7/1 ", F(7))])
def test_rational_text_form(text, value):
    assert parse_rational(text) == value
    assert parse_rational(format_rational(value)) == value


def test_rational_text_form_rejects_garbage():
    for bad in ("1/0", "abc", "1.5"):
        with pytest.raises(Chi2Error):
            parse_rational(bad)


@given(rationals, rationals)
def test_rational_round_trips(a, b):
    assert (a + b) - b == a
    if b != 0:
        assert (a * b) / b == a
    assert parse_rational(format_rational(a)) == a


@given(counts, st.integers(1, 20))
def test_normalize_is_scale_free(c, lam):
    x = CountVector(tuple(c))
    assert normalize(lam * x) == normalize(x)


def test_types_are_hashable_values():
    assert {uniform(3), uniform(3), STAIR3} == {uniform(3), STAIR3}
    assert ReferencePoint(("1/3", "1/3", "1/3")) == uniform(3)
