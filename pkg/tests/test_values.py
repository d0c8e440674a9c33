import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qumod.errors import BackendMismatch
from qumod.values import ONE, ZERO, UnitValue


def test_exact_construction_and_accessors():
    v = UnitValue.exact(3, 5)
    assert v.is_exact
    assert v.backend == "exact"
    assert v.as_fraction() == Fraction(3, 5)
    assert v.numerator == 3 and v.denominator == 5
    assert v.as_float() == 0.6


def test_float_construction():
    v = UnitValue.from_float(0.25)
    assert not v.is_exact
    assert v.backend == "float"
    assert v.as_float() == 0.25
    with pytest.raises(BackendMismatch):
        v.as_fraction()


def test_range_validation():
    with pytest.raises(ValueError):
        UnitValue.exact(3, 2)
    with pytest.raises(ValueError):
        UnitValue.exact(-1, 4)
    with pytest.raises(ValueError):
        UnitValue.from_float(1.0000001)
    with pytest.raises(ValueError):
        UnitValue.from_float(float("nan"))


def test_parse():
    assert UnitValue.parse("2/3").as_fraction() == Fraction(2, 3)
    assert UnitValue.parse("0.25").as_fraction() == Fraction(1, 4)
    assert UnitValue.parse("1").as_fraction() == 1
    assert UnitValue.parse(" 3/8 ").as_fraction() == Fraction(3, 8)


def test_exact_comparisons_are_exact():
    a = UnitValue.exact(1, 3)
    b = UnitValue.exact(33333333333333, 100000000000000)
    assert a != b
    assert b < a
    assert not a <= b


def test_float_comparisons_use_tolerance():
    a = UnitValue.from_float(0.1 + 0.2)
    b = UnitValue.from_float(0.3)
    assert a == b
    assert a <= b and b <= a
    assert not a < b and not b < a


def test_mixed_comparison_coerces_to_float():
    a = UnitValue.exact(3, 10)
    b = UnitValue.from_float(0.1 + 0.2)
    assert a == b


def test_hash_exact_only():
    s = {UnitValue.exact(1, 2), UnitValue.exact(2, 4)}
    assert len(s) == 1
    with pytest.raises(TypeError):
        hash(UnitValue.from_float(0.5))


def test_str():
    assert str(UnitValue.exact(1, 2)) == "1/2"
    assert str(UnitValue.exact(1)) == "1"
    assert str(ZERO) == "0"
    assert ONE.as_fraction() == 1


@given(st.integers(0, 1000), st.integers(1, 1000))
def test_exact_roundtrip(n, d):
    if n > d:
        n, d = d, n
    v = UnitValue.exact(n, d)
    assert v.as_fraction() == Fraction(n, d)
    assert UnitValue.parse(str(v)) == v


@given(st.floats(0, 1, allow_nan=False))
def test_float_order_total_on_grid(x):
    v = UnitValue.from_float(x)
    assert ZERO <= v <= ONE
