import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from metric_cont.errors import ModeError, NegativeWeight, ParseError
from metric_cont.numeric import EXACT, FLOAT, UNREACHABLE, NumericMode, Radical, exact_root, format_value, make_root, make_weight


def test_make_weight_rejects_negative():
    with pytest.raises(NegativeWeight):
        make_weight(-1)
    with pytest.raises(NegativeWeight):
        make_weight(Fraction(-1, 3), EXACT)
    assert make_weight(0) == 0.0


def test_parse_lexemes():
    assert EXACT.parse("1/3") == Fraction(1, 3)
    assert EXACT.parse("2.5") == Fraction(5, 2)
    assert isinstance(EXACT.parse("4"), int)
    assert FLOAT.parse("2.5") == 2.5
    with pytest.raises(ParseError):
        FLOAT.parse("1/3")
    with pytest.raises(ParseError):
        EXACT.parse("1/0")
    with pytest.raises(ParseError):
        FLOAT.parse("nan")
    with pytest.raises(NegativeWeight):
        EXACT.parse("-2")


def test_float_tolerance():
    mode = NumericMode(rel_tol=1e-9, abs_tol=1e-12)
    assert mode.close(1.0, 1.0 + 1e-10)
    assert not mode.close(1.0, 1.0 + 1e-8)
    assert mode.close(0.0, 1e-13)
    assert mode.le(1.0 + 1e-10, 1.0)
    assert not mode.lt(1.0, 1.0 + 1e-10)
    assert mode.lt(1.0, 1.1)


def test_exact_has_no_tolerance():
    assert not EXACT.close(Fraction(1), Fraction(1) + Fraction(1, 10**30))
    assert EXACT.lt(Fraction(1), Fraction(1) + Fraction(1, 10**30))


def test_coerce_rejects_nonfinite():
    with pytest.raises(ModeError):
        FLOAT.coerce(math.inf)


def test_make_root_collapses_perfect_powers():
    assert make_root(25, 2) == 5
    assert make_root(Fraction(8, 27), 3) == Fraction(2, 3)
    r = make_root(2, 2)
    assert isinstance(r, Radical)
    assert exact_root(Fraction(2), 2) is None


def test_radical_ordering():
    r2 = make_root(2, 2)
    assert 1 < r2 < Fraction(3, 2)
    assert r2 < make_root(3, 2)
    assert make_root(2, 2) == Radical(2, 2)
    # 2^(1/2) vs 3^(1/3): 2^3=8 < 3^2=9
    assert make_root(2, 2) < make_root(3, 3)
    assert max(r2, Fraction(7, 5)) is r2
    assert float(r2) == pytest.approx(math.sqrt(2))


@given(st.fractions(min_value=0, max_value=100, max_denominator=50), st.integers(1, 4))
def test_root_of_power_is_exact(q, p):
    assert make_root(q**p, p) == q


def test_format_value():
    assert format_value(Fraction(1, 3)) == "1/3"
    assert format_value(2.5) == "2.5"
    assert format_value(UNREACHABLE) == "inf"
    assert format_value(make_root(2, 2)) == "(2)^(1/2)"
