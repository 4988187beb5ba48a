import math

import pytest
from hypothesis import given, strategies as st

from qshift.rationals import (Interval, Q, ceil_rat, floor_rat, parse_rational,
                              rat, rat_str, simplest_between)


def test_parse_and_format_roundtrip():
    for text in ["0", "5", "-3", "7/3", "-22/7", "1000000000000000000001/9"]:
        q = parse_rational(text)
        assert rat_str(q) == text


def test_parse_rejects_garbage():
    for text in ["", "1/0", "a/b", "1.5", "1/ 2", "--3", "1/-2"]:
        with pytest.raises(ValueError):
            parse_rational(text)


def test_rat_coercions():
    assert rat(3) == Q(3)
    assert rat("3/4") == Q(3, 4)
    assert rat(Q(1, 2)) == Q(1, 2)
    with pytest.raises(TypeError):
        rat(1.5)


def test_floor_ceil():
    assert floor_rat(Q(7, 3)) == 2
    assert ceil_rat(Q(7, 3)) == 3
    assert floor_rat(Q(-7, 3)) == -3
    assert ceil_rat(Q(-7, 3)) == -2
    assert floor_rat(Q(4)) == ceil_rat(Q(4)) == 4


rationals = st.builds(Q, st.integers(-60, 60), st.integers(1, 60))


@given(rationals, rationals)
def test_simplest_between_lands_inside(a, b):
    if a == b:
        return
    lo, hi = (a, b) if a < b else (b, a)
    q = simplest_between(lo, hi)
    assert lo < q < hi


@given(rationals, rationals)
def test_simplest_between_minimizes_denominator(a, b):
    if a == b:
        return
    lo, hi = (a, b) if a < b else (b, a)
    q = simplest_between(lo, hi, include_lo=True, include_hi=True)
    assert lo <= q <= hi
    # brute force: no fraction with a smaller denominator fits
    for d in range(1, q.denominator):
        first = ceil_rat(lo * d)
        last = floor_rat(hi * d)
        assert first > last, f"{first}/{d} lies in [{lo}, {hi}]"


def test_simplest_between_endpoint_flags():
    third, half, two_thirds = Q(1, 3), Q(1, 2), Q(2, 3)
    assert simplest_between(third, half, include_lo=True) == third
    assert simplest_between(half, two_thirds, include_hi=True) == two_thirds
    assert simplest_between(third, half) == Q(2, 5)
    with pytest.raises(ValueError):
        simplest_between(half, half)
    assert simplest_between(half, half, True, True) == half


def test_interval_basics():
    iv = Interval(0, 1)
    assert iv.contains(Q(1, 2))
    assert not iv.contains(Q(0)) and not iv.contains(Q(1))
    assert iv.contains_open(Interval(0, 1))
    assert iv.contains_open(Interval(Q(1, 4), Q(3, 4)))
    assert not iv.contains_open(Interval(Q(1, 2), 2))
    assert iv.contains_closed(Q(1, 4), Q(3, 4))
    assert not iv.contains_closed(Q(0), Q(1, 2))
    with pytest.raises(ValueError):
        Interval(1, 0)


def test_interval_infinite_sides():
    left = Interval(None, 0)
    assert left.contains(Q(-100)) and not left.contains(Q(0))
    assert left.finite_window() == Interval(-1, 0)
    assert Interval(None, None).finite_window() == Interval(0, 1)
    assert Interval(3, None).finite_window() == Interval(3, 4)
    assert Interval(None, None).contains_closed(Q(-5), Q(5))


def test_gcd_stays_canonical():
    q = Q(6, 4)
    assert (q.numerator, q.denominator) == (3, 2)
    assert math.gcd(q.numerator, q.denominator) == 1
    assert Q(-6, -4) == Q(3, 2)
    assert Q(6, -4) == Q(-3, 2)
