from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp

from tracekit.balls import Ball, acos_ball, asin_ball, ball_sum, mpf_to_fraction, precision

fractions = st.fractions(min_value=-100, max_value=100, max_denominator=997)


def test_exact_constructors():
    assert Ball(3).contains_number(3)
    assert Ball.from_fraction(Fraction(1, 3)).contains_number(Fraction(1, 3))
    b = Ball.from_midrad(1, Fraction(1, 4))
    assert b.contains_number(Fraction(5, 4)) and b.contains_number(Fraction(3, 4))
    assert not b.contains_number(2)


@given(fractions, fractions)
def test_arithmetic_encloses_exact_rationals(a, b):
    ba, bb = Ball.from_fraction(a), Ball.from_fraction(b)
    assert (ba + bb).contains_number(a + b)
    assert (ba - bb).contains_number(a - b)
    assert (ba * bb).contains_number(a * b)
    if b != 0:
        assert (ba / bb).contains_number(a / b)


@given(fractions, st.integers(min_value=0, max_value=6))
def test_integer_powers(a, k):
    assert (Ball.from_fraction(a) ** k).contains_number(a**k)


def test_division_by_zero_interval():
    with pytest.raises(ZeroDivisionError):
        Ball(1) / Ball.from_endpoints(-1, 1)


@given(st.fractions(min_value=Fraction(1, 100), max_value=100, max_denominator=997))
def test_transcendental_enclosures(a):
    with precision(128):
        ba = Ball.from_fraction(a)
        mp.prec = 300
        x = mp.mpf(a.numerator) / a.denominator
        assert ba.sqrt().lower <= mp.sqrt(x) <= ba.sqrt().upper
        assert ba.exp().lower <= mp.exp(x) <= ba.exp().upper
        assert ba.log().lower <= mp.log(x) <= ba.log().upper
        assert ba.cos().lower <= mp.cos(x) <= ba.cos().upper
        assert ba.sin().lower <= mp.sin(x) <= ba.sin().upper
        assert ba.cbrt().lower <= mp.cbrt(x) <= ba.cbrt().upper


def test_pi_contains_truth():
    with precision(192):
        pi = Ball.pi()
        mp.prec = 300
        assert pi.lower <= mp.pi <= pi.upper


def test_predicates_and_widen():
    b = Ball.from_endpoints(1, 2)
    assert b.is_positive() and b.is_nonzero() and not b.contains_zero()
    w = b.widen(Fraction(3, 2))
    assert w.contains_zero()
    assert b.intersects(Ball.from_endpoints(2, 3))
    assert not b.intersects(Ball.from_endpoints(3, 4))
    assert Ball.from_endpoints(0, 3).contains_ball(b)
    assert Ball.from_endpoints(-2, -1).definitely_less(b)
    assert abs(Ball.from_endpoints(-3, -2)).contains_number(Fraction(5, 2))


def test_union_and_sum():
    u = Ball.from_endpoints(0, 1).union(Ball.from_endpoints(3, 4))
    assert u.contains_number(2)
    s = ball_sum([Ball(1), Ball(2), Ball.from_fraction(Fraction(1, 2))])
    assert s.contains_number(Fraction(7, 2))


def test_midpoint_radius_are_faithful():
    with precision(256):
        b = Ball(1) / 3
    # midpoint must stay inside even when read at low ambient precision
    assert b.lower <= b.midpoint <= b.upper
    assert b.radius >= (b.upper - b.lower) / 2 * Fraction(99, 100)
    assert mpf_to_fraction(mp.mpf(0.25)) == Fraction(1, 4)


def test_refinement_with_precision():
    with precision(64):
        lo = (Ball(1) / 3).radius
    with precision(192):
        hi = (Ball(1) / 3).radius
    assert hi < lo


@given(st.fractions(min_value=-1, max_value=1, max_denominator=499))
def test_asin_ball_contains_truth(a):
    with precision(128):
        enc = asin_ball(Ball.from_fraction(a))
        mp.prec = 300
        truth = mp.asin(mp.mpf(a.numerator) / a.denominator)
        assert enc.lower <= truth <= enc.upper


def test_asin_acos_endpoints():
    with precision(128):
        right = asin_ball(Ball(1))
        mp.prec = 300
        assert right.lower <= mp.pi / 2 <= right.upper
        zero = acos_ball(Ball(1))
        assert zero.contains_zero() or abs(float(zero)) < 1e-30
