from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tracekit.balls import Ball
from tracekit.intpoly import IntPolynomial

coeff_lists = st.lists(st.integers(min_value=-50, max_value=50), max_size=8)


def test_basics():
    p = IntPolynomial((1, 0, 3))
    assert p.degree == 2
    assert p[0] == 1 and p[1] == 0 and p[2] == 3 and p[17] == 0
    assert IntPolynomial((0, 0)).is_zero()
    assert IntPolynomial.monomial(3, 2) == IntPolynomial((0, 0, 0, 2))


@given(coeff_lists, coeff_lists)
def test_ring_identities(a, b):
    pa, pb = IntPolynomial(a), IntPolynomial(b)
    assert pa + pb == pb + pa
    assert pa * pb == pb * pa
    assert (pa - pb) + pb == pa
    assert pa * 0 == IntPolynomial.zero()


@given(coeff_lists, coeff_lists, st.integers(min_value=-5, max_value=5))
def test_evaluation_is_a_homomorphism(a, b, x):
    pa, pb = IntPolynomial(a), IntPolynomial(b)
    assert (pa * pb).eval_int(x) == pa.eval_int(x) * pb.eval_int(x)
    assert (pa + pb).eval_int(x) == pa.eval_int(x) + pb.eval_int(x)


@given(coeff_lists, st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=4))
def test_divmod_identity(a, dcoeffs):
    divisor = IntPolynomial(dcoeffs + [1])  # force monic
    p = IntPolynomial(a)
    q, r = p.divmod(divisor)
    assert q * divisor + r == p
    assert r.degree < divisor.degree


def test_divmod_requires_monic():
    with pytest.raises(ValueError):
        IntPolynomial((1, 1)).divmod(IntPolynomial((1, 2)))


def test_compose_and_derivative():
    f = IntPolynomial((1, 0, 1))      # 1 + x^2
    g = IntPolynomial((0, 2))         # 2x
    assert f.compose(g) == IntPolynomial((1, 0, 4))
    assert f.derivative() == IntPolynomial((0, 2))
    assert IntPolynomial((5,)).derivative().is_zero()


def test_eval_consistency():
    p = IntPolynomial((3, -2, 0, 1))
    x = Fraction(5, 7)
    exact = p.eval_fraction(x)
    ball = p.eval_ball(Ball.from_fraction(x))
    assert ball.contains_number(exact)
    assert p.eval_int(4) == 3 - 8 + 64
