import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from tracekit.balls import Ball, precision
from tracekit.chebyshev import chebyshev_x, poly_q
from tracekit.intpoly import IntPolynomial
from tracekit.measures import (
    MeasureSpec,
    cdf,
    chebyshev_basis_coeffs,
    integrate_poly,
    moment_exact,
    mu_infinity,
    mu_infinity_2,
    mu_p,
    mu_p_squared,
    quadrature_moment,
)

ALL_SPECS = [mu_infinity(), mu_p(3), mu_p(5), mu_p(7),
             mu_infinity_2(), mu_p_squared(3), mu_p_squared(5), mu_p_squared(7)]


def density_oracle(spec, x):
    """Literal density formulas at float points, via mpmath."""
    p = spec.p
    if spec.kind == "mu_inf":
        return mp.sqrt(1 - x * x / 4) / mp.pi
    if spec.kind == "mu_p":
        return (p + 1) / mp.pi * mp.sqrt(1 - x * x / 4) / ((mp.sqrt(p) + 1 / mp.sqrt(p)) ** 2 - x * x)
    if spec.kind == "mu_inf2":
        return mp.sqrt((3 - x) / (1 + x)) / (2 * mp.pi)
    return ((p + 1) / (2 * mp.pi) * mp.sqrt((3 - x) / (1 + x))
            / ((mp.sqrt(p) + 1 / mp.sqrt(p)) ** 2 - (x + 1)))


def test_invalid_spec_rejected():
    with pytest.raises(ValueError):
        MeasureSpec("mu_nope")
    with pytest.raises(ValueError):
        MeasureSpec("mu_p")  # missing p


def test_supports():
    assert mu_infinity().support == (-2, 2)
    assert mu_p(3).support == (-2, 2)
    assert mu_infinity_2().support == (-1, 3)
    assert mu_p_squared(5).support == (-1, 3)


def test_density_matches_formula_and_is_nonnegative():
    old = mp.dps
    try:
        mp.dps = 50
        for spec in ALL_SPECS:
            lo, hi = spec.support
            for i in range(1, 101):
                x = lo + (hi - lo) * i / 101
                d = spec.density(Ball(x), 96)
                assert float(d.upper) >= 0
                truth = density_oracle(spec, mp.mpf(x))
                assert d.lower <= truth <= d.upper
    finally:
        mp.dps = old


def test_total_mass_is_exactly_one():
    one = IntPolynomial((1,))
    for spec in ALL_SPECS:
        assert moment_exact(one, spec) == 1
        mass = integrate_poly(one, spec, 128)
        assert mass.contains_number(1)
        assert float(mass.radius) < 1e-10


def test_chebyshev_moments_of_mu_infinity():
    for n in range(0, 31):
        value = integrate_poly(chebyshev_x(n), mu_infinity(), 128)
        assert value.contains_number(1 if n == 0 else 0)
        assert float(value.radius) < 1e-10


def test_chebyshev_moments_of_mu_p_are_prime_powers():
    for p in (3, 5):
        for n in range(0, 11):
            got = moment_exact(chebyshev_x(n), mu_p(p))
            want = Fraction(0) if n % 2 else Fraction(1, p ** (n // 2))
            if n == 0:
                want = Fraction(1)
            assert got == want


def test_odd_q_moments_vanish_for_mu_infinity_2():
    for n in range(0, 11):
        value = integrate_poly(poly_q(2 * n + 1), mu_infinity_2(), 128)
        assert value.contains_number(0)
        assert float(value.radius) < 1e-10


def test_pushforward_consistency():
    # int f dmu_{p^2} = int f(X_2) dmu_p, exactly
    f = IntPolynomial((2, -1, 3, 0, 1))
    for p in (3, 7):
        lhs = moment_exact(f, mu_p_squared(p))
        rhs = moment_exact(f.compose(chebyshev_x(2)), mu_p(p))
        assert lhs == rhs


@settings(deadline=None, max_examples=25)
@given(st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=7))
def test_chebyshev_basis_roundtrip(coeffs):
    poly = IntPolynomial(coeffs)
    basis = chebyshev_basis_coeffs(poly)
    rebuilt = IntPolynomial.zero()
    for j, c in enumerate(basis):
        if c:
            rebuilt = rebuilt + c * chebyshev_x(j)
    assert rebuilt == poly


def test_quadrature_cross_checks_exact_moments():
    # independent floating-point route agrees with the exact rational values
    for spec in (mu_infinity(), mu_p(3), mu_p_squared(5), mu_infinity_2()):
        for poly in (IntPolynomial((1,)), chebyshev_x(2), chebyshev_x(5),
                     IntPolynomial((1, 2, 0, 1))):
            exact = float(moment_exact(poly, spec))
            quad = quadrature_moment(poly, spec, tol=1e-12)
            assert abs(quad - exact) < 1e-9, (spec.kind, poly.coeffs)


def cdf_oracle(spec, x, dps=30):
    old = mp.dps
    try:
        mp.dps = dps
        lo, _ = spec.support
        return mpmath.quad(lambda t: density_oracle(spec, t), [lo, x])
    finally:
        mp.dps = old


def test_cdf_fixed_points():
    for spec in ALL_SPECS:
        assert cdf(spec, spec.support[1], 96).contains_number(1)
        assert cdf(spec, spec.support[0], 96).contains_number(0)
    half = cdf(mu_infinity(), 0, 128)
    assert half.contains_number(Fraction(1, 2))


def test_cdf_semicircle_closed_form_at_one():
    # frozen closed form: 2/3 + sqrt(3)/(4 pi)
    value = cdf(mu_infinity(), 1, 128)
    with precision(160):
        expected = Fraction(2, 3) + Ball(3).sqrt() / (4 * Ball.pi())
    assert value.intersects(expected)
    assert abs(float(value) - 0.80449889052126) < 1e-10


def test_cdf_matches_quadrature_oracle():
    pts = {(-2, 2): (-1.5, -0.3, 0.7, 1.6), (-1, 3): (-0.6, 0.4, 1.3, 2.5)}
    for spec in (mu_infinity(), mu_p(3), mu_p(11), mu_p_squared(3), mu_infinity_2()):
        for x in pts[spec.support]:
            enc = cdf(spec, x, 128)
            oracle = cdf_oracle(spec, x)
            assert abs(float(enc) - float(oracle)) < 1e-12, (spec.kind, x)
            assert float(enc.radius) < 1e-20


def test_cdf_monotone_on_grid():
    for spec in (mu_p(5), mu_p_squared(5)):
        lo, hi = spec.support
        vals = [float(cdf(spec, lo + (hi - lo) * i / 12, 96)) for i in range(13)]
        assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))


def test_density_converges_to_limit_measure():
    # |mu_{p^2} - mu_{inf,2}| decreases pointwise along p = 3, 5, 11, 101
    grid = (-0.5, 0.0, 1.0, 1.5, 2.0, 2.5)
    limit = mu_infinity_2()
    for x in grid:
        diffs = []
        for p in (3, 5, 11, 101):
            d = mu_p_squared(p).density(Ball(x), 96)
            l = limit.density(Ball(x), 96)
            diffs.append(abs(float(d) - float(l)))
        assert all(b < a for a, b in zip(diffs, diffs[1:])), (x, diffs)


def test_moment_degree_cap():
    with pytest.raises(ValueError):
        moment_exact(IntPolynomial.monomial(5000), mu_infinity())
