"""The four limit measures and certified integration against them.

Supports:
    mu_p      on [-2, 2]   (p+1)/pi * sqrt(1 - x^2/4) / ((sqrt(p)+1/sqrt(p))^2 - x^2)
    mu_inf    on [-2, 2]   semicircle (1/pi) sqrt(1 - x^2/4)
    mu_p2     on [-1, 3]   pushforward of mu_p under X_2(y) = y^2 - 1
    mu_inf2   on [-1, 3]   pushforward of mu_inf under X_2

The trigonometric substitution x = 2 cos(theta) (resp. x = 1 + 2 cos(theta))
removes the endpoint singularities and renders polynomial moments exactly
integrable: expanding the integrand in the X-basis gives

    int X_j dmu_inf = [j == 0],      int X_j dmu_p = p^{-j/2} for even j,

so polynomial integrals evaluate in exact rational arithmetic (the geometric
series of the mu_p denominator telescopes against Chebyshev orthogonality).
An adaptive Gauss-Legendre quadrature of the substituted integrand is kept
as the independent floating-point cross-check.  CDFs use certified
closed-form antiderivatives (plus a geometrically convergent cosine series
for mu_p, truncated with a proven tail bound).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .balls import Ball, acos_ball, asin_ball, precision
from .chebyshev import chebyshev_x
from .intpoly import IntPolynomial

MAX_MOMENT_DEGREE = 4000

MU_P = "mu_p"
MU_INF = "mu_inf"
MU_P2 = "mu_p2"
MU_INF2 = "mu_inf2"


class QuadratureNotConverged(ArithmeticError):
    pass


def _sqrt_clamped(b: Ball) -> Ball:
    lo = max(b.lower, 0)
    hi = max(b.upper, 0)
    return Ball.from_endpoints(lo, hi).sqrt()


@dataclass(frozen=True)
class MeasureSpec:
    """One of the four limit measures, with density and support."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in (MU_P, MU_INF, MU_P2, MU_INF2):
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.kind in (MU_P, MU_P2) and (self.p is None or self.p < 2):
            raise ValueError("p-adic measures need a prime p >= 2")

    @property
    def support(self) -> tuple[int, int]:
        return (-2, 2) if self.kind in (MU_P, MU_INF) else (-1, 3)

    @property
    def squared(self) -> bool:
        return self.kind in (MU_P2, MU_INF2)

    @property
    def base_kind(self) -> str:
        return MU_P if self.kind in (MU_P, MU_P2) else MU_INF

    def density(self, x, precision_bits: int = 128) -> Ball:
        xb = x if isinstance(x, Ball) else Ball(x)
        with precision(precision_bits):
            pi = Ball.pi()
            if self.kind == MU_INF:
                return _sqrt_clamped(1 - xb**2 / 4) / pi
            if self.kind == MU_P:
                denom = Ball(self.p) + 2 + Ball(1) / self.p - xb**2
                return (self.p + 1) * _sqrt_clamped(1 - xb**2 / 4) / (pi * denom)
            ratio = _sqrt_clamped((3 - xb) / (1 + xb))
            if self.kind == MU_INF2:
                return ratio / (2 * pi)
            denom = Ball(self.p) + 2 + Ball(1) / self.p - (xb + 1)
            return (self.p + 1) * ratio / (2 * pi * denom)


def mu_p(p: int) -> MeasureSpec:
    return MeasureSpec(MU_P, p)


def mu_infinity() -> MeasureSpec:
    return MeasureSpec(MU_INF)


def mu_p_squared(p: int) -> MeasureSpec:
    return MeasureSpec(MU_P2, p)


def mu_infinity_2() -> MeasureSpec:
    return MeasureSpec(MU_INF2)


ALL_MEASURE_FACTORIES = {
    MU_P: mu_p,
    MU_INF: lambda p=None: mu_infinity(),
    MU_P2: mu_p_squared,
    MU_INF2: lambda p=None: mu_infinity_2(),
}


# -- exact polynomial moments ------------------------------------------------


def chebyshev_basis_coeffs(poly: IntPolynomial) -> list[int]:
    """Exact integer coefficients of poly in the X_j basis (X_j is monic)."""
    work = list(poly.coeffs)
    out = [0] * len(work)
    for d in range(len(work) - 1, -1, -1):
        c = work[d]
        if c:
            out[d] = c
            for i, xc in enumerate(chebyshev_x(d).coeffs):
                work[i] -= c * xc
    return out


def moment_exact(poly: IntPolynomial, measure: MeasureSpec) -> Fraction:
    """Exact rational value of the polynomial integral against the measure."""
    if poly.degree > MAX_MOMENT_DEGREE:
        raise ValueError("polynomial degree above the configured moment cap")
    if measure.squared:
        base = MeasureSpec(measure.base_kind, measure.p)
        return moment_exact(poly.compose(chebyshev_x(2)), base)
    coeffs = chebyshev_basis_coeffs(poly)
    if measure.kind == MU_INF:
        return Fraction(coeffs[0]) if coeffs else Fraction(0)
    total = Fraction(0)
    for j, c in enumerate(coeffs):
        if c and j % 2 == 0:
            total += Fraction(c, measure.p ** (j // 2))
    return total


def integrate_poly(poly: IntPolynomial, measure: MeasureSpec,
                   precision_bits: int = 128) -> Ball:
    """Certified enclosure of the polynomial integral (exact rational route)."""
    value = moment_exact(poly, measure)
    with precision(precision_bits):
        return Ball.from_fraction(value)


# -- floating-point quadrature cross-check -----------------------------------


def _theta_integrand(measure: MeasureSpec, poly: IntPolynomial):
    coeffs = np.array([float(c) for c in poly.coeffs])

    def horner(x):
        acc = np.zeros_like(x)
        for c in coeffs[::-1]:
            acc = acc * x + c
        return acc

    p = measure.p
    if measure.kind == MU_INF:
        return lambda t: horner(2 * np.cos(t)) * (2 / np.pi) * np.sin(t) ** 2
    if measure.kind == MU_P:
        A = p + 1.0 / p
        return lambda t: (horner(2 * np.cos(t)) * (2 * (p + 1) / np.pi)
                          * np.sin(t) ** 2 / (A + 2 - 4 * np.cos(t) ** 2))
    if measure.kind == MU_INF2:
        return lambda t: horner(1 + 2 * np.cos(t)) * (2 / np.pi) * np.sin(t / 2) ** 2
    A = p + 1.0 / p
    return lambda t: (horner(1 + 2 * np.cos(t)) * (2 * (p + 1) / np.pi)
                      * np.sin(t / 2) ** 2 / (A - 2 * np.cos(t)))


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(12)


def _gl_panel(fn, a: float, b: float) -> float:
    mid, half = (a + b) / 2, (b - a) / 2
    return float(half * np.sum(_GL_WEIGHTS * fn(mid + half * _GL_NODES)))


def _adaptive(fn, a: float, b: float, tol: float, depth: int) -> float:
    whole = _gl_panel(fn, a, b)
    mid = (a + b) / 2
    split = _gl_panel(fn, a, mid) + _gl_panel(fn, mid, b)
    if abs(whole - split) <= tol * max(1.0, abs(split)):
        return split
    if depth <= 0:
        raise QuadratureNotConverged(f"panel [{a}, {b}] did not converge")
    return (_adaptive(fn, a, mid, tol / 2, depth - 1)
            + _adaptive(fn, mid, b, tol / 2, depth - 1))


def quadrature_moment(poly: IntPolynomial, measure: MeasureSpec,
                      tol: float = 1e-12, max_depth: int = 24) -> float:
    """Adaptive Gauss-Legendre value of the substituted integral (float oracle)."""
    fn = _theta_integrand(measure, poly)
    return _adaptive(fn, 0.0, float(np.pi), tol, max_depth)


# -- certified CDFs ---------------------------------------------------------


def _cdf_mu_inf(x: Ball, precision_bits: int) -> Ball:
    with precision(precision_bits):
        half = Ball(x)
        pi = Ball.pi()
        s = half / 2
        return Ball(1) / 2 + (asin_ball(s) + s * _sqrt_clamped(1 - s**2)) / pi


def _upper_mass_mu_p(p: int, theta: Ball, precision_bits: int) -> Ball:
    """Mass of [2 cos(theta), 2] under mu_p, theta in [0, pi], certified."""
    with precision(precision_bits):
        series = theta / 2 - (2 * theta).sin() / 4  # j = 0 term
        # j = 1 has the resonant -t/4 piece
        i1 = (2 * theta).sin() / 4 - (theta + (4 * theta).sin() / 4) / 4
        series = series + 2 * i1 / p
        terms = int(precision_bits * 0.6931 / np.log(p)) + 3
        pj = p
        for j in range(2, terms + 1):
            pj *= p
            ij = ((2 * j * theta).sin() / (4 * j)
                  - ((2 * (j - 1) * theta).sin() / (2 * (j - 1))
                     + (2 * (j + 1) * theta).sin() / (2 * (j + 1))) / 4)
            series = series + 2 * ij / pj
        # |I_j| <= 3/(4(j-1)) gives a geometric tail bound
        tail = Ball(3) / (2 * (terms) * (p - 1)) / pj
        series = series.widen(tail.abs_upper())
        front = 2 * (p + 1) / (Ball.pi() * (Ball(p) - Ball(1) / p))
        return front * series


def cdf(measure: MeasureSpec, x, precision_bits: int = 128) -> Ball:
    """Certified enclosure of measure((-inf, x]); x clamps to the support."""
    lo, hi = measure.support
    xb = x if isinstance(x, Ball) else Ball(x)
    if xb.upper <= lo:
        return Ball(0)
    if xb.lower >= hi:
        return Ball(1)
    if measure.squared:
        base = MeasureSpec(measure.base_kind, measure.p)
        with precision(precision_bits):
            s = _sqrt_clamped(xb + 1)
        inner = cdf(base, s, precision_bits)
        with precision(precision_bits):
            return 2 * inner - 1
    if measure.kind == MU_INF:
        return _cdf_mu_inf(xb, precision_bits)
    with precision(precision_bits):
        theta = acos_ball(xb / 2)
    upper_mass = _upper_mass_mu_p(measure.p, theta, precision_bits)
    with precision(precision_bits):
        return 1 - upper_mass


def discrepancy_grid(measure_a: MeasureSpec, measure_b: MeasureSpec,
                     grid: int = 200, precision_bits: int = 96) -> float:
    """Grid approximation of sup over intervals of the CDF difference.

    Reporting aid only (the grid resolution is a knob, not a proof): for
    measures with the same support the sup over intervals [a, b] equals
    max diff - min diff of the CDFs over the grid.
    """
    if measure_a.support != measure_b.support:
        raise ValueError("measures must share a support interval")
    lo, hi = measure_a.support
    diffs = []
    for i in range(grid + 1):
        x = Fraction(lo) + Fraction(i * (hi - lo), grid)
        fa = cdf(measure_a, Ball.from_fraction(x), precision_bits)
        fb = cdf(measure_b, Ball.from_fraction(x), precision_bits)
        diffs.append(float(fa.midpoint - fb.midpoint))
    return max(diffs) - min(diffs)
