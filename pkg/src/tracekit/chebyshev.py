"""The polynomial families X_n, Y_m, Q_m in exact integer arithmetic.

X_n is the degree-n Chebyshev polynomial of the second kind in the
2cos(theta) normalization, X_n(2 cos t) = sin((n+1)t)/sin(t).  The Y family
comes from the generating function (1+t)/(1 - (x-1)t + t^2), equivalently
Y_0 = 1, Y_1 = x, Y_m = (x-1) Y_{m-1} - Y_{m-2}; it satisfies the exact
composition identity X_{2m} = Y_m(X_2).  Q_m is the parity-respecting
partial sum of the Y's.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .intpoly import IntPolynomial


@lru_cache(maxsize=None)
def chebyshev_x(n: int) -> IntPolynomial:
    """X_n: X_0 = 1, X_1 = x, X_{n+1} = x X_n - X_{n-1}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return IntPolynomial.one()
    if n == 1:
        return IntPolynomial.x()
    return IntPolynomial.x() * chebyshev_x(n - 1) - chebyshev_x(n - 2)


@lru_cache(maxsize=None)
def poly_y(m: int) -> IntPolynomial:
    """Y_m: Y_0 = 1, Y_1 = x, Y_m = (x-1) Y_{m-1} - Y_{m-2}."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return IntPolynomial.one()
    if m == 1:
        return IntPolynomial.x()
    xm1 = IntPolynomial((-1, 1))
    return xm1 * poly_y(m - 1) - poly_y(m - 2)


def poly_q(m: int) -> IntPolynomial:
    """Q_m = Y_m + Y_{m-2} + ... down to Y_1 (m odd) or Y_0 (m even)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    acc = IntPolynomial.zero()
    j = m
    while j >= 0:
        acc = acc + poly_y(j)
        j -= 2
    return acc


def verify_composition(m: int) -> bool:
    """Exact coefficient-level check of X_{2m} = Y_m(X_2)."""
    return chebyshev_x(2 * m) == poly_y(m).compose(chebyshev_x(2))


def _grid_eval_q(n: int, xs: np.ndarray):
    """Values and derivatives of Q_n on a grid, via the stable Y recurrence."""
    y_prev = np.ones_like(xs)          # Y_0
    yd_prev = np.zeros_like(xs)
    y_cur = xs.copy()                  # Y_1
    yd_cur = np.ones_like(xs)
    if n % 2 == 0:
        q, qd = y_prev.copy(), yd_prev.copy()
    else:
        q, qd = y_cur.copy(), yd_cur.copy()
    for m in range(2, n + 1):
        y_next = (xs - 1) * y_cur - y_prev
        yd_next = y_cur + (xs - 1) * yd_cur - yd_prev
        y_prev, y_cur = y_cur, y_next
        yd_prev, yd_cur = yd_cur, yd_next
        if m % 2 == n % 2:
            q += y_cur
            qd += yd_cur
    return q, qd


def derivative_bound_check(n: int, grid_points: int = 1000) -> tuple[float, float]:
    """Grid ratios (max |Q_n'| / n^3 on [-1, 3], |Q_n(3)| / n^2).

    These back the soft growth bounds for the Q family; the companion
    X-family ratio lives in x_derivative_ratio.  Their grid maxima sit at
    the right endpoint and the frozen caps are calibrated for the tested
    range of n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    xs = np.linspace(-1.0, 3.0, grid_points)
    _, qd = _grid_eval_q(n, xs)
    q3 = poly_q(n).eval_int(3)
    return float(np.max(np.abs(qd)) / n**3), float(abs(q3) / n**2)


def x_derivative_ratio(n: int, grid_points: int = 1000) -> float:
    """max |X_{2n}'| / n^2 over a grid on [-2, 2], via the stable recurrence.

    (Horner on the raw coefficients would cancel catastrophically in float64
    for 2n around 80; the recurrence keeps every intermediate polynomial-sized.)
    """
    if n < 1:
        raise ValueError("n must be positive")
    xs = np.linspace(-2.0, 2.0, grid_points)
    v_prev = np.ones_like(xs)
    vd_prev = np.zeros_like(xs)
    v = xs.copy()
    vd = np.ones_like(xs)
    for _ in range(2, 2 * n + 1):
        v_next = xs * v - v_prev
        vd_next = v + xs * vd - vd_prev
        v_prev, v = v, v_next
        vd_prev, vd = vd, vd_next
    return float(np.max(np.abs(vd)) / n**2)
