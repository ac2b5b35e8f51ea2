"""Certified truncation of the Petersson average

    Delta_{k,N}(m,n) = delta(m,n)
        + 2 pi i^k sum_{N | c} S(m,n,c)/c J_{k-1}(4 pi sqrt(mn) / c).

The partial sum runs over c = bN for 1 <= b < B with exact Kloosterman
numerics and certified Bessel enclosures.  Writing x_b = 4 pi sqrt(mn) /
((k-1) b N), each omitted term is at most

    t(b) = 2 pi e^{(k-1)(1 - x_b)} x_b^{k-1} J_{k-1}(k-1)

by the Bessel ratio estimate (phi(bN)/(bN) < 1), t is decreasing in b as
long as x_B < 1, and the integral test bounds the whole tail by

    t(B) + 2 pi J_{k-1}(k-1) x_1 e^{k-1} x_B^{k-3} min(x_B, 1/(k-1)).

The result Ball is the partial sum widened by that proven tail bound, so it
encloses the untruncated average whenever x_B < 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .balls import Ball, PrecisionExhausted, precision
from .bessel import bessel_j
from .kloosterman import brute_force_kloosterman

DEFAULT_PRECISION_BITS = 192

#: frozen constant multiplying the remainder envelope in asymptotic checks
ENVELOPE_CONSTANT = 5.0


class TailNotCertifiable(ArithmeticError):
    """The truncation point does not satisfy the tail-bound validity condition."""


class WindowViolation(ValueError):
    """Arguments fall outside the transition window |4 pi sqrt(mn)/N - (k-1)| < (k-1)^(1/3)."""


@dataclass(frozen=True)
class PeterssonValue:
    k: int
    N: int
    m: int
    n: int
    B: int
    partial: Ball
    tail_bound: object  # nonnegative mpf
    delta_term: int
    value: Ball


@dataclass(frozen=True)
class AsymptoticCheck:
    k: int
    N: int
    m: int
    n: int
    window_ok: bool
    main_term: Ball | None
    remainder: Ball | None
    error_envelope: float
    within_envelope: bool | None
    truncated: PeterssonValue


def _validate(k: int, N: int, m: int, n: int):
    if k % 2 != 0 or k < 4:
        raise ValueError("weight k must be an even integer >= 4")
    if N < 1 or m < 1 or n < 1:
        raise ValueError("N, m, n must be positive integers")


def _sqrt_mn(m: int, n: int) -> Ball:
    return Ball(m * n).sqrt()


def default_truncation(k: int, N: int, m: int, n: int) -> int:
    """Smallest B >= 2 with x_B <= 5/18, doubled once for safety."""
    x1 = 4.0 * 3.1415926536 * math.sqrt(float(m) * float(n)) / ((k - 1) * N)
    b0 = max(2, math.ceil(x1 * 18 / 5))
    return 2 * b0


def delta_truncated(k: int, N: int, m: int, n: int, B: int | None = None,
                    precision_bits: int = DEFAULT_PRECISION_BITS) -> PeterssonValue:
    """Certified enclosure of Delta_{k,N}(m,n) truncated at c < B*N."""
    _validate(k, N, m, n)
    if B is None:
        B = default_truncation(k, N, m, n)
    if B < 2:
        raise ValueError("truncation B must be at least 2")
    sign = -1 if (k // 2) % 2 else 1
    delta_term = 1 if m == n else 0
    with precision(precision_bits + 32):
        two_pi = 2 * Ball.pi()
        root = _sqrt_mn(m, n)
        x1 = two_pi * 2 * root / ((k - 1) * N)
        xB = x1 / B
        if not xB.upper < 1:
            raise TailNotCertifiable(
                f"x_B = {float(xB):.4f} >= 1: raise B above {float(x1):.2f} to certify the tail")
    terms = []
    for b in range(1, B):
        s_b = brute_force_kloosterman(m, n, b * N, precision_bits).numeric
        with precision(precision_bits + 32):
            y_b = two_pi * 2 * root / (b * N)
        j_b = bessel_j(k - 1, y_b, precision_bits).value
        terms.append((s_b, j_b, b))
    jkk = bessel_j(k - 1, Ball(k - 1), precision_bits).value
    with precision(precision_bits + 32):
        partial = Ball(delta_term)
        for s_b, j_b, b in terms:
            partial = partial + two_pi * sign * s_b * j_b / (b * N)
        # integral-test tail bound, valid since x_B < 1
        km1 = Ball(k - 1)
        g_xB = 1 - xB + xB.log()
        t_B = two_pi * jkk * (km1 * g_xB).exp()
        integral = two_pi * jkk * x1 * ((km1 + (k - 3) * xB.log()).exp())
        cap = min(xB.upper, (1 / km1).upper)
        integral = integral * cap
        tail = (t_B + integral).upper
        if tail < 0:
            raise TailNotCertifiable("negative tail bound; Bessel enclosure degenerate")
        tail = mp.mpf(tail)
        value = partial.widen(tail)
    return PeterssonValue(k, N, m, n, B, partial, tail, delta_term, value)


def window_holds(k: int, N: int, m: int, n: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> bool:
    """Certified decision of |4 pi sqrt(mn)/N - (k-1)| < (k-1)^(1/3)."""
    bits = precision_bits
    for _ in range(3):
        with precision(bits):
            gap = abs(4 * Ball.pi() * _sqrt_mn(m, n) / N - (k - 1))
            width = Ball(k - 1).cbrt()
            if gap.upper < width.lower:
                return True
            if gap.lower > width.upper:
                return False
        bits *= 2
    raise PrecisionExhausted("window comparison inconclusive")


def error_envelope(k: int) -> Ball:
    """e^{(k-1)(1 - 4/9 - log(9/5))} / (k-1)^{1/3}; the exponent is about -0.0322."""
    exponent = (1 - Fraction(4, 9)) - (Ball(9) / 5).log()
    return ((k - 1) * exponent).exp() / Ball(k - 1).cbrt()


def asymptotic_check(k: int, N: int, m: int, n: int,
                     precision_bits: int = DEFAULT_PRECISION_BITS,
                     envelope_constant: float = ENVELOPE_CONSTANT,
                     B: int | None = None) -> AsymptoticCheck:
    """Split Delta_{k,N}(m,n) into delta + leading (c = N) term + remainder.

    Valid for k >= 28.  When the window holds, the remainder is compared
    against envelope_constant times the proven error envelope.
    """
    _validate(k, N, m, n)
    if k < 28:
        raise ValueError("the asymptotic split assumes k > 27")
    truncated = delta_truncated(k, N, m, n, B=B, precision_bits=precision_bits)
    window = window_holds(k, N, m, n, precision_bits)
    sign = -1 if (k // 2) % 2 else 1
    s_N = brute_force_kloosterman(m, n, N, precision_bits).numeric
    with precision(precision_bits + 32):
        y = 4 * Ball.pi() * _sqrt_mn(m, n) / N
    j_main = bessel_j(k - 1, y, precision_bits).value
    with precision(precision_bits + 32):
        main = 2 * Ball.pi() * sign * s_N * j_main / N
        remainder = truncated.value - truncated.delta_term - main
        env = error_envelope(k)
        within = bool(remainder.abs_upper() <= (envelope_constant * env).lower) if window else None
    return AsymptoticCheck(k, N, m, n, window, main, remainder,
                           float(env.upper), within, truncated)


def small_sum_check(p: int, N: int, n: int, k_n: int,
                    precision_bits: int = DEFAULT_PRECISION_BITS) -> tuple[Ball, Ball]:
    """Head sum sum_{i<n} Delta_{k_n,N}(1, p^{4i+2}) and the last term
    Delta_{k_n,N}(1, p^{4n+2}), both as certified Balls.

    The window condition is required for the last term's pair (1, p^{4n+2});
    the head terms sit far below the transition point, where the same tail
    machinery certifies them to be exponentially small.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if not window_holds(k_n, N, 1, p ** (4 * n + 2), precision_bits):
        raise WindowViolation(
            f"(1, p^{4 * n + 2}) violates the transition window for k = {k_n}, N = {N}")
    with precision(precision_bits + 32):
        head = Ball(0)
        for i in range(n):
            head = head + delta_truncated(k_n, N, 1, p ** (4 * i + 2),
                                          precision_bits=precision_bits).value
    last = delta_truncated(k_n, N, 1, p ** (4 * n + 2), precision_bits=precision_bits).value
    return head, last
