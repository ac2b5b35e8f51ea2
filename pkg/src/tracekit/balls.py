"""Midpoint-radius enclosures of real numbers.

A :class:`Ball` wraps an mpmath interval (outward-rounded endpoints) and is
the carrier for every analytic quantity in this package: Kloosterman sum
numerics, Bessel values, truncated Petersson averages, measure masses.  The
guarantee is the usual one for interval arithmetic: the true real number is
always inside ``[lower, upper]``, and arithmetic on balls yields enclosures
of the exact result.

Operations run at the ambient interval precision; wrap computations in
``with precision(bits):`` to control it.  Exact inputs (ints, Fractions,
binary floats) convert without loss of containment.
"""

from __future__ import annotations

import contextlib
from fractions import Fraction

from mpmath import iv, libmp, mp


class PrecisionExhausted(ArithmeticError):
    """Requested accuracy could not be certified within the working-precision cap."""


#: bits of slack added on top of every requested precision context
_GUARD_BITS = 10

#: hard cap on working precision for adaptive refinement loops
MAX_WORKING_BITS = 1 << 15

# Sane ambient default; mpmath's own default (53) is too low for this package.
iv.prec = 128


@contextlib.contextmanager
def precision(bits: int):
    """Context manager setting the ambient interval/real working precision."""
    old_iv, old_mp = iv.prec, mp.prec
    iv.prec = bits + _GUARD_BITS
    mp.prec = bits + _GUARD_BITS
    try:
        yield
    finally:
        iv.prec, mp.prec = old_iv, old_mp


def mpf_to_fraction(x) -> Fraction:
    """Exact rational value of a (finite, dyadic) mpf."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if exp != 0:
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(0)
    val = Fraction(man) * (Fraction(2) ** exp)
    return -val if sign else val


def _lo_mpf(ivval):
    """Lower endpoint of an mpmath interval as a plain mpf."""
    return mp.make_mpf(ivval._mpi_[0])


def _hi_mpf(ivval):
    return mp.make_mpf(ivval._mpi_[1])


def _to_iv(value):
    """Convert a supported scalar to an mpmath interval without losing containment."""
    if isinstance(value, Ball):
        return value._v
    if isinstance(value, Fraction):
        return iv.mpf(value.numerator) / iv.mpf(value.denominator)
    # int, float, mpf and str all convert exactly or with outward rounding
    return iv.mpf(value)


class Ball:
    """Enclosure of a real number: midpoint plus nonnegative radius."""

    __slots__ = ("_v",)

    def __init__(self, value=0):
        if isinstance(value, Ball):
            self._v = value._v
        else:
            self._v = _to_iv(value)

    # -- constructors -------------------------------------------------

    @classmethod
    def _raw(cls, ivval) -> "Ball":
        b = object.__new__(cls)
        b._v = ivval
        return b

    @classmethod
    def from_fraction(cls, q: Fraction) -> "Ball":
        return cls._raw(iv.mpf(q.numerator) / iv.mpf(q.denominator))

    @classmethod
    def from_endpoints(cls, lo, hi) -> "Ball":
        return cls._raw(iv.mpf([lo, hi]))

    @classmethod
    def from_midrad(cls, mid, rad) -> "Ball":
        m = _to_iv(mid)
        r = abs(_to_iv(rad))
        return cls._raw(m + iv.mpf([-1, 1]) * r)

    @staticmethod
    def pi() -> "Ball":
        return Ball._raw(iv.pi)

    # -- views ----------------------------------------------------------

    @property
    def lower(self):
        return _lo_mpf(self._v)

    @property
    def upper(self):
        return _hi_mpf(self._v)

    @property
    def midpoint(self):
        # full-mantissa average: going through the interval context would
        # round at ambient precision and misplace the center
        a, b = self._v._mpi_
        if a == b:
            return mp.make_mpf(a)
        wp = max(a[3], b[3], mp.prec) + 16
        return mp.make_mpf(libmp.mpf_shift(libmp.mpf_add(a, b, wp, "n"), -1))

    @property
    def radius(self):
        # rounded up, so the reported radius never understates
        a, b = self._v._mpi_
        if a == b:
            return mp.mpf(0)
        wp = max(a[3], b[3], mp.prec) + 16
        return mp.make_mpf(libmp.mpf_shift(libmp.mpf_sub(b, a, wp, "u"), -1))

    def __float__(self):
        return float(self._v.mid)

    def __repr__(self):
        return f"Ball(mid={mp.nstr(mp.mpf(self._v.mid), 17)}, rad={mp.nstr(mp.mpf(self._v.delta) / 2, 5)})"

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        return Ball._raw(self._v + _to_iv(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Ball._raw(self._v - _to_iv(other))

    def __rsub__(self, other):
        return Ball._raw(_to_iv(other) - self._v)

    def __mul__(self, other):
        return Ball._raw(self._v * _to_iv(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        div = _to_iv(other)
        if div.a <= 0 <= div.b:
            raise ZeroDivisionError("interval divisor contains zero")
        return Ball._raw(self._v / div)

    def __rtruediv__(self, other):
        if self.contains_zero():
            raise ZeroDivisionError("interval divisor contains zero")
        return Ball._raw(_to_iv(other) / self._v)

    def __neg__(self):
        return Ball._raw(-self._v)

    def __abs__(self):
        return Ball.from_endpoints(self.abs_lower(), self.abs_upper())

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("Ball powers take integer exponents")
        if n < 0:
            return 1 / (self ** (-n))
        return Ball._raw(self._v ** n)

    def sqrt(self) -> "Ball":
        return Ball._raw(iv.sqrt(self._v))

    def exp(self) -> "Ball":
        return Ball._raw(iv.exp(self._v))

    def log(self) -> "Ball":
        return Ball._raw(iv.log(self._v))

    def cos(self) -> "Ball":
        return Ball._raw(iv.cos(self._v))

    def sin(self) -> "Ball":
        return Ball._raw(iv.sin(self._v))

    def cbrt(self) -> "Ball":
        if not self.is_positive():
            raise ValueError("cbrt implemented for positive enclosures only")
        return (self.log() / 3).exp()

    def widen(self, rad) -> "Ball":
        """Enclosure widened by a nonnegative amount on both sides."""
        r = abs(_to_iv(rad))
        return Ball._raw(self._v + iv.mpf([-1, 1]) * r)

    def union(self, other: "Ball") -> "Ball":
        o = _to_iv(other)
        return Ball.from_endpoints(min(self.lower, _lo_mpf(o)), max(self.upper, _hi_mpf(o)))

    # -- predicates -------------------------------------------------------

    def contains_zero(self) -> bool:
        return self.lower <= 0 <= self.upper

    def is_nonzero(self) -> bool:
        """True when the enclosure certifies the value is not zero."""
        return self.lower > 0 or self.upper < 0

    def is_positive(self) -> bool:
        return self.lower > 0

    def is_nonnegative(self) -> bool:
        return self.lower >= 0

    def abs_upper(self):
        return max(abs(self.lower), abs(self.upper))

    def abs_lower(self):
        if self.contains_zero():
            return mp.mpf(0)
        return min(abs(self.lower), abs(self.upper))

    def intersects(self, other: "Ball") -> bool:
        o = _to_iv(other)
        return self.lower <= _hi_mpf(o) and _lo_mpf(o) <= self.upper

    def contains_ball(self, other: "Ball", slack=0) -> bool:
        # exact rational comparison; mpf arithmetic at ambient precision
        # would round away slacks smaller than one ulp of the endpoints
        o = _to_iv(other)
        s = mpf_to_fraction(mp.mpf(slack)) if not isinstance(slack, (int, Fraction)) else Fraction(slack)
        return (mpf_to_fraction(self.lower) - s <= mpf_to_fraction(_lo_mpf(o))
                and mpf_to_fraction(_hi_mpf(o)) <= mpf_to_fraction(self.upper) + s)

    def contains_number(self, q) -> bool:
        """Exact containment test for an int or Fraction."""
        q = Fraction(q)
        return mpf_to_fraction(self.lower) <= q <= mpf_to_fraction(self.upper)

    def definitely_less(self, other) -> bool:
        return self.upper < _lo_mpf(_to_iv(other))

    def definitely_greater(self, other) -> bool:
        return self.lower > _hi_mpf(_to_iv(other))


def ball_sum(terms) -> Ball:
    """Sum balls in the given (fixed) order, for reproducibility."""
    acc = iv.mpf(0)
    for t in terms:
        acc = acc + _to_iv(t)
    return Ball._raw(acc)


def _asin_endpoint(v, lo_side: bool):
    """Certified bound for asin(v) at an exact mpf v in [-1, 1].

    Returns a lower bound when ``lo_side`` else an upper bound.  Uses
    epsilon-inflation around mp.asin verified against the rigorous iv.sin
    (sin is increasing on [-pi/2, pi/2]).
    """
    one = mp.mpf(1)
    half_pi_lo = _lo_mpf(iv.pi / 2)
    half_pi_hi = _hi_mpf(iv.pi / 2)
    if v <= -1:
        return -half_pi_hi if lo_side else -half_pi_lo
    if v >= 1:
        return half_pi_lo if lo_side else half_pi_hi
    t0 = mp.asin(v)
    delta = mp.mpf(2) ** (8 - mp.prec) * max(abs(t0), one)
    for _ in range(60):
        if lo_side:
            cand = t0 - delta
            if cand <= -half_pi_lo:
                return -half_pi_hi
            # sin(cand) <= v certifies cand <= asin(v)
            if _hi_mpf(iv.sin(iv.mpf(cand))) <= v:
                return cand
        else:
            cand = t0 + delta
            if cand >= half_pi_lo:
                return half_pi_hi
            if _lo_mpf(iv.sin(iv.mpf(cand))) >= v:
                return cand
        delta = delta * 16
    raise PrecisionExhausted("could not certify asin enclosure")


def asin_ball(x: Ball) -> Ball:
    """Certified enclosure of arcsin over a ball clamped to [-1, 1]."""
    lo = max(x.lower, mp.mpf(-1))
    hi = min(x.upper, mp.mpf(1))
    if lo > hi:
        raise ValueError("asin_ball: enclosure outside [-1, 1]")
    return Ball.from_endpoints(_asin_endpoint(lo, True), _asin_endpoint(hi, False))


def acos_ball(x: Ball) -> Ball:
    return Ball._raw(iv.pi / 2) - asin_ball(x)
