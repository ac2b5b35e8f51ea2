"""Exact elements of Z[zeta_c] stored as coefficient vectors over the c-th
roots of unity, with a deterministic algebraic zero test.

An element sum_j coeffs[j] * zeta_c^j is zero exactly when the polynomial
sum_j coeffs[j] x^j is divisible by the c-th cyclotomic polynomial Phi_c.
The zero test here exploits Phi_c(x) = prod_{d | c} (x^d - 1)^{mu(c/d)}:
multiply by the mu = -1 factors (sparse), then strip the mu = +1 factors by
exact synthetic division.  Each pass is linear in the degree, so the test
costs O(c * 2^omega(c)) integer operations instead of quadratic long
division; `IntPolynomial.rem` against Phi_c remains available as the direct
cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .balls import Ball, precision
from .intpoly import IntPolynomial
from .modarith import divisors, mobius


@lru_cache(maxsize=None)
def cyclotomic_polynomial(c: int) -> IntPolynomial:
    """Phi_c, by iterated exact division of x^c - 1 by Phi_d over proper divisors d."""
    if c < 1:
        raise ValueError("modulus must be positive")
    if c == 1:
        return IntPolynomial((-1, 1))
    num = IntPolynomial.monomial(c) - IntPolynomial.one()
    for d in divisors(c):
        if d < c:
            num = num.exact_div(cyclotomic_polynomial(d))
    return num


def _mul_by_xd_minus_1(coeffs: list[int], d: int) -> list[int]:
    out = [0] * (len(coeffs) + d)
    for i, c in enumerate(coeffs):
        if c:
            out[i + d] += c
            out[i] -= c
    return out


def _exact_div_by_xd_minus_1(coeffs: list[int], d: int):
    """Quotient of coeffs by (x^d - 1) when divisible, else None."""
    n = len(coeffs)
    if n <= d:
        return None if any(coeffs) else []
    quot = [0] * (n - d)
    for m in range(n - d - 1, -1, -1):
        quot[m] = coeffs[m + d] + (quot[m + d] if m + d < n - d else 0)
    for j in range(d):
        if coeffs[j] + (quot[j] if j < n - d else 0) != 0:
            return None
    return quot


def poly_divisible_by_cyclotomic(coeffs, c: int) -> bool:
    """True iff sum coeffs[j] x^j is divisible by Phi_c in Z[x]."""
    work = [int(v) for v in coeffs]
    if not any(work):
        return True
    plus, minus = [], []
    for d in divisors(c):
        mu = mobius(c // d)
        if mu == 1:
            plus.append(d)
        elif mu == -1:
            minus.append(d)
    for d in minus:
        work = _mul_by_xd_minus_1(work, d)
    for d in sorted(plus, reverse=True):
        work = _exact_div_by_xd_minus_1(work, d)
        if work is None:
            return False
    return True


@dataclass(frozen=True)
class CyclotomicElement:
    """Exact value in Z[zeta_c]: coeffs[j] counts the multiplicity of zeta_c^j."""

    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if len(self.coeffs) != self.modulus:
            raise ValueError("coefficient vector length must equal the modulus")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, c: int) -> "CyclotomicElement":
        return cls(c, (0,) * c)

    @classmethod
    def integer(cls, c: int, value: int) -> "CyclotomicElement":
        coeffs = [0] * c
        coeffs[0] = value
        return cls(c, tuple(coeffs))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check(other)
        return CyclotomicElement(self.modulus, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check(other)
        return CyclotomicElement(self.modulus, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CyclotomicElement":
        return CyclotomicElement(self.modulus, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        self._check(other)
        c = self.modulus
        amax = max((abs(v) for v in self.coeffs), default=0)
        bmax = max((abs(v) for v in other.coeffs), default=0)
        if amax and bmax and amax * bmax * c < 2**62:
            conv = np.convolve(np.asarray(self.coeffs, dtype=np.int64),
                               np.asarray(other.coeffs, dtype=np.int64))
            out = conv[:c].copy()
            out[: len(conv) - c] += conv[c:]
            return CyclotomicElement(c, tuple(int(v) for v in out))
        out = [0] * c
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        k = i + j
                        out[k - c if k >= c else k] += a * b
        return CyclotomicElement(c, tuple(out))

    def _check(self, other):
        if self.modulus != other.modulus:
            raise ValueError("elements live in different cyclotomic rings")

    def conjugate(self) -> "CyclotomicElement":
        c = self.modulus
        return CyclotomicElement(c, tuple(self.coeffs[(c - j) % c] for j in range(c)))

    def embed(self, target: int) -> "CyclotomicElement":
        """Image in Z[zeta_target] via zeta_c = zeta_target^(target/c)."""
        if target % self.modulus != 0:
            raise ValueError("target modulus must be a multiple of the current one")
        step = target // self.modulus
        out = [0] * target
        for j, a in enumerate(self.coeffs):
            if a:
                out[j * step] += a
        return CyclotomicElement(target, tuple(out))

    # -- predicates & numerics -----------------------------------------------

    def is_symmetric(self) -> bool:
        """Coefficient symmetry j <-> c - j; equivalent to the value being real."""
        c = self.modulus
        return all(self.coeffs[j] == self.coeffs[(c - j) % c] for j in range(c))

    def to_polynomial(self) -> IntPolynomial:
        return IntPolynomial(self.coeffs)

    def numeric(self, precision_bits: int = 128) -> Ball:
        """Enclosure of the real part sum_j coeffs[j] cos(2 pi j / c)."""
        with precision(precision_bits):
            tau = 2 * Ball.pi()
            acc = Ball(0)
            c = self.modulus
            for j, a in enumerate(self.coeffs):
                if a:
                    acc = acc + a * (tau * j / c).cos()
            return acc

    def numeric_imag(self, precision_bits: int = 128) -> Ball:
        with precision(precision_bits):
            tau = 2 * Ball.pi()
            acc = Ball(0)
            c = self.modulus
            for j, a in enumerate(self.coeffs):
                if a:
                    acc = acc + a * (tau * j / c).sin()
            return acc


def is_zero_exact(element: CyclotomicElement) -> bool:
    """Deterministic algebraic zero test in Z[zeta_c]."""
    return poly_divisible_by_cyclotomic(element.coeffs, element.modulus)


def is_zero_by_remainder(element: CyclotomicElement) -> bool:
    """Direct route: remainder of the coefficient polynomial modulo Phi_c."""
    return element.to_polynomial().rem(cyclotomic_polynomial(element.modulus)).is_zero()
