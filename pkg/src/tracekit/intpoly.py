"""Dense integer-coefficient polynomials with exact arithmetic.

Coefficients are Python ints indexed by degree, so nothing ever rounds.
This is the shared backbone for cyclotomic polynomials and for the
Chebyshev-type families X_n, Y_m, Q_m.
"""

from __future__ import annotations

from fractions import Fraction

from .balls import Ball


def _trim(coeffs) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim([int(c) for c in coeffs])

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls((0,) * degree + (coeff,))

    # -- basic views -----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial((other,))
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "IntPolynomial(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mon = "x" if i == 1 else f"x^{i}"
                parts.append(mon if c == 1 else f"-{mon}" if c == -1 else f"{c}*{mon}")
        return "IntPolynomial(" + " + ".join(parts).replace("+ -", "- ") + ")"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial([self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial([self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([other * c for c in self.coeffs])
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        if len(self.coeffs) > len(other.coeffs):
            longer, shorter = self.coeffs, other.coeffs
        else:
            longer, shorter = other.coeffs, self.coeffs
        for i, c in enumerate(shorter):
            if c:
                for j, d in enumerate(longer):
                    out[i + j] += c * d
        return IntPolynomial(out)

    __rmul__ = __mul__

    @staticmethod
    def _coerce(other) -> "IntPolynomial":
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial((other,))
        raise TypeError(f"cannot combine IntPolynomial with {type(other)!r}")

    def divmod(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Exact division in Z[x] by a monic divisor: quotient and remainder."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if divisor.coeffs[-1] != 1:
            raise ValueError("divmod requires a monic divisor to stay in Z[x]")
        rem = list(self.coeffs)
        d = divisor.degree
        if self.degree < d:
            return IntPolynomial.zero(), self
        quot = [0] * (self.degree - d + 1)
        dcoef = divisor.coeffs
        for i in range(self.degree, d - 1, -1):
            q = rem[i]
            if q:
                quot[i - d] = q
                for j in range(d + 1):
                    rem[i - d + j] -= q * dcoef[j]
        return IntPolynomial(quot), IntPolynomial(rem[:d])

    def rem(self, divisor: "IntPolynomial") -> "IntPolynomial":
        return self.divmod(divisor)[1]

    def exact_div(self, divisor: "IntPolynomial") -> "IntPolynomial":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def compose(self, inner: "IntPolynomial") -> "IntPolynomial":
        """self(inner(x)) by Horner's scheme in Z[x]."""
        acc = IntPolynomial.zero()
        for c in reversed(self.coeffs):
            acc = acc * inner + IntPolynomial((c,))
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    # -- evaluation ------------------------------------------------------

    def eval_int(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_fraction(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_ball(self, x: Ball) -> Ball:
        acc = Ball(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc
