"""Elementary modular arithmetic: factorization, Jacobi symbols, and square
roots modulo odd prime powers (Tonelli-Shanks plus Hensel lifting)."""

from __future__ import annotations

import math


class NoSquareRoot(ValueError):
    """The element is a quadratic non-residue for the requested modulus."""


class InvalidModulus(ValueError):
    """Modulus outside the supported shape (odd prime power, exponent >= 2)."""


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, as (prime, exponent) pairs."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


def euler_phi(n: int) -> int:
    phi = 1
    for q, e in factorize(n):
        phi *= q ** (e - 1) * (q - 1)
    return phi


def mobius(n: int) -> int:
    mu = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        mu = -mu
    return mu


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, e in factorize(n):
        divs = [d * q**j for d in divs for j in range(e + 1)]
    return sorted(divs)


def jacobi_symbol(a: int, b: int) -> int:
    """Jacobi symbol (a/b) for odd positive b, via quadratic reciprocity."""
    if b <= 0 or b % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive second argument")
    a %= b
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                result = -result
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            result = -result
        a %= b
    return result if b == 1 else 0


def tonelli_shanks(a: int, q: int) -> int:
    """A square root of a modulo an odd prime q, or NoSquareRoot."""
    a %= q
    if a == 0:
        return 0
    if jacobi_symbol(a, q) != 1:
        raise NoSquareRoot(f"{a} is a quadratic non-residue mod {q}")
    if q % 4 == 3:
        return pow(a, (q + 1) // 4, q)
    # write q - 1 = s * 2^e with s odd
    s, e = q - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    z = 2
    while jacobi_symbol(z, q) != -1:
        z += 1
    c = pow(z, s, q)
    r = pow(a, (s + 1) // 2, q)
    t = pow(a, s, q)
    m = e
    while t != 1:
        i, x = 0, t
        while x != 1:
            x = x * x % q
            i += 1
        b = pow(c, 1 << (m - i - 1), q)
        r = r * b % q
        c = b * b % q
        t = t * c % q
        m = i
    return r


def sqrt_mod_prime_power(a: int, q: int, beta: int) -> int:
    """Square root of a modulo q^beta (q odd prime, gcd(a, q) = 1).

    Tonelli-Shanks modulo q followed by Hensel lifting.  The returned
    representative is canonicalized to the smaller of the two roots,
    i.e. the one in [0, q^beta / 2].
    """
    if q % 2 == 0 or not is_prime(q):
        raise InvalidModulus(f"{q} is not an odd prime")
    if beta < 1:
        raise InvalidModulus("exponent must be positive")
    if math.gcd(a, q) != 1:
        raise NoSquareRoot(f"gcd({a}, {q}) != 1: no unit square root")
    r = tonelli_shanks(a % q, q)
    mod = q
    for _ in range(beta - 1):
        newmod = mod * q
        # lift r -> r + t*mod with (r + t*mod)^2 = a (mod newmod)
        t = ((a - r * r) // mod) * pow(2 * r, -1, q) % q
        r = (r + t * mod) % newmod
        mod = newmod
    assert (r * r - a) % mod == 0
    return min(r, mod - r)
