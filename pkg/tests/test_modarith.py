import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tracekit.modarith import (
    InvalidModulus,
    NoSquareRoot,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    jacobi_symbol,
    mobius,
    sqrt_mod_prime_power,
    tonelli_shanks,
)

SMALL_ODD_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def test_factorize_basics():
    assert factorize(1) == []
    assert factorize(12) == [(2, 2), (3, 1)]
    assert factorize(97) == [(97, 1)]
    assert factorize(2**4 * 3**2 * 49) == [(2, 4), (3, 2), (7, 2)]


def test_phi_mobius_divisors():
    assert euler_phi(1) == 1
    assert euler_phi(9) == 6
    assert euler_phi(10) == 4
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


def test_jacobi_examples():
    assert all(jacobi_symbol(1, b) == 1 for b in (1, 3, 9, 15, 35))
    # (2/15) = (2/3)(2/5) = (-1)(-1)
    assert jacobi_symbol(2, 15) == 1
    assert jacobi_symbol(3, 9) == 0
    with pytest.raises(ValueError):
        jacobi_symbol(1, 4)


def _legendre_euler(a, q):
    r = pow(a % q, (q - 1) // 2, q)
    return -1 if r == q - 1 else r


def test_jacobi_matches_euler_criterion():
    for q in SMALL_ODD_PRIMES:
        for a in range(1, q):
            assert jacobi_symbol(a, q) == _legendre_euler(a, q)


@given(st.integers(min_value=-500, max_value=500),
       st.integers(min_value=-500, max_value=500),
       st.sampled_from([3, 5, 9, 15, 21, 35, 45, 105]))
def test_jacobi_multiplicative_in_top(a, b, n):
    assert jacobi_symbol(a * b, n) == jacobi_symbol(a, n) * jacobi_symbol(b, n)


@given(st.integers(min_value=-500, max_value=500),
       st.sampled_from([3, 5, 7, 9, 15]), st.sampled_from([3, 5, 7, 9, 15]))
def test_jacobi_multiplicative_in_bottom(a, m, n):
    assert jacobi_symbol(a, m * n) == jacobi_symbol(a, m) * jacobi_symbol(a, n)


def test_tonelli_examples():
    # squares mod 7: 3^2 = 2
    assert tonelli_shanks(2, 7) in (3, 4)
    with pytest.raises(NoSquareRoot):
        tonelli_shanks(5, 3)


def test_sqrt_mod_prime_power_examples():
    # 2^2 = 4 mod 9, canonical representative in [0, 9/2]
    assert sqrt_mod_prime_power(4, 3, 2) == 2
    assert sqrt_mod_prime_power(2, 7, 1) == 3
    with pytest.raises(NoSquareRoot):
        sqrt_mod_prime_power(5, 3, 1)
    with pytest.raises(InvalidModulus):
        sqrt_mod_prime_power(1, 4, 2)
    with pytest.raises(InvalidModulus):
        sqrt_mod_prime_power(1, 9, 2)


@settings(deadline=None)
@given(st.data())
def test_sqrt_mod_prime_power_roundtrip(data):
    q = data.draw(st.sampled_from(SMALL_ODD_PRIMES))
    beta = data.draw(st.integers(min_value=1, max_value=4))
    mod = q**beta
    t = data.draw(st.integers(min_value=1, max_value=mod - 1).filter(lambda v: v % q != 0))
    a = t * t % mod
    r = sqrt_mod_prime_power(a, q, beta)
    assert (r * r - a) % mod == 0
    assert 0 <= r <= mod // 2


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
