"""Kloosterman sums S(m, n, c): exact cyclotomic values, certified numerics,
the closed form for odd prime-power moduli, multiplicative decomposition of
S(1, p^{2n}, N), and machine-checkable non-vanishing certificates.

S(m, n, c) = sum over units x mod c of e((m x + n xbar) / c).  The sum is a
real algebraic integer; here it is stored exactly as a CyclotomicElement
(multiplicity vector over c-th roots of unity) next to a Ball enclosure of
its real value, plus a certificate describing why it is zero or not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .balls import Ball, precision
from .cyclotomic import CyclotomicElement, is_zero_exact
from .modarith import (
    InvalidModulus,
    NoSquareRoot,
    euler_phi,
    factorize,
    is_prime,
    jacobi_symbol,
    sqrt_mod_prime_power,
)

DEFAULT_PRECISION_BITS = 128


class NotCoprime(ValueError):
    """Arguments violate a gcd(p, N) = 1 style precondition."""


class CertificateKind(Enum):
    ZERO_EXACT = "ZeroExact"
    NONZERO_CYCLOTOMIC = "NonzeroByCyclotomic"
    NONZERO_PRIME_REDUCTION = "NonzeroByPrimeReduction"
    NONZERO_SALIE = "NonzeroBySalie"
    NONZERO_TABLE = "NonzeroByTable"


@dataclass(frozen=True)
class Certificate:
    """Witness that a Kloosterman sum vanishes or provably does not.

    residue      -- image of the sum in F_q under zeta -> 1 (prime reduction)
    salie_value  -- closed-form evaluation bounded away from zero
    parts        -- per-factor certificates for composite levels
    """

    kind: CertificateKind
    residue: int | None = None
    salie_value: Ball | None = None
    parts: tuple["FactorCertificate", ...] | None = None

    @property
    def is_nonzero(self) -> bool:
        return self.kind is not CertificateKind.ZERO_EXACT

    @property
    def is_zero(self) -> bool:
        return self.kind is CertificateKind.ZERO_EXACT

    @property
    def name(self) -> str:
        return self.kind.value


@dataclass(frozen=True)
class FactorCertificate:
    a: int
    b: int
    modulus: int
    certificate: Certificate


@dataclass(frozen=True)
class KloostermanResult:
    m: int
    n: int
    c: int
    exact: CyclotomicElement
    numeric: Ball
    certificate: Certificate


def exact_kloosterman(m: int, n: int, c: int) -> CyclotomicElement:
    """Exact multiplicity vector of S(m, n, c) over the c-th roots of unity."""
    if c < 1:
        raise ValueError("modulus must be positive")
    if c == 1:
        return CyclotomicElement.integer(1, 1)
    coeffs = [0] * c
    m %= c
    n %= c
    for x in range(1, c):
        if math.gcd(x, c) != 1:
            continue
        xbar = pow(x, -1, c)
        coeffs[(m * x + n * xbar) % c] += 1
    return CyclotomicElement(c, tuple(coeffs))


def brute_force_kloosterman(m: int, n: int, c: int,
                            precision_bits: int = DEFAULT_PRECISION_BITS) -> KloostermanResult:
    """Direct evaluation of S(m, n, c): exact element, enclosure, certificate.

    S(m, n, 1) = 1 (the empty-modulus convention); negative m, n reduce mod c.
    """
    exact = exact_kloosterman(m, n, c)
    numeric = exact.numeric(precision_bits)
    if is_zero_exact(exact):
        cert = Certificate(CertificateKind.ZERO_EXACT)
    else:
        cert = Certificate(CertificateKind.NONZERO_CYCLOTOMIC)
    return KloostermanResult(m, n, c, exact, numeric, cert)


def salie_evaluate(a: int, b: int, q: int, beta: int,
                   precision_bits: int = DEFAULT_PRECISION_BITS) -> Ball:
    """Closed-form value of S(a, b, q^beta) for odd prime q, beta >= 2.

    With l'^2 = a b (mod q^beta) this is
        2 (l'/q^beta) sqrt(q^beta) Re(eps e^{4 pi i l' / q^beta}),
    eps = 1 for q^beta = 1 (mod 4) and eps = i for q^beta = 3 (mod 4).
    The canonical root l' in [0, q^beta/2] is used; the value is invariant
    under l' -> q^beta - l' because the Jacobi-symbol sign of -1 cancels the
    cosine/sine parity, and the sweep against brute force locks this in.
    """
    if q % 2 == 0 or beta < 2:
        raise InvalidModulus("Salie evaluation needs an odd prime modulus with exponent >= 2")
    if not is_prime(q):
        raise InvalidModulus(f"{q} is not prime")
    if (a * b) % q == 0:
        raise NoSquareRoot("a*b must be a unit modulo q")
    c = q**beta
    lprime = sqrt_mod_prime_power((a * b) % c, q, beta)
    sign = jacobi_symbol(lprime, c)
    with precision(precision_bits):
        angle = 4 * Ball.pi() * lprime / c
        osc = angle.cos() if c % 4 == 1 else -angle.sin()
        return 2 * sign * Ball(c).sqrt() * osc


@dataclass(frozen=True)
class DecompositionPlan:
    """Factorization of S(1, p^{2n}, N) into prime-power Kloosterman sums.

    With N = prod q_i^{beta_i}, l_i = q_i^{beta_i}, cofactors
    c_i = N / prod_{j<=i} l_j and multipliers m_i = prod_{j<=i} lbar_j(c_j),
    the factors are (a_i, a_i p^{2n}, l_i) with a_i = m_{i-1} cbar_i(l_i).
    """

    level: int
    p: int
    n: int
    prime_powers: tuple[tuple[int, int], ...]
    cofactors: tuple[int, ...]
    multipliers: tuple[int, ...]
    factors: tuple[tuple[int, int, int], ...]

    def exact_product(self) -> CyclotomicElement:
        """Product of the exact factor values, embedded in Z[zeta_N]."""
        acc = CyclotomicElement.integer(self.level, 1)
        for a, b, modulus in self.factors:
            acc = acc * exact_kloosterman(a, b, modulus).embed(self.level)
        return acc

    def numeric_product(self, precision_bits: int = DEFAULT_PRECISION_BITS) -> Ball:
        with precision(precision_bits):
            acc = Ball(1)
            for a, b, modulus in self.factors:
                acc = acc * exact_kloosterman(a, b, modulus).numeric(precision_bits)
            return acc


def decompose(p: int, n: int, N: int) -> DecompositionPlan:
    """Multiplicative decomposition plan for S(1, p^{2n}, N), gcd(p, N) = 1."""
    if N < 2:
        raise ValueError("decomposition needs N >= 2")
    if math.gcd(p, N) != 1:
        raise NotCoprime(f"gcd({p}, {N}) != 1")
    if n < 1:
        raise ValueError("n must be a positive integer")
    pp = tuple(factorize(N))
    ls = [q**e for q, e in pp]
    t = len(ls)
    cofactors = []
    running = 1
    for l in ls:
        running *= l
        cofactors.append(N // running)
    multipliers = [1]
    for i in range(t - 1):
        multipliers.append(multipliers[-1] * pow(ls[i], -1, cofactors[i]) % cofactors[i])
    pe = p ** (2 * n)
    factors = []
    for i, l in enumerate(ls):
        ci = cofactors[i]
        if ci == 1:
            a = multipliers[i] % l
        else:
            a = multipliers[i] * pow(ci, -1, l) % l
        factors.append((a, a * pe % l, l))
    return DecompositionPlan(N, p, n, pp, tuple(cofactors), tuple(multipliers), tuple(factors))


def verify_decomposition(plan: DecompositionPlan) -> bool:
    """Exact check that the factor product equals the full sum in Z[zeta_N]."""
    full = exact_kloosterman(1, plan.p ** (2 * plan.n), plan.level)
    return is_zero_exact(plan.exact_product() - full)


def _certify_factor(a: int, b: int, q: int, beta: int,
                    precision_bits: int) -> Certificate:
    l = q**beta
    if q == 2:
        if beta <= 2:
            # S(1, odd^2, 2) = 1 and S(1, odd^2, 4) = -2: table values
            return Certificate(CertificateKind.NONZERO_TABLE)
        # modulus 8 and above: run the exact test and report honestly
        element = exact_kloosterman(a, b, l)
        if is_zero_exact(element):
            return Certificate(CertificateKind.ZERO_EXACT)
        return Certificate(CertificateKind.NONZERO_CYCLOTOMIC)
    if beta == 1:
        # reduction zeta -> 1 maps the sum to phi(q) = q - 1 != 0 in F_q
        return Certificate(CertificateKind.NONZERO_PRIME_REDUCTION, residue=(q - 1) % q)
    bits = precision_bits
    for _ in range(3):
        value = salie_evaluate(a, b, q, beta, bits)
        if value.is_nonzero():
            return Certificate(CertificateKind.NONZERO_SALIE, salie_value=value)
        bits *= 2
    # closed form inconclusive at high precision: fall back to the exact test
    element = exact_kloosterman(a, b, l)
    if is_zero_exact(element):
        return Certificate(CertificateKind.ZERO_EXACT)
    return Certificate(CertificateKind.NONZERO_CYCLOTOMIC)


def nonvanishing_certificate(p: int, n: int, N: int,
                             precision_bits: int = DEFAULT_PRECISION_BITS) -> Certificate:
    """Certificate for S(1, p^{2n}, N) via the multiplicative decomposition.

    Every prime-power factor gets its own certificate (field reduction for
    odd primes, the closed form for odd prime powers, table values for
    moduli 2 and 4, the exact test for 2-powers >= 8).  For composite N the
    reported kind is that of the largest factor; if any factor is exactly
    zero the whole product is ZeroExact.
    """
    if N == 1:
        # S(m, n, 1) = 1
        return Certificate(CertificateKind.NONZERO_TABLE)
    plan = decompose(p, n, N)
    parts = []
    for (a, b, l), (q, beta) in zip(plan.factors, plan.prime_powers):
        parts.append(FactorCertificate(a, b, l, _certify_factor(a, b, q, beta, precision_bits)))
    parts = tuple(parts)
    if any(part.certificate.is_zero for part in parts):
        return Certificate(CertificateKind.ZERO_EXACT, parts=parts)
    lead = max(parts, key=lambda part: part.modulus)
    return Certificate(lead.certificate.kind,
                       residue=lead.certificate.residue,
                       salie_value=lead.certificate.salie_value,
                       parts=parts)


def trivial_bound_holds(result: KloostermanResult) -> bool:
    """|S(m, n, c)| <= phi(c), checked against the enclosure."""
    return result.numeric.abs_upper() <= euler_phi(result.c) + 2 * result.numeric.radius + 1e-9
