"""tracekit: certified desk-scale computations around Kloosterman sums,
large-order Bessel functions, truncated Petersson averages, and the
Chebyshev moment measures, plus the weight-sequence experiments that
exhibit the discrepancy lower-bound quantities."""

from .balls import Ball, PrecisionExhausted, precision
from .bessel import BesselEval, bessel_j, bessel_j_backward, transition_eval, verify_ratio_bound
from .chebyshev import (
    chebyshev_x,
    derivative_bound_check,
    poly_q,
    poly_y,
    verify_composition,
    x_derivative_ratio,
)
from .cyclotomic import (
    CyclotomicElement,
    cyclotomic_polynomial,
    is_zero_by_remainder,
    is_zero_exact,
)
from .experiments import (
    ExperimentReport,
    ReportRow,
    WeightSequenceEntry,
    emit_report,
    load_goldens,
    theorem1_experiment,
    theorem2_experiment,
    weight_sequence,
)
from .intpoly import IntPolynomial
from .kloosterman import (
    Certificate,
    CertificateKind,
    DecompositionPlan,
    KloostermanResult,
    NotCoprime,
    brute_force_kloosterman,
    decompose,
    exact_kloosterman,
    nonvanishing_certificate,
    salie_evaluate,
    verify_decomposition,
)
from .measures import (
    MeasureSpec,
    QuadratureNotConverged,
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
from .modarith import (
    InvalidModulus,
    NoSquareRoot,
    euler_phi,
    jacobi_symbol,
    mobius,
    sqrt_mod_prime_power,
)
from .petersson import (
    AsymptoticCheck,
    PeterssonValue,
    TailNotCertifiable,
    WindowViolation,
    asymptotic_check,
    delta_truncated,
    error_envelope,
    small_sum_check,
    window_holds,
)

__version__ = "0.1.0"
