"""Calibration run behind src/tracekit/goldens.json.

Measures every quantity the golden file freezes, prints the raw numbers and
the suggested frozen values (floors shrunk / caps grown by a safety margin).
Rerun after any numerical change and compare before touching the goldens.
"""

import json
import math
import time

from tracekit.balls import Ball, precision
from tracekit.bessel import bessel_j
from tracekit.chebyshev import derivative_bound_check, x_derivative_ratio
from tracekit.experiments import THEOREM1, THEOREM2, weight_sequence
from tracekit.kloosterman import brute_force_kloosterman
from tracekit.petersson import asymptotic_check, delta_truncated

PRECISION = 192


def thm_constants():
    print("== theorem-1 sequence p=3 N=5 ==")
    floors, proxies = [], []
    for entry in weight_sequence(3, 5, 6, THEOREM1):
        if entry.k_n < 28:
            continue
        k = entry.k_n
        value = delta_truncated(k, 5, 1, 3 ** (2 * entry.n), precision_bits=PRECISION).value
        with precision(PRECISION):
            floor = float(value.abs_lower() * Ball(k - 1).cbrt().lower)
        c1_meas = (float(value.abs_lower()) / entry.n**2
                   * (k - 1) ** (1 / 3) * math.log(k) ** 2)
        floors.append(floor)
        proxies.append(c1_meas)
        print(f"  n={entry.n} k={k}: |D|(k-1)^(1/3)={floor:.5f}  c1_meas={c1_meas:.5f}")
    print(f"  -> min floor {min(floors):.5f}, min c1 {min(proxies):.5f}")

    print("== theorem-2 sequence p=3 N=5 ==")
    floors2, proxies2 = [], []
    for entry in weight_sequence(3, 5, 2, THEOREM2):
        if entry.k_n < 28:
            continue
        k = entry.k_n
        with precision(PRECISION):
            total = Ball(0)
            for i in range(entry.n + 1):
                total = total + delta_truncated(k, 5, 1, 3 ** (4 * i + 2),
                                                precision_bits=PRECISION).value
            floor = float(total.abs_lower() * Ball(k - 1).cbrt().lower)
        c3_meas = (float(total.abs_lower()) / max(entry.n, 1) ** 3
                   * math.log(k) ** 3 * k ** (1 / 3))
        floors2.append(floor)
        proxies2.append(c3_meas)
        print(f"  n={entry.n} k={k}: |T|(k-1)^(1/3)={floor:.5f}  c3_meas={c3_meas:.5f}")
    print(f"  -> min floor {min(floors2):.5f}, min c3 {min(proxies2):.5f}")
    return min(floors), min(proxies), min(floors2), min(proxies2)


def window_grid():
    """All window tuples with p in {3,5}, coprime N in 3..6, 28 <= k <= 600."""
    out = []
    for p in (3, 5):
        for N in (3, 4, 5, 6):
            if math.gcd(p, N) != 1:
                continue
            for entry in weight_sequence(p, N, 8, THEOREM1):
                if 28 <= entry.k_n <= 600 and entry.window_ok:
                    out.append((p, N, entry.n, entry.k_n))
    return out


def envelope_grid():
    print("== theorem-2.4 window grid ==")
    worst_ratio = 0.0
    floor = math.inf
    for p, N, n, k in window_grid():
        check = asymptotic_check(k, N, 1, p ** (2 * n), PRECISION)
        ratio = float(check.remainder.abs_upper()) / check.error_envelope
        worst_ratio = max(worst_ratio, ratio)
        s = brute_force_kloosterman(1, p ** (2 * n), N, 128)
        tag = ""
        if s.certificate.is_nonzero:
            with precision(PRECISION):
                gap = abs(check.truncated.value - check.truncated.delta_term)
                f = float(gap.abs_lower() * Ball(k - 1).cbrt().lower)
            floor = min(floor, f)
            tag = f" floor={f:.5f}"
        print(f"  p={p} N={N} n={n} k={k}: |rem|/env={ratio:.3e}{tag}")
    print(f"  -> worst remainder/envelope {worst_ratio:.4g}, min (ii)-floor {floor:.5f}")
    return worst_ratio, floor


def chebyshev_caps():
    qd_max = q3_max = xd_max = 0.0
    for n in list(range(1, 41)) + [50]:
        qd, q3 = derivative_bound_check(n)
        xd = x_derivative_ratio(n)
        qd_max, q3_max, xd_max = max(qd_max, qd), max(q3_max, q3), max(xd_max, xd)
    print(f"== chebyshev grid ratios ==  max |Q'|/n^3 = {qd_max:.4f}, "
          f"max |Q(3)|/n^2 = {q3_max:.4f}, max |X'|/n^2 = {xd_max:.4f}")
    return qd_max, q3_max, xd_max


def main():
    t0 = time.time()
    c0_raw, c1_raw, c2_raw, c3_raw = thm_constants()
    worst_env, t24_floor = envelope_grid()
    qd, q3, xd = chebyshev_caps()
    suggestion = {
        "calibrated_on": "p=3,N=5 thm1 n<=6 / thm2 n<=2; 2.4-grid p in {3,5}, N in 3..6, k<=600; "
                         "chebyshev n<=50; 192-bit precision",
        "thm1_floor_c0": round(0.9 * c0_raw, 4),
        "thm1_proxy_c1": round(0.88 * c1_raw, 4),
        "thm2_floor_c2": round(0.875 * c2_raw, 4),
        "thm2_bound_c3": 5.0,
        "head_envelope_constant": 1.0,
        "envelope_constant": 5.0,
        "t24ii_floor": round(0.9 * t24_floor, 4),
        "q_deriv_cap": round(1.15 * qd, 3),
        "q_value_cap": round(1.15 * q3, 3),
        "x_deriv_cap": round(1.15 * xd, 3),
    }
    print("\nsuggested goldens.json:")
    print(json.dumps(suggestion, indent=2))
    print(f"(calibration took {time.time() - t0:.1f}s)")


if __name__ == "__main__":
    main()
