"""Counting estimates: how rare are order-dividing-k permutations, and does
imposing ~n local recurrence constraints still leave any?

P = count(n, k) / n! is computed from the exact big-integer count;
K = n^((2*eps + eps_prime) * n) bounds the number of functions satisfying
the local constraints up to the allowed defects (it deliberately counts
functions, not permutations).  Under an independence guess the expected
number of good permutations is P * K, so log(P * K) < 0 says the guess
predicts none, > 0 predicts many.  For comparison the report carries the
model coefficient 2*eps + eps_prime - 1/k: since log P ~ -(1/k) n log n,
the model predicts log(P*K) ~ (2*eps + eps_prime - 1/k) n log n.

All logs are natural and carried at 200-bit precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import perm as permmod
from .approx import to_fraction

__all__ = ["HeuristicReport", "heuristic_report", "PRECISION_BITS"]

PRECISION_BITS = 200


@dataclass(frozen=True)
class HeuristicReport:
    n: int
    k: int
    eps: Fraction
    eps_prime: Fraction
    count: int
    log_P: mpmath.mpf
    log_K: mpmath.mpf
    log_PK: mpmath.mpf
    log_factorial: mpmath.mpf
    asymptotic_ratio: mpmath.mpf
    pk_model_coeff: Fraction
    log_PK_model: mpmath.mpf


def _log_factorial(n: int) -> mpmath.mpf:
    # summing logs avoids building the factorial; exactness is not needed,
    # only reproducibility at the fixed precision
    total = mpmath.mpf(0)
    for i in range(2, n + 1):
        total += mpmath.ln(i)
    return total


def heuristic_report(n: int, k: int, eps, eps_prime, *,
                     max_n: int = 5000) -> HeuristicReport:
    """Exact-count ingredients of the independence estimate at (n, k)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > max_n:
        raise ValueError(f"n={n} over the practicality cap {max_n}")
    if k < 2:
        raise ValueError("k must be >= 2")
    eps = to_fraction(eps)
    eps_prime = to_fraction(eps_prime)
    if eps < 0 or eps_prime < 0:
        raise ValueError("defect rates must be >= 0")

    count = permmod.count_order_dividing(n, k)
    coeff = 2 * eps + eps_prime
    model_coeff = coeff - Fraction(1, k)
    with mpmath.workprec(PRECISION_BITS):
        log_fact = _log_factorial(n)
        log_count = mpmath.ln(mpmath.mpf(count))
        log_P = log_count - log_fact
        nlogn = mpmath.mpf(n) * mpmath.ln(n)
        log_K = mpmath.mpf(coeff.numerator) / coeff.denominator * nlogn
        log_PK = log_P + log_K
        ratio = log_count / log_fact if n > 1 else mpmath.mpf(1)
        model = mpmath.mpf(model_coeff.numerator) / model_coeff.denominator * nlogn
    return HeuristicReport(
        n=n,
        k=k,
        eps=eps,
        eps_prime=eps_prime,
        count=count,
        log_P=log_P,
        log_K=log_K,
        log_PK=log_PK,
        log_factorial=log_fact,
        asymptotic_ratio=ratio,
        pk_model_coeff=model_coeff,
        log_PK_model=model,
    )
