"""Special functions needed by the spectral and thermal modules.

Everything here is exact at desk scale: Jacobi polynomials by the
three-term recurrence, terminating confluent hypergeometric sums,
Gamma-function ratios as telescoping products, and a lookup table of
exact-rational Bernoulli numbers.  No general special-function library
is involved; these are the only pieces the rest of the package needs.

All functions are pure and hold no state, so they are safe to call from
any number of concurrent workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

__all__ = [
    "JacobiParams",
    "Hyp1F1Terminating",
    "jacobi_poly",
    "hyp1f1_terminating",
    "gamma_ratio_prefactor",
    "bernoulli",
    "BERNOULLI_K_MAX",
]


@dataclass(frozen=True)
class JacobiParams:
    """Degree and indices of a Jacobi polynomial P_s^(alpha, beta)."""

    degree: int
    alpha: float
    beta: float

    def __post_init__(self):
        if self.degree < 0 or int(self.degree) != self.degree:
            raise DomainError(f"degree must be a non-negative integer, got {self.degree}")
        for name in ("alpha", "beta"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= -1.0:
                raise DomainError(f"{name} must be finite and > -1, got {value}")


def jacobi_poly(params: JacobiParams, x: float) -> float:
    """Evaluate P_s^(alpha, beta)(x) for x in [-1, 1].

    Uses the ascending three-term recurrence, which is stable for the
    symmetric alpha == beta indices the angular solutions need and avoids
    the cancellation of the explicit series form.  The series definition
    is deliberately kept out of the library; it lives in the test suite
    as an independent oracle.
    """
    if not math.isfinite(x) or abs(x) > 1.0 + 1e-9:
        raise DomainError(f"jacobi argument must lie in [-1, 1], got {x}")
    a, b = params.alpha, params.beta
    if params.degree == 0:
        return 1.0
    prev = 1.0
    cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    for k in range(2, params.degree + 1):
        c1 = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0)
        c2 = (2.0 * k + a + b - 1.0) * (
            (2.0 * k + a + b) * (2.0 * k + a + b - 2.0) * x + a * a - b * b
        )
        c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b)
        cur, prev = (c2 * cur - c3 * prev) / c1, cur
    return cur


@dataclass(frozen=True)
class Hyp1F1Terminating:
    """Arguments of a terminating confluent series 1F1(-n; b; y).

    The first parameter is -n with n a non-negative integer, so the series
    stops after n + 1 terms.
    """

    n: int
    b: float
    y: float

    def __post_init__(self):
        if self.n < 0 or int(self.n) != self.n:
            raise DomainError(f"n must be a non-negative integer, got {self.n}")
        if not math.isfinite(self.b) or (self.b <= 0.0 and self.b == math.floor(self.b)):
            raise DomainError(f"b must not be a non-positive integer, got {self.b}")
        if not math.isfinite(self.y) or self.y < 0.0:
            raise DomainError(f"argument must be finite and >= 0, got {self.y}")


def hyp1f1_terminating(h: Hyp1F1Terminating) -> float:
    """Sum the n + 1 nonzero terms of 1F1(-n; b; y).

    Successive terms follow from the ratio (k - n) y / ((b + k)(k + 1)),
    so no factorials or Pochhammer symbols are formed explicitly.
    """
    term = 1.0
    total = 1.0
    for k in range(h.n):
        term *= (k - h.n) * h.y / ((h.b + k) * (k + 1.0))
        total += term
    return total


def gamma_ratio_prefactor(n: int, ell: float) -> float:
    """Gamma(n + 3/2 + ell) / (n! Gamma(3/2 + ell)) without Gamma calls.

    Evaluated as the telescoping product of the n ratios
    (3/2 + ell + j) / (1 + j), which stays in range for n up to ~1e3
    where a naive Gamma quotient would overflow.
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a non-negative integer, got {n}")
    if 1.5 + ell <= 0.0:
        raise DomainError(f"need 3/2 + ell > 0, got ell = {ell}")
    out = 1.0
    for j in range(int(n)):
        out *= (1.5 + ell + j) / (1.0 + j)
    return out


BERNOULLI_K_MAX = 8

# B_{2k} for k = 1..8.  Only k <= 2 enters the second-order closed forms;
# the rest give headroom for higher-order summation experiments.
_B2K = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
)


def bernoulli(k: int) -> Fraction:
    """Exact rational Bernoulli number B_{2k} for 1 <= k <= BERNOULLI_K_MAX."""
    if not 1 <= k <= BERNOULLI_K_MAX:
        raise DomainError(f"Bernoulli table covers k = 1..{BERNOULLI_K_MAX}, got {k}")
    return _B2K[k - 1]
