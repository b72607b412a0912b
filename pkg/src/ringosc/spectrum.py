"""Spectral data for the oscillator potential with angular barrier terms

    V(r, theta) = a1^2 r^2 + (a2^2 / sin^2 theta + a3^2 cot^2 theta) / r^2.

Separating the Schroedinger equation in spherical coordinates leaves a
radial oscillator equation carrying the separation constant ell(ell + 1)
and an angular equation whose bound solutions fix that constant.  Both
become instances of the template equation in ``nu_solver`` after the
substitutions y = 1 + cos(theta) (angular) and y proportional to r^2
(radial); this module builds those instances, solves the termination
rules, and assembles the un-normalized wavefunction pieces.

Energies are reported in units of the level spacing scale

    xi = sqrt(hbar^2 a1^2 / (2 M)),

so in natural units (hbar = M = 1) the ladder reads E/xi = 4n + 2 ell + 3.

Conventions adopted here:

* The separation constant generally gives a non-integer effective
  ell_eff = L + 1/2.  Both interpretations of the bracketed integer rule
  are exposed: ``AngularSolution.ell_eff`` keeps the exact real value
  (used anywhere the radial equation is actually evaluated) and
  ``AngularSolution.ell_int`` floors it (reporting only).
* The angular factor (1 - y)^Lambda is not real-valued on half the
  domain when Lambda is non-integer; ``angular_wavefunction`` evaluates
  it as |1 - y|^Lambda, which preserves moduli and node positions and
  never silently returns complex values.
* Wavefunctions are un-normalized throughout; norms are a quadrature
  away when needed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, UsageError
from .nu_solver import NUProblem, QuantizationMode, derive, quantization_residual, solve_bracketed
from .specfun import Hyp1F1Terminating, JacobiParams, gamma_ratio_prefactor, hyp1f1_terminating, jacobi_poly

__all__ = [
    "PotentialParams",
    "AngularSolution",
    "EnergyLevel",
    "angular_solution",
    "angular_problem",
    "angular_constant_from_quantization",
    "radial_problem",
    "radial_energy_from_quantization",
    "energy",
    "energy_over_xi",
    "energy_special_case",
    "degeneracy",
    "degeneracy_sum",
    "radial_wavefunction",
    "angular_wavefunction",
    "total_wavefunction",
    "level",
    "SPECIAL_CASES",
]


@dataclass(frozen=True)
class PotentialParams:
    """Couplings and constants of the potential.

    a1 sets the oscillator and must be positive for bound states; a2 and
    a3 are the angular couplings.  Defaults are natural units.
    """

    a1: float
    a2: float = 0.0
    a3: float = 0.0
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.a1) and self.a1 > 0.0):
            raise DomainError(f"a1 must be > 0, got {self.a1}")
        for name in ("a2", "a3"):
            if not (math.isfinite(getattr(self, name)) and getattr(self, name) >= 0.0):
                raise DomainError(f"{name} must be >= 0, got {getattr(self, name)}")
        for name in ("mass", "hbar"):
            if not (math.isfinite(getattr(self, name)) and getattr(self, name) > 0.0):
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)}")

    @property
    def xi(self) -> float:
        """Level spacing scale sqrt(hbar^2 a1^2 / (2 M))."""
        return self.hbar * self.a1 / math.sqrt(2.0 * self.mass)


def _sin_strength(p: PotentialParams, m: int) -> float:
    # coefficient of 1/sin^2 in the angular equation: m^2 + 2 M a2^2 / hbar^2
    return m * m + 2.0 * p.mass * p.a2 ** 2 / p.hbar ** 2


def _cot_strength(p: PotentialParams) -> float:
    # coefficient of cot^2 in the angular equation: 2 M a3^2 / hbar^2
    return 2.0 * p.mass * p.a3 ** 2 / p.hbar ** 2


def big_lambda(p: PotentialParams, m: int) -> float:
    """Lambda = sqrt(1 + m^2 + (2M/hbar^2)(a2^2 + a3^2))."""
    return math.sqrt(1.0 + m * m + 2.0 * p.mass * (p.a2 ** 2 + p.a3 ** 2) / p.hbar ** 2)


@dataclass(frozen=True)
class AngularSolution:
    """Angular quantum data for node count s and magnetic number m."""

    s: int
    m: int
    Lambda: float
    L: float
    ell_eff: float

    @property
    def ell_int(self) -> int:
        """Integer angular momentum by the floor reading of [L + 1/2]."""
        return math.floor(self.L + 0.5)


def angular_solution(p: PotentialParams, s: int, m: int) -> AngularSolution:
    """Closed-form angular constants Lambda and L.

    L = -1 + (1/2) sqrt((1 + 2s + 2 Lambda)^2 - 8 M a3^2 / hbar^2); the
    effective angular momentum entering the radial equation is
    ell_eff = L + 1/2.
    """
    if s < 0 or int(s) != s or m < 0 or int(m) != m:
        raise DomainError("s and m must be non-negative integers")
    lam = big_lambda(p, m)
    disc = (1.0 + 2.0 * s + 2.0 * lam) ** 2 - 8.0 * p.mass * p.a3 ** 2 / p.hbar ** 2
    if disc < 0.0:
        raise DomainError(f"no real angular solution: discriminant {disc} < 0")
    L = -1.0 + 0.5 * math.sqrt(disc)
    return AngularSolution(s=int(s), m=int(m), Lambda=lam, L=L, ell_eff=L + 0.5)


def angular_problem(p: PotentialParams, m: int, separation_constant: float) -> NUProblem:
    """Template coefficients of the angular equation in y = 1 + cos(theta).

    The unknown is the separation constant ell(ell+1).  With
    A = m^2 + 2 M a2^2/hbar^2 and B = 2 M a3^2/hbar^2 the coefficients are

        b1 = b2 = 0, b3 = 1/2,
        x1 = (ell(ell+1) + B)/4, x2 = (ell(ell+1) + B)/2, x3 = (A + B)/4.
    """
    A = _sin_strength(p, m)
    B = _cot_strength(p)
    q = separation_constant + B
    return NUProblem(beta1=0.0, beta2=0.0, beta3=0.5, xi1=0.25 * q, xi2=0.5 * q, xi3=0.25 * (A + B))


def angular_constant_from_quantization(p: PotentialParams, s: int, m: int) -> float:
    """L obtained by root-finding the standard termination rule.

    Solves for the separation constant ell(ell+1) embedded in the angular
    template coefficients, then converts the root to L via
    ell_eff = -1/2 + sqrt(1/4 + ell(ell+1)) and L = ell_eff - 1/2.
    Agreeing with ``angular_solution(p, s, m).L`` is the correctness
    check on the whole angular mapping.
    """

    def residual(separation_constant: float) -> float:
        d = derive(angular_problem(p, m, separation_constant))
        return quantization_residual(d, s, QuantizationMode.STANDARD)

    root = solve_bracketed(residual, 0.0, 8.0 * (s + 2.0) ** 2)
    ell_eff = -0.5 + math.sqrt(0.25 + root)
    return ell_eff - 0.5


def radial_problem(ell: float, e_over_xi: float) -> NUProblem:
    """Template coefficients of the reduced radial equation.

    After stripping the asymptotic factor y^mu e^(-y/2) with
    mu = (ell + 1)/2 from the radial oscillator equation in
    y = sqrt(2M) a1 r^2 / hbar, the remainder satisfies the template with

        b1 = 2 mu + 1/2, b2 = 1, b3 = 0,
        x1 = x3 = 0, x2 = E/(4 xi) - mu - 1/4,

    i.e. the energy sits in the linear-in-y coefficient.
    """
    mu = 0.5 * (ell + 1.0)
    return NUProblem(
        beta1=2.0 * mu + 0.5,
        beta2=1.0,
        beta3=0.0,
        xi1=0.0,
        xi2=0.25 * e_over_xi - mu - 0.25,
        xi3=0.0,
    )


def radial_energy_from_quantization(n: int, ell: float) -> float:
    """E/xi from root-finding the termination rule on the radial template.

    Uses the standard rule with b3 = 0 substituted (its b3-proportional
    terms vanish identically), which is the rule that terminates the
    confluent series of the radial solutions.  The root must land on the
    ladder 4n + 2 ell + 3.
    """

    def residual(e_over_xi: float) -> float:
        return quantization_residual(derive(radial_problem(ell, e_over_xi)), n, QuantizationMode.STANDARD)

    return solve_bracketed(residual, 0.0, 8.0 * (n + ell + 2.0))


def energy_over_xi(n: int, ell: float) -> float:
    """Dimensionless level 4n + 2 ell + 3."""
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a non-negative integer, got {n}")
    if ell < 0.0:
        raise DomainError(f"ell must be >= 0, got {ell}")
    return 4.0 * n + 2.0 * ell + 3.0

def energy(p: PotentialParams, n: int, ell: float) -> float:
    """Bound-state energy xi (4n + 2 ell + 3); linear in both quantum numbers."""
    return p.xi * energy_over_xi(n, ell)


SPECIAL_CASES = ("a2_only", "a3_only", "oscillator")


def energy_special_case(p: PotentialParams, case: str, N: int, s: int, m: int) -> float:
    """Energy xi [2(N + ell) + 3] for the reduced-coupling cases.

    The integer ell is built from the case-specific angular constants
    (floor reading of the bracket):

    * ``a2_only``    (requires a3 = 0): Lambda keeps a2 only, L = -1/2 + Lambda + s
    * ``a3_only``    (requires a2 = 0): Lambda keeps a3 only,
                     L = -1 + (1/2) sqrt((1 + 2 Lambda + 2s)^2 - 8 M a3^2/hbar^2)
    * ``oscillator`` (requires a2 = a3 = 0): Lambda = sqrt(1 + m^2), ell = [Lambda + s]

    N = 2n counts even radial excitations, so the oscillator case equals
    the ladder 4n + 2 ell + 3.  Note the ground configuration keeps
    ell = [Lambda + s] >= 1 even for s = m = 0; that offset against the
    textbook oscillator is a property of these closed forms, preserved
    as stated.
    """
    if N < 0 or int(N) != N:
        raise DomainError(f"N must be a non-negative integer, got {N}")
    if s < 0 or int(s) != s or m < 0 or int(m) != m:
        raise DomainError("s and m must be non-negative integers")
    two_m_over_h2 = 2.0 * p.mass / p.hbar ** 2
    if case == "a2_only":
        if p.a3 != 0.0:
            raise UsageError("a2_only case requires a3 == 0")
        lam = math.sqrt(1.0 + m * m + two_m_over_h2 * p.a2 ** 2)
        L = -0.5 + lam + s
    elif case == "a3_only":
        if p.a2 != 0.0:
            raise UsageError("a3_only case requires a2 == 0")
        lam = math.sqrt(1.0 + m * m + two_m_over_h2 * p.a3 ** 2)
        disc = (1.0 + 2.0 * lam + 2.0 * s) ** 2 - 8.0 * p.mass * p.a3 ** 2 / p.hbar ** 2
        if disc < 0.0:
            raise DomainError(f"no real angular solution: discriminant {disc} < 0")
        L = -1.0 + 0.5 * math.sqrt(disc)
    elif case == "oscillator":
        if p.a2 != 0.0 or p.a3 != 0.0:
            raise UsageError("oscillator case requires a2 == a3 == 0")
        lam = math.sqrt(1.0 + m * m)
        L = -0.5 + lam + s
    else:
        raise UsageError(f"unknown case {case!r}; expected one of {SPECIAL_CASES}")
    ell = math.floor(L + 0.5)
    return p.xi * (2.0 * (N + ell) + 3.0)


def degeneracy(n_prime: int) -> int:
    """Degeneracy (1 + n')^2 of the level with n' = 2n + ell.

    This is the closed form of the sum of 2 ell + 1 over ell = 0..n',
    i.e. the counting that runs ell over every integer up to n' without
    a parity constraint; ``degeneracy_sum`` is the loop it closes.
    """
    if n_prime < 0 or int(n_prime) != n_prime:
        raise DomainError(f"n_prime must be a non-negative integer, got {n_prime}")
    return (1 + int(n_prime)) ** 2


def degeneracy_sum(n_prime: int, parity_constrained: bool = False) -> int:
    """Brute-force degeneracy count, Sum of (2 ell + 1).

    With ``parity_constrained`` the sum keeps only ell of the same parity
    as n' (the counting with n' - ell even, which gives the familiar
    (n'+1)(n'+2)/2 instead).  The unconstrained rule is what the closed
    form ``degeneracy`` uses.
    """
    if n_prime < 0 or int(n_prime) != n_prime:
        raise DomainError(f"n_prime must be a non-negative integer, got {n_prime}")
    start = n_prime % 2 if parity_constrained else 0
    step = 2 if parity_constrained else 1
    return sum(2 * ell + 1 for ell in range(start, int(n_prime) + 1, step))


def radial_variable(p: PotentialParams, r: float) -> float:
    """y = sqrt(2M) a1 r^2 / hbar."""
    return math.sqrt(2.0 * p.mass) * p.a1 * r * r / p.hbar


def radial_wavefunction(p: PotentialParams, n: int, ell: float, r: float) -> float:
    """Un-normalized reduced radial function f(r) = y^mu e^(-y/2) h(y).

    h is the Gamma-ratio prefactor times the terminating confluent series
    1F1(-n; 3/2 + ell; y); mu = (ell + 1)/2, so f vanishes at the origin
    and decays as a Gaussian.  Finite for every r >= 0.
    """
    if r < 0.0:
        raise DomainError(f"r must be >= 0, got {r}")
    y = radial_variable(p, r)
    mu = 0.5 * (ell + 1.0)
    prefactor = gamma_ratio_prefactor(int(n), ell)
    series = hyp1f1_terminating(Hyp1F1Terminating(n=int(n), b=1.5 + ell, y=y))
    return y ** mu * math.exp(-0.5 * y) * prefactor * series


def angular_wavefunction(sol: AngularSolution, theta: float) -> float:
    """Un-normalized angular function at interior theta.

    Evaluates y^(1 + Lambda) (1 - y)^Lambda P_s^(Lambda, Lambda)(1 - y)
    at y = 1 + cos(theta), with the (1 - y)^Lambda factor taken as
    |1 - y|^Lambda: for non-integer Lambda the literal power is not
    real-valued on theta < pi/2, and the modulus is what node and zero
    diagnostics need.  theta = 0 and pi are coordinate singularities and
    rejected.
    """
    if not 0.0 < theta < math.pi:
        raise DomainError(f"theta must lie strictly inside (0, pi), got {theta}")
    y = 1.0 + math.cos(theta)
    w = 1.0 - y
    jac = jacobi_poly(JacobiParams(degree=sol.s, alpha=sol.Lambda, beta=sol.Lambda), w)
    return y ** (1.0 + sol.Lambda) * abs(w) ** sol.Lambda * jac


def total_wavefunction(
    p: PotentialParams,
    n: int,
    sol: AngularSolution,
    r: float,
    theta: float,
    phi: float = 0.0,
    phi_sign: int = -1,
) -> complex:
    """Un-normalized product wavefunction f(r) Theta(theta) e^(+-i m phi).

    The radial factor is evaluated at the exact effective ell_eff of the
    angular solution.  Real (zero imaginary part) whenever m = 0; the
    modulus is independent of phi for every m.
    """
    if phi_sign not in (-1, 1):
        raise DomainError("phi_sign must be -1 or +1")
    radial = radial_wavefunction(p, n, sol.ell_eff, r)
    ang = angular_wavefunction(sol, theta)
    return radial * ang * cmath.exp(1j * phi_sign * sol.m * phi)


@dataclass(frozen=True)
class EnergyLevel:
    """One row of a level table, energies in units of xi."""

    n: int
    ell: float
    e_over_xi: float
    n_prime: int | None
    degeneracy: int | None


def level(n: int, ell: float) -> EnergyLevel:
    """Level data for quantum numbers (n, ell).

    n' = 2n + ell and the (1 + n')^2 degeneracy are only defined for
    integer ell and left as None otherwise.
    """
    e = energy_over_xi(n, ell)
    if float(ell).is_integer():
        n_prime = int(2 * n + int(ell))
        return EnergyLevel(int(n), ell, e, n_prime, degeneracy(n_prime))
    return EnergyLevel(int(n), ell, e, None, None)
