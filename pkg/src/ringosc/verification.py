"""Self-contained cross-check suite behind the ``verify`` subcommand.

Each check pits one implementation route against an independent one
(quantization root vs closed-form ladder, closed form vs certified sum,
closed form vs adaptive quadrature, analytic derivative vs finite
difference, closed-form count vs brute-force loop) and reports the
measured discrepancy next to its tolerance.  One informational entry
documents the known gap between the two 1d closed-form variants without
failing the run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import quad

from . import partition, spectrum, thermo

__all__ = ["CheckResult", "run_all", "ALL_CHECKS"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    info: str = ""
    informational: bool = False


def check_radial_spectrum() -> CheckResult:
    worst = 0.0
    for n in range(4):
        for ell in range(4):
            target = spectrum.energy_over_xi(n, ell)
            found = spectrum.radial_energy_from_quantization(n, ell)
            worst = max(worst, abs(found - target) / target)
    return CheckResult(
        "radial quantization reproduces E/xi = 4n + 2l + 3",
        worst < 1e-10,
        worst,
        1e-10,
        "(n, l) in {0..3}^2",
    )


def check_angular_constants() -> CheckResult:
    worst = 0.0
    for a2, a3 in ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)):
        p = spectrum.PotentialParams(a1=1.0, a2=a2, a3=a3)
        for s in range(4):
            for m in range(4):
                closed_form = spectrum.angular_solution(p, s, m).L
                solved = spectrum.angular_constant_from_quantization(p, s, m)
                worst = max(worst, abs(solved - closed_form) / abs(closed_form))
    return CheckResult(
        "angular quantization reproduces the closed-form L",
        worst < 1e-10,
        worst,
        1e-10,
        "s, m in {0..3}^2, (a2, a3) in {0,1}^2",
    )


def check_em3d_rational() -> CheckResult:
    value = partition.partition_em_3d_fraction(Fraction(1))
    exact = Fraction(79, 45)
    return CheckResult(
        "3d closed form at alpha = 1 equals 79/45 in rational arithmetic",
        value == exact,
        float(abs(value - exact)),
        0.0,
        f"value = {value}",
    )


def check_em3d_vs_direct(em3d_fn=None) -> CheckResult:
    em3d_fn = em3d_fn or (lambda a: partition.partition_em_3d(a).Z)
    results = []
    for alpha, tol in ((10.0, 1e-3), (50.0, 1e-4)):
        direct = partition.partition_direct(partition.PartitionSpec(partition.THREE_D, alpha)).Z
        rel = abs(em3d_fn(alpha) - direct) / direct
        results.append((alpha, rel, tol))
    worst_scaled = max(rel / tol for _, rel, tol in results)
    info = "; ".join(f"alpha={a:g}: rel={rel:.3e} (tol {tol:.0e})" for a, rel, tol in results)
    return CheckResult("3d closed form vs certified direct sum", worst_scaled < 1.0, worst_scaled, 1.0, info)


def check_em1d_vs_exact() -> CheckResult:
    worst = 0.0
    for alpha in (1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0):
        exact = partition.partition_closed_form_1d(alpha).Z
        derived = partition.partition_em_1d(alpha).Z
        worst = max(worst, abs(derived - exact) / exact)
    return CheckResult(
        "1d derived closed form vs exact geometric form",
        worst < 1e-4,
        worst,
        1e-4,
        "alpha in {1..100}",
    )


def info_em1d_variant_gap() -> CheckResult:
    derived = partition.partition_em_1d(1.0, partition.VARIANT_DERIVED).Z
    alt = partition.partition_em_1d(1.0, partition.VARIANT_PAPER).Z
    gap = abs(alt - derived) / derived
    return CheckResult(
        "1d closed-form variant gap (informational)",
        True,
        gap,
        math.inf,
        "the 'paper' variant tail -alpha^3/5400 does not follow from the "
        "summation formula at any order (the assembly gives -1/(720 alpha^3)); "
        f"rel gap at alpha=1 is {gap:.3e} and that variant turns negative "
        "beyond alpha ~ 73.7",
        informational=True,
    )


def check_convergence_integral() -> CheckResult:
    worst = 0.0
    for u in (0.5, 1.0, 2.0):
        closed = partition.convergence_integral(u)
        numeric, _ = quad(lambda x, u=u: (1.0 + x) ** 2 * math.exp(-u * (2.0 * x + 3.0)), 0.0, np.inf)
        worst = max(worst, abs(closed - numeric) / numeric)
    return CheckResult(
        "weighted Boltzmann integral: closed form vs adaptive quadrature",
        worst < 1e-10,
        worst,
        1e-10,
        "beta*xi in {0.5, 1, 2}",
    )


def check_high_t_limits() -> CheckResult:
    pt3 = thermo.thermo_point(100.0, mode=partition.THREE_D, z_method="direct")
    pt1 = thermo.thermo_point(100.0, mode=partition.ONE_D, z_method="direct")
    checks = (
        ("3d C(100) vs 3", abs(pt3.C_bar / 3.0 - 1.0), 1e-2),
        ("1d C(100) vs 1", abs(pt1.C_bar - 1.0), 1e-2),
        ("3d U(100)/alpha vs 3", abs(pt3.U_bar / 300.0 - 1.0), 2e-2),
    )
    worst_scaled = max(measured / tol for _, measured, tol in checks)
    info = "; ".join(f"{label}: {measured:.3e} (tol {tol:.0e})" for label, measured, tol in checks)
    return CheckResult("high-temperature limits", worst_scaled < 1.0, worst_scaled, 1.0, info)


def check_thermo_identities() -> CheckResult:
    grid = np.geomspace(0.5, 50.0, 200)
    worst_identity = 0.0
    for a in grid:
        pt = thermo.thermo_point(float(a), mode=partition.THREE_D, z_method="direct")
        worst_identity = max(
            worst_identity, abs(pt.U_bar - (pt.F_bar + pt.alpha_bar * pt.S_bar)) / max(1.0, abs(pt.U_bar))
        )
    worst_c = 0.0
    for a in np.geomspace(1.0, 50.0, 40):
        a = float(a)
        h = 1e-5 * a
        u_plus = thermo.thermo_point(a + h, z_method="direct").U_bar
        u_minus = thermo.thermo_point(a - h, z_method="direct").U_bar
        c_fd = (u_plus - u_minus) / (2.0 * h)
        c = thermo.thermo_point(a, z_method="direct").C_bar
        worst_c = max(worst_c, abs(c_fd - c) / abs(c))
    passed = worst_identity < 1e-9 and worst_c < 1e-5
    return CheckResult(
        "thermodynamic identities U = F + alpha S and C = dU/dalpha",
        passed,
        max(worst_identity / 1e-9, worst_c / 1e-5),
        1.0,
        f"identity rel={worst_identity:.3e} (tol 1e-9); dU/dalpha rel={worst_c:.3e} (tol 1e-5)",
    )


def check_figure_shapes() -> CheckResult:
    notes = []
    passed = True
    for mode, cap in ((partition.THREE_D, 3.0), (partition.ONE_D, 1.0)):
        spec = thermo.SweepSpec.from_grid(0.5, 100.0, 1200, "log", mode=mode, z_method="direct")
        result = thermo.sweep(spec)
        flags = result.monotonicity
        bounded = all(pt.C_bar <= cap + 1e-2 for pt in result.points)
        scan = thermo.continuity_scan(spec, jump_threshold=10.0, points=result.points)
        ok = all(flags.values()) and bounded and scan.passed
        passed = passed and ok
        notes.append(
            f"{mode}: monotone={all(flags.values())}, C<= {cap}+1e-2: {bounded}, "
            f"max jump ratio={scan.max_ratio:.2f}"
        )
    return CheckResult(
        "figure shapes: monotone curves, bounded C, no jump signature",
        passed,
        0.0,
        0.0,
        "; ".join(notes),
    )


def check_degeneracy() -> CheckResult:
    worst = 0
    for n_prime in range(51):
        diff = abs(spectrum.degeneracy_sum(n_prime) - spectrum.degeneracy(n_prime))
        worst = max(worst, diff)
    return CheckResult(
        "degeneracy: brute-force sum equals (1 + n')^2 for n' <= 50",
        worst == 0,
        float(worst),
        0.0,
    )


def _radial_ode_residual(p, n, ell, r_grid, h=1e-4):
    e = spectrum.energy(p, n, ell)
    f = np.array([spectrum.radial_wavefunction(p, n, ell, r) for r in r_grid])
    f_plus = np.array([spectrum.radial_wavefunction(p, n, ell, r + h) for r in r_grid])
    f_minus = np.array([spectrum.radial_wavefunction(p, n, ell, r - h) for r in r_grid])
    second = (f_plus - 2.0 * f + f_minus) / h ** 2
    veff = e - p.a1 ** 2 * r_grid ** 2 - ell * (ell + 1.0) * p.hbar ** 2 / (2.0 * p.mass * r_grid ** 2)
    residual = second + (2.0 * p.mass / p.hbar ** 2) * veff * f
    return np.max(np.abs(residual)) / np.max(np.abs(f))


def check_wavefunctions() -> CheckResult:
    p = spectrum.PotentialParams(a1=1.0)
    r_grid = np.linspace(0.1, 5.0, 241)
    worst_ode = 0.0
    for n in range(3):
        for ell in range(3):
            worst_ode = max(worst_ode, _radial_ode_residual(p, n, ell, r_grid))
    worst_overlap = 0.0
    for ell in range(3):
        for na in range(3):
            for nb in range(na + 1, 3):
                overlap, _ = quad(
                    lambda r: spectrum.radial_wavefunction(p, na, ell, r)
                    * spectrum.radial_wavefunction(p, nb, ell, r),
                    0.0,
                    10.0,
                    epsabs=1e-13,
                    epsrel=1e-12,
                    limit=200,
                )
                norm_a = math.sqrt(
                    quad(lambda r: spectrum.radial_wavefunction(p, na, ell, r) ** 2, 0.0, 10.0, limit=200)[0]
                )
                norm_b = math.sqrt(
                    quad(lambda r: spectrum.radial_wavefunction(p, nb, ell, r) ** 2, 0.0, 10.0, limit=200)[0]
                )
                worst_overlap = max(worst_overlap, abs(overlap) / (norm_a * norm_b))
    nodes_ok = True
    r_fine = np.linspace(1e-3, 6.0, 4001)
    for n in range(3):
        for ell in range(3):
            f = np.array([spectrum.radial_wavefunction(p, n, ell, r) for r in r_fine])
            signs = np.sign(f[np.abs(f) > 1e-13 * np.max(np.abs(f))])
            nodes = int(np.count_nonzero(signs[1:] != signs[:-1]))
            nodes_ok = nodes_ok and nodes == n
    passed = worst_ode < 1e-5 and worst_overlap < 1e-8 and nodes_ok
    return CheckResult(
        "radial wavefunctions: ODE residual, orthogonality, node counts",
        passed,
        max(worst_ode / 1e-5, worst_overlap / 1e-8),
        1.0,
        f"ode rel={worst_ode:.3e} (tol 1e-5); overlap={worst_overlap:.3e} (tol 1e-8); nodes ok={nodes_ok}",
    )


ALL_CHECKS = (
    check_radial_spectrum,
    check_angular_constants,
    check_em3d_rational,
    check_em3d_vs_direct,
    check_em1d_vs_exact,
    check_convergence_integral,
    check_high_t_limits,
    check_thermo_identities,
    check_figure_shapes,
    check_degeneracy,
    check_wavefunctions,
    info_em1d_variant_gap,
)


def run_all() -> list[CheckResult]:
    """Run every check in order; informational entries never fail."""
    return [check() for check in ALL_CHECKS]
