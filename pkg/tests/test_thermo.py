"""Tests for the thermal functions, sweeps and the jump scan."""

import math

import numpy as np
import pytest

from ringosc.errors import DomainError, SweepError, UsageError
from ringosc.partition import ONE_D, THREE_D, VARIANT_PAPER, em_3d_z_derivatives
from ringosc.thermo import (
    SweepSpec,
    continuity_scan,
    high_t_asymptotics,
    scan_jumps,
    sweep,
    thermo_point,
)


# ------------------------------------------------------------- identities


@pytest.mark.parametrize("mode", [THREE_D, ONE_D])
@pytest.mark.parametrize("z_method", ["direct", "em"])
@pytest.mark.parametrize("scheme", ["analytic", "central_difference"])
def test_u_equals_f_plus_alpha_s(mode, z_method, scheme):
    tol = 1e-9 if scheme == "analytic" else 1e-6
    for alpha in (0.7, 2.0, 13.0, 40.0):
        pt = thermo_point(alpha, mode=mode, z_method=z_method, derivative_scheme=scheme)
        assert abs(pt.U_bar - (pt.F_bar + alpha * pt.S_bar)) <= tol * max(1.0, abs(pt.U_bar))


def test_c_is_derivative_of_u():
    for alpha in np.geomspace(1.0, 50.0, 25):
        alpha = float(alpha)
        h = 1e-5 * alpha
        u_plus = thermo_point(alpha + h).U_bar
        u_minus = thermo_point(alpha - h).U_bar
        fd = (u_plus - u_minus) / (2.0 * h)
        c = thermo_point(alpha).C_bar
        assert abs(fd - c) / abs(c) < 1e-5


def test_direct_specific_heat_never_negative():
    for mode in (THREE_D, ONE_D):
        for alpha in np.geomspace(0.05, 100.0, 120):
            pt = thermo_point(float(alpha), mode=mode, z_method="direct")
            assert pt.C_bar >= -1e-9


def test_finite_difference_converges_quadratically():
    # halving the step cuts the FD-vs-analytic gap by about 4x on the
    # smooth closed form
    alpha = 2.0
    z, dz, _ = em_3d_z_derivatives(alpha)
    g1_exact = dz / z

    def g1_fd(eta_rel):
        pt = None
        eta = eta_rel * alpha
        gp = math.log(em_3d_z_derivatives(alpha + eta)[0])
        gm = math.log(em_3d_z_derivatives(alpha - eta)[0])
        return (gp - gm) / (2.0 * eta)

    err_coarse = abs(g1_fd(2e-3) - g1_exact)
    err_fine = abs(g1_fd(1e-3) - g1_exact)
    assert 3.0 < err_coarse / err_fine < 5.0


# ------------------------------------------------------------ high-T limits


def test_high_t_limits_3d():
    pt = thermo_point(100.0, mode=THREE_D, z_method="direct")
    assert pt.U_bar == pytest.approx(300.0, rel=2e-2)
    assert pt.C_bar == pytest.approx(3.0, rel=1e-2)


def test_high_t_limit_1d_is_three_times_smaller():
    pt = thermo_point(100.0, mode=ONE_D, z_method="direct")
    assert pt.C_bar == pytest.approx(1.0, rel=1e-2)


def test_high_t_asymptotics_values():
    asym = high_t_asymptotics(100.0)
    assert asym.Z == pytest.approx(250000.0, rel=1e-15)
    assert asym.U == pytest.approx(300.0, rel=1e-15)
    assert asym.C == 3.0
    assert high_t_asymptotics(1.0).C == high_t_asymptotics(777.0).C  # alpha-free


def test_em_z_approaches_asymptote_monotonically():
    ratios = []
    for alpha in (10.0, 20.0, 50.0, 100.0):
        ratios.append(em_3d_z_derivatives(alpha)[0] / high_t_asymptotics(alpha).Z)
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] == pytest.approx(1.0, rel=0.05)


# ----------------------------------------------------------------- sweeps


def test_sweep_monotonicity_flags_3d():
    spec = SweepSpec.from_grid(1.0, 100.0, 60, "log", mode=THREE_D, z_method="direct")
    result = sweep(spec)
    assert result.monotonicity == {
        "F_bar_strictly_decreasing": True,
        "U_bar_strictly_increasing": True,
        "S_bar_strictly_increasing": True,
        "C_bar_non_decreasing": True,
    }


def test_sweep_emits_in_grid_order():
    spec = SweepSpec.from_grid(0.5, 10.0, 17, "lin", mode=ONE_D)
    result = sweep(spec)
    alphas = [pt.alpha_bar for pt in result.points]
    assert alphas == sorted(alphas)
    assert len(alphas) == 17


def test_sweep_1d_values_below_3d_on_shared_grid():
    # the high-temperature regime where the degeneracy weight matters;
    # below alpha ~ 0.8 the ordering genuinely reverses
    grid = tuple(float(a) for a in np.geomspace(1.0, 100.0, 40))
    three = sweep(SweepSpec(alphas=grid, mode=THREE_D)).points
    one = sweep(SweepSpec(alphas=grid, mode=ONE_D)).points
    for pt3, pt1 in zip(three, one):
        assert pt1.U_bar <= pt3.U_bar
        assert pt1.S_bar <= pt3.S_bar
        assert pt1.C_bar <= pt3.C_bar
        assert abs(pt1.F_bar) <= abs(pt3.F_bar)


def test_specific_heat_bounded_by_limits():
    for mode, cap in ((THREE_D, 3.0), (ONE_D, 1.0)):
        spec = SweepSpec.from_grid(0.5, 100.0, 200, "log", mode=mode)
        for pt in sweep(spec).points:
            assert pt.C_bar <= cap + 1e-2


def test_sweep_error_carries_index():
    # the alternate 1d closed form goes negative at large alpha, so the
    # sweep must abort there and report where
    grid = (10.0, 50.0, 100.0)
    spec = SweepSpec(alphas=grid, mode=ONE_D, z_method="em", variant=VARIANT_PAPER)
    with pytest.raises(SweepError) as excinfo:
        sweep(spec)
    assert excinfo.value.index == 2


def test_sweep_spec_validation():
    with pytest.raises(DomainError):
        SweepSpec(alphas=(1.0, 0.5))
    with pytest.raises(DomainError):
        SweepSpec(alphas=(-1.0, 0.5))
    with pytest.raises(DomainError):
        SweepSpec(alphas=(1.0, 2.0), fd_step_rel=0.5)
    with pytest.raises(UsageError):
        SweepSpec.from_grid(1.0, 2.0, 5, "cubic")


def test_thermo_point_validation():
    with pytest.raises(DomainError):
        thermo_point(-1.0)
    with pytest.raises(UsageError):
        thermo_point(1.0, z_method="magic")
    with pytest.raises(DomainError):
        thermo_point(100.0, mode=ONE_D, z_method="em", variant=VARIANT_PAPER)


# -------------------------------------------------------------- jump scan


def test_scan_smooth_curve_passes():
    spec = SweepSpec.from_grid(0.1, 50.0, 2000, "log", mode=THREE_D, z_method="direct")
    report = continuity_scan(spec, jump_threshold=10.0)
    assert report.passed
    assert report.max_ratio < 1.5  # smooth curves sit near ratio 1


def test_scan_constant_input_has_zero_jumps():
    alphas = np.linspace(1.0, 10.0, 100)
    report = scan_jumps(alphas, np.full_like(alphas, 1.7), jump_threshold=10.0)
    assert report.passed
    assert report.max_jump == 0.0
    assert report.max_ratio == 0.0


def test_scan_flags_injected_jump():
    alphas = np.linspace(1.0, 10.0, 500)
    cbar = np.tanh(alphas)  # smooth baseline
    cbar[250:] += 0.5  # a genuine step
    report = scan_jumps(alphas, cbar, jump_threshold=10.0)
    assert not report.passed
    assert abs(alphas[report.index] - alphas[249]) < 1e-12


def test_scan_mock_logarithmic_z_is_flat():
    # ln Z = c ln(alpha) has exactly constant C = c; analytic evaluation
    # leaves only rounding, far below any jump threshold
    c = 1.7
    alphas = np.geomspace(0.5, 50.0, 1000)
    g1 = c / alphas
    g2 = -c / alphas ** 2
    cbar = 2.0 * alphas * g1 + alphas ** 2 * g2
    report = scan_jumps(alphas, cbar, jump_threshold=10.0)
    assert report.passed
    assert report.max_jump < 1e-12
