"""Bound states and canonical thermodynamics of the oscillator potential
with angular barrier terms, V = a1^2 r^2 + (a2^2/sin^2 t + a3^2 cot^2 t)/r^2.

The spectrum comes out of the parametric Nikiforov-Uvarov template
(`nu_solver`, `spectrum`), the partition function out of certified direct
sums and Euler-Maclaurin closed forms (`partition`), and the thermal
functions F, U, S, C out of ln Z and its alpha-derivatives (`thermo`).
`cli` wraps it all in a deterministic command-line tool.
"""

from .errors import BranchError, ConvergenceError, DomainError, SweepError, UsageError
from .nu_solver import (
    AffineMap,
    NUDerived,
    NUProblem,
    QuantizationMode,
    WavefunctionFactors,
    derive,
    quantization_residual,
    solve_bracketed,
    wavefunction_factors,
)
from .partition import (
    ONE_D,
    THREE_D,
    VARIANT_DERIVED,
    VARIANT_PAPER,
    PartitionSpec,
    PartitionValue,
    boltzmann_moments,
    convergence_integral,
    em_sum,
    partition_closed_form_1d,
    partition_direct,
    partition_em,
    partition_em_1d,
    partition_em_3d,
    partition_em_3d_fraction,
    suggested_cutoff,
)
from .specfun import (
    BERNOULLI_K_MAX,
    Hyp1F1Terminating,
    JacobiParams,
    bernoulli,
    gamma_ratio_prefactor,
    hyp1f1_terminating,
    jacobi_poly,
)
from .spectrum import (
    AngularSolution,
    EnergyLevel,
    PotentialParams,
    angular_constant_from_quantization,
    angular_solution,
    angular_wavefunction,
    degeneracy,
    degeneracy_sum,
    energy,
    energy_over_xi,
    energy_special_case,
    level,
    radial_energy_from_quantization,
    radial_wavefunction,
    total_wavefunction,
)
from .thermo import (
    ContinuityReport,
    SweepResult,
    SweepSpec,
    ThermoPoint,
    continuity_scan,
    high_t_asymptotics,
    scan_jumps,
    sweep,
    thermo_point,
)

__version__ = "0.1.0"
