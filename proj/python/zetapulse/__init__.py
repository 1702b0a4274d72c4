"""Analytic pulse synthesis and exact propagators for driven two-level systems.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._core import (  # noqa: F401
    AdmissibilityReport,
    BracketError,
    CalibrationError,
    ContractViolation,
    ControlProblem,
    DivergenceError,
    DomainError,
    EnvelopeError,
    GateReport,
    IndividualControlDesign,
    PulseSchedule,
    StGateBuild,
    Unitary2,
    XiPair,
    ZetaSeries,
    ZetaTriple,
    build_st_gate,
    build_x_rotation,
    check_admissible,
    clifford_table,
    delta_from_zeta,
    design_individual_control,
    gate_fidelity,
    j_from_zeta,
    omega_prime_from_zeta,
    phase_aligned_distance,
    propagate_numeric,
    propagator_xy,
    propagator_z,
    rotate_frame_ur,
    run_scenario_file,
    run_verify_suite,
    sigma_xy_problem,
    sigma_z_problem,
    state_fidelity,
    unitarity_defect,
    xi_integrals,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
