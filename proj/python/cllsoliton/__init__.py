"""Direct scattering and Darboux transformations for the Chen-Lee-Liu equation."""

from ._cll import (
    CllError,
    CheckResult,
    ComplexVec2Field,
    DarbouxSeed,
    EigenvalueRecord,
    JostPair,
    Potential,
    ScatteringPoint,
    SpatialGrid,
    Trajectory,
    apply_dt,
    find_eigenvalues,
    inverse_dt_seed,
    load_potential,
    make_seed,
    max_stable_dt,
    pde_step,
    run_acceptance,
    run_evolution,
    run_verify,
    save_potential,
    scattering_coefficients,
    scattering_curve,
    soliton_solution,
    solve_jost,
)

__all__ = [
    "CllError",
    "CheckResult",
    "ComplexVec2Field",
    "DarbouxSeed",
    "EigenvalueRecord",
    "JostPair",
    "Potential",
    "ScatteringPoint",
    "SpatialGrid",
    "Trajectory",
    "apply_dt",
    "find_eigenvalues",
    "inverse_dt_seed",
    "load_potential",
    "make_seed",
    "max_stable_dt",
    "pde_step",
    "run_acceptance",
    "run_evolution",
    "run_verify",
    "save_potential",
    "scattering_coefficients",
    "scattering_curve",
    "soliton_solution",
    "solve_jost",
]
