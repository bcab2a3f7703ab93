"""Weighted point/loop configurations in exemplar contact manifolds.

Thin wrapper over the compiled extension: contact models, smoothing kernels,
weighted configurations, kernel-induced dynamics with conserved-quantity
diagnostics, landmark pushforward, and the verification suites.
"""

from epcontact._core import (  # noqa: F401
    ConfigTangent,
    ContactModel,
    Diagnostics,
    Error,
    IntegratorSpec,
    KernelSpec,
    LandmarkConfig,
    LandmarkTrajectory,
    Method,
    RunStatus,
    ScalarField,
    Topology,
    Trajectory,
    TrajectorySample,
    WeightedConfig,
    conformal_factor,
    contact_vector_field,
    hamiltonian,
    integrate,
    integrate_landmarks,
    is_isotropic,
    landmark_hamiltonian,
    lifted_generator,
    moment_left_pair,
    moment_right,
    oracle_rhs,
    preset_names,
    resample_loop,
    rhs,
    run_scenario,
    suite_names,
    symplectization_omega,
    to_landmarks,
    velocity_field,
    verify_suites,
)

__all__ = [
    "ConfigTangent",
    "ContactModel",
    "Diagnostics",
    "Error",
    "IntegratorSpec",
    "KernelSpec",
    "LandmarkConfig",
    "LandmarkTrajectory",
    "Method",
    "RunStatus",
    "ScalarField",
    "Topology",
    "Trajectory",
    "TrajectorySample",
    "WeightedConfig",
    "conformal_factor",
    "contact_vector_field",
    "hamiltonian",
    "integrate",
    "integrate_landmarks",
    "is_isotropic",
    "landmark_hamiltonian",
    "lifted_generator",
    "moment_left_pair",
    "moment_right",
    "oracle_rhs",
    "preset_names",
    "resample_loop",
    "rhs",
    "run_scenario",
    "suite_names",
    "symplectization_omega",
    "to_landmarks",
    "velocity_field",
    "verify_suites",
]

__version__ = "0.1.0"
