"""Relativistic center-of-mass spin and EPR-Bohm singlet correlations."""

from ._core import (
    DegenerateObservable,
    Direction,
    InvalidArgument,
    InvalidMass,
    InvalidSampleCount,
    InvalidSpin,
    Kinematics,
    NonHermitianInput,
    OrderOutOfRange,
    PairGeometry,
    RelspinError,
    alpha_norm,
    alpha_vector,
    beta_from_momentum,
    chsh_value,
    commutator_defect,
    correlation_analytic,
    correlation_oracle,
    direction_from_angles,
    gauss_hermite,
    joint_distribution,
    max_chsh,
    mc_estimate,
    packet_average,
    self_check,
    singlet_state,
    spin_eigenvalues,
    spin_projection_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]
