"""Entropy and free-energy bounds between thermal equilibrium states."""

from ._thermobound import (
    BoundsResult,
    DimensionError,
    DomainError,
    Error,
    NumericalError,
    delta_s_bounds,
    eigendecompose,
    fc,
    gibbs_state,
    grand_delta_s_bounds,
    grand_entropy_gap,
    grand_gibbs_state,
    grand_log_z_ratio_bounds,
    helmholtz_bounds,
    log_z_ratio_bounds,
    oscillator,
    qubit,
    von_neumann_entropy,
)

__all__ = [
    "BoundsResult",
    "DimensionError",
    "DomainError",
    "Error",
    "NumericalError",
    "delta_s_bounds",
    "eigendecompose",
    "fc",
    "gibbs_state",
    "grand_delta_s_bounds",
    "grand_entropy_gap",
    "grand_gibbs_state",
    "grand_log_z_ratio_bounds",
    "helmholtz_bounds",
    "log_z_ratio_bounds",
    "oscillator",
    "qubit",
    "von_neumann_entropy",
]
