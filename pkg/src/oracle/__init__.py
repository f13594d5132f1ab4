"""Independent numerical cross-checks for the closed-form results"""
from .grid_search import grid_search_cp
from .sampling import (
    physical_state_sampler,
    random_local_symplectic,
    scramble_locally,
    separable_state_sampler,
    standard_form_sampler,
)
from .wigner import (
    OracleValue,
    PhaseSpaceGrid,
    gaussian_wigner,
    kernel_covariance,
    swap_fidelity_integral,
    swap_slice_covariance,
    wigner_overlap_fidelity,
)

__all__ = [
    "grid_search_cp",
    "physical_state_sampler",
    "random_local_symplectic",
    "scramble_locally",
    "separable_state_sampler",
    "standard_form_sampler",
    "OracleValue",
    "PhaseSpaceGrid",
    "gaussian_wigner",
    "kernel_covariance",
    "swap_fidelity_integral",
    "swap_slice_covariance",
    "wigner_overlap_fidelity",
]
