"""Gaussian states, channels and local Gaussian CP maps"""
from .channels import (
    ChannelParams,
    channel_to_spec,
    damping_transmittance,
    make_tmsv_noisy,
    parse_channel_spec,
    parse_input_spec,
    parse_sweep_family,
    squeezing_threshold,
)
from .covariance import (
    OneModeCovariance,
    TwoModeCovariance,
    conjugate_local,
    is_physical,
    mirror_modes,
    require_physical,
)
from .cp_map import (
    GaussianCpMap,
    apply_cp_map_alice,
    apply_cp_map_bob,
    apply_local_cp_maps,
    is_valid_cp_map,
    is_valid_cp_map_matrix,
)
from .separability import is_ppt_separable, partial_transpose, ppt_violation
from .standard_form import StandardFormParams, to_standard_form
from .symplectic import (
    OMEGA,
    R_MATRIX,
    SIGMA,
    SYMPLECTIC_FORM,
    SymplecticForm,
    is_symplectic,
    local_symplectic,
    rotation,
    single_mode_squeezer,
)

__all__ = [
    "ChannelParams",
    "channel_to_spec",
    "damping_transmittance",
    "make_tmsv_noisy",
    "parse_channel_spec",
    "parse_input_spec",
    "parse_sweep_family",
    "squeezing_threshold",
    "OneModeCovariance",
    "TwoModeCovariance",
    "conjugate_local",
    "is_physical",
    "mirror_modes",
    "require_physical",
    "GaussianCpMap",
    "apply_cp_map_alice",
    "apply_cp_map_bob",
    "apply_local_cp_maps",
    "is_valid_cp_map",
    "is_valid_cp_map_matrix",
    "is_ppt_separable",
    "partial_transpose",
    "ppt_violation",
    "StandardFormParams",
    "to_standard_form",
    "OMEGA",
    "R_MATRIX",
    "SIGMA",
    "SYMPLECTIC_FORM",
    "SymplecticForm",
    "is_symplectic",
    "local_symplectic",
    "rotation",
    "single_mode_squeezer",
]
