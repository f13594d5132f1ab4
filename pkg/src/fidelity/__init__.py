"""Teleportation fidelities of Gaussian channels"""
from .teleportation import (
    FidelityKind,
    FidelityValue,
    NoiseMatrixE,
    evaluate_fidelity,
    noise_matrix,
    output_covariance,
    swap_fidelity,
    teleport_fidelity,
)

__all__ = [
    "FidelityKind",
    "FidelityValue",
    "NoiseMatrixE",
    "evaluate_fidelity",
    "noise_matrix",
    "output_covariance",
    "swap_fidelity",
    "teleport_fidelity",
]
