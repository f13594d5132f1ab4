"""
Closed-form fidelities of unit-gain continuous-variable teleportation

The teleported state's covariance is D + E', where E' is the noise added
by the shared Gaussian channel. For a pure Gaussian input D the fidelity
is F = 2/sqrt(det(2D + E')); dropping D gives the renormalized fidelity of
the teleportation operation itself (entanglement swapping of an EPR state),
F_swap = 2/sqrt(det E'), which exceeds 1 only for entangled channels.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..gaussian.covariance import (
    OneModeCovariance,
    TwoModeCovariance,
    check_symmetric,
    frozen_matrix,
    require_physical,
)
from ..gaussian.symplectic import R_MATRIX
from ..utils.errors import ComputationalError, PreconditionError, ValidationError

PURE_INPUT_TOL = 1e-9
_FIDELITY_CEILING_TOL = 1e-12


class FidelityKind(Enum):
    PURE_STATE = "pure_state_fidelity"
    SWAP = "swap_fidelity"


@dataclass(frozen=True, eq=False)
class NoiseMatrixE:
    """Symmetric 2x2 noise matrix (E' of the channel, or E = 2D + E')"""
    e: np.ndarray

    def __post_init__(self):
        arr = frozen_matrix(self.e, (2, 2), "NoiseMatrixE")
        check_symmetric(arr, "NoiseMatrixE")
        object.__setattr__(self, "e", arr)

    @property
    def det(self) -> float:
        """Closed-form 2x2 determinant"""
        e = self.e
        return float(e[0, 0] * e[1, 1] - e[0, 1] * e[1, 0])


@dataclass(frozen=True, eq=False)
class FidelityValue:
    """Fidelity with the noise matrix it was computed from attached"""
    value: float
    kind: FidelityKind
    e_matrix: NoiseMatrixE

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        if not np.isfinite(self.value) or self.value <= 0:
            raise ComputationalError(f"{self.kind.value} must be positive and finite, got {self.value}")
        if self.kind is FidelityKind.PURE_STATE and self.value > 1.0 + _FIDELITY_CEILING_TOL:
            raise ComputationalError(f"pure-state fidelity exceeds 1: {self.value!r}")

    def __float__(self) -> float:
        return float(self.value)


def noise_matrix(gamma: TwoModeCovariance) -> NoiseMatrixE:
    """E' = R A R^T + R C + C^T R^T + B"""
    require_physical(gamma, "channel")
    r = R_MATRIX
    a_blk, b_blk, c_blk = gamma.block_a, gamma.block_b, gamma.block_c
    rc = r @ c_blk
    e = r @ a_blk @ r.T + rc + rc.T + b_blk
    return NoiseMatrixE(0.5 * (e + e.T))


def _fidelity_from(e: np.ndarray, kind: FidelityKind) -> FidelityValue:
    noise = NoiseMatrixE(e)
    det = noise.det
    if det <= 0:
        raise ComputationalError(f"noise matrix is singular or indefinite: det = {det:.3e}")
    return FidelityValue(value=float(2.0 / np.sqrt(det)), kind=kind, e_matrix=noise)


def require_pure_input(d: OneModeCovariance) -> None:
    """
    Refuse inputs for which 2/sqrt(det(2D + E')) is not a fidelity

    Raises:
        PreconditionError: if D is zero, non-physical or mixed
    """
    if not np.any(d.m):
        raise PreconditionError("D = 0 is not a state; use swap_fidelity for the operation fidelity")
    require_physical(d, "input state")
    if not d.is_pure(PURE_INPUT_TOL):
        raise PreconditionError(
            f"input state must be pure (det D = 1), got det D = {d.det:.12g}; "
            "the overlap formula is a fidelity only for pure inputs"
        )


def teleport_fidelity(gamma: TwoModeCovariance, d: OneModeCovariance) -> FidelityValue:
    """
    F = 2/sqrt(det(2D + E')) for a pure Gaussian input with covariance D

    Args:
        gamma: Shared two-mode channel covariance
        d: Covariance of the pure input state

    Returns:
        FidelityValue of kind PURE_STATE, at most 1

    Raises:
        PreconditionError: if the channel is not physical or D is not pure
        ComputationalError: if 2D + E' is singular
    """
    require_pure_input(d)
    e_prime = noise_matrix(gamma).e
    return _fidelity_from(2.0 * d.m + e_prime, FidelityKind.PURE_STATE)


def swap_fidelity(gamma: TwoModeCovariance) -> FidelityValue:
    """
    Renormalized fidelity of the teleportation operation, 2/sqrt(det E')

    Args:
        gamma: Shared two-mode channel covariance

    Returns:
        FidelityValue of kind SWAP; above 1 only for entangled channels

    Raises:
        ComputationalError: if E' is singular, as for a pure EPR channel
    """
    return _fidelity_from(noise_matrix(gamma).e, FidelityKind.SWAP)


def evaluate_fidelity(gamma: TwoModeCovariance, d: Optional[OneModeCovariance] = None) -> FidelityValue:
    """
    Pure-state fidelity for an input D, operation fidelity when D is None

    Args:
        gamma: Shared two-mode channel covariance
        d: Pure input covariance, or None for the swap fidelity

    Returns:
        FidelityValue from teleport_fidelity or swap_fidelity
    """
    if d is None:
        return swap_fidelity(gamma)
    return teleport_fidelity(gamma, d)


def output_covariance(gamma: TwoModeCovariance, d_in: OneModeCovariance) -> OneModeCovariance:
    """Covariance of the teleported state, D_in + E'"""
    require_physical(d_in, "input state")
    if not isinstance(gamma, TwoModeCovariance):
        raise ValidationError(f"expected TwoModeCovariance, got {type(gamma).__name__}")
    return OneModeCovariance(d_in.m + noise_matrix(gamma).e)
