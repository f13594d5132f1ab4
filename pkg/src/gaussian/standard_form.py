"""
Reduction of two-mode covariance matrices to the tridiagonal standard form
by local symplectic transformations

Procedure: each diagonal block is brought to nu*I by its symplectic
Williamson matrix sqrt(nu) * V^(-1/2); the remaining rotation freedom on
both sides diagonalizes the correlation block through its singular value
decomposition. Signs follow c1 <= 0 <= c2 when det C < 0 (the convention of
the noisy two-mode squeezed vacuum) and c1 >= c2 >= 0 otherwise, always
with |c1| >= |c2|.
"""
from dataclasses import dataclass

import numpy as np

from ..utils.errors import ValidationError
from .covariance import (
    PHYSICALITY_TOL,
    TwoModeCovariance,
    conjugate_local,
    frozen_matrix,
    is_physical,
    require_physical,
)
from .symplectic import SIGMA

_DIAGONAL_TOL = 1e-14
# rotation by pi/2; applied on both sides it swaps c1 and c2
_QUARTER_TURN = -SIGMA


@dataclass(frozen=True, eq=False)
class StandardFormParams:
    """Tridiagonal parameters (a, b, c1, c2) and the local symplectics that produced them"""
    a: float
    b: float
    c1: float
    c2: float
    s_a: np.ndarray
    s_b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "s_a", frozen_matrix(self.s_a, (2, 2), "StandardFormParams.s_a"))
        object.__setattr__(self, "s_b", frozen_matrix(self.s_b, (2, 2), "StandardFormParams.s_b"))
        if self.a < 1.0 - PHYSICALITY_TOL or self.b < 1.0 - PHYSICALITY_TOL:
            raise ValidationError(f"standard form needs a >= 1 and b >= 1, got a={self.a}, b={self.b}")
        if not is_physical(self.to_covariance()):
            raise ValidationError(
                f"standard form (a={self.a}, b={self.b}, c1={self.c1}, c2={self.c2}) is not physical"
            )

    @classmethod
    def from_tridiagonal(cls, a: float, b: float, c1: float, c2: float) -> "StandardFormParams":
        """Parameters of a channel that is already in standard form"""
        return cls(a=a, b=b, c1=c1, c2=c2, s_a=np.eye(2), s_b=np.eye(2))

    def to_covariance(self) -> TwoModeCovariance:
        return TwoModeCovariance.tridiagonal(self.a, self.b, self.c1, self.c2)

    def reconstruct(self) -> TwoModeCovariance:
        """Undo the local symplectics: the channel the reduction started from"""
        return conjugate_local(self.to_covariance(), np.linalg.inv(self.s_a), np.linalg.inv(self.s_b))

    @property
    def is_symmetric_pair(self) -> bool:
        """c1 == -c2, the case in which the interior roots are x = y"""
        return abs(self.c1 + self.c2) <= 1e-12 * max(1.0, abs(self.c1))


def _williamson_single(block: np.ndarray) -> tuple[np.ndarray, float]:
    """Symplectic W with W V W^T = nu I, nu = sqrt(det V)"""
    scale = max(1.0, float(np.max(np.abs(block))))
    if abs(block[0, 1]) <= _DIAGONAL_TOL * scale and abs(block[0, 0] - block[1, 1]) <= _DIAGONAL_TOL * scale:
        return np.eye(2), float(block[0, 0])
    nu = float(np.sqrt(np.linalg.det(block)))
    evals, evecs = np.linalg.eigh(block)
    inv_sqrt = evecs @ np.diag(evals ** -0.5) @ evecs.T
    return np.sqrt(nu) * inv_sqrt, nu


def _rotations_diagonalizing(c_block: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Rotations O_A, O_B with O_A C O_B^T diagonal; also returns that diagonal"""
    scale = max(1.0, float(np.max(np.abs(c_block))))
    if abs(c_block[0, 1]) <= _DIAGONAL_TOL * scale and abs(c_block[1, 0]) <= _DIAGONAL_TOL * scale:
        return np.eye(2), np.eye(2), np.diag(c_block).copy()
    u, sv, vt = np.linalg.svd(c_block)
    v = vt.T
    diag = sv.copy()
    flip = np.diag([1.0, -1.0])
    if np.linalg.det(u) < 0:
        u = u @ flip
        diag[1] = -diag[1]
    if np.linalg.det(v) < 0:
        v = v @ flip
        diag[1] = -diag[1]
    return u.T, v.T, diag


def to_standard_form(gamma: TwoModeCovariance) -> StandardFormParams:
    """
    Local symplectics S_A, S_B with (S_A (+) S_B) Gamma (S_A (+) S_B)^T tridiagonal

    Args:
        gamma: Physical two-mode covariance in any local frame

    Returns:
        StandardFormParams with a, b >= 1, |c1| >= |c2| and c1 <= 0 <= c2
        whenever det C < 0, together with S_A and S_B

    Raises:
        PreconditionError: if gamma is not physical
    """
    require_physical(gamma, "channel")
    w_a, a = _williamson_single(gamma.block_a)
    w_b, b = _williamson_single(gamma.block_b)
    o_a, o_b, (c1, c2) = _rotations_diagonalizing(w_a @ gamma.block_c @ w_b.T)

    tol = _DIAGONAL_TOL * max(1.0, abs(c1), abs(c2))
    if abs(c1) < abs(c2) - tol:
        o_a = _QUARTER_TURN @ o_a
        o_b = _QUARTER_TURN @ o_b
        c1, c2 = c2, c1
    if c1 * c2 < 0:
        flip = c1 > 0
    else:
        flip = c1 < 0 or (c1 == 0 and c2 < 0)
    if flip:
        o_a = -o_a
        c1, c2 = -c1, -c2

    return StandardFormParams(
        a=a, b=b, c1=float(c1), c2=float(c2), s_a=o_a @ w_a, s_b=o_b @ w_b
    )
