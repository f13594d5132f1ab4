"""
Determinant objective for local Gaussian CP maps

For a fixed map matrix S on Bob's mode the noise matrix of the teleported
state is M(S) + G, where

    M(S) = 2D + R A R + R C S^T + S C^T R + S B S^T

collects everything except the added noise G. The optimal G for that S is
proportional to M(S), which reduces the problem to minimizing

    sqrt(det(M + G)) = |1 - s| + sqrt(det M(S)),   s = det S

over S alone. With maps on both modes the Alice noise enters through R G_A R
and the reduced objective picks up |1 - s_A| as a further additive term.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..gaussian.covariance import OneModeCovariance, TwoModeCovariance
from ..gaussian.symplectic import R_MATRIX
from ..utils.errors import ComputationalError, DegenerateObjectiveError, ValidationError

DEGENERATE_TOL = 1e-12
SYMPLECTIC_S_TOL = 1e-14
_PSD_TOL = 1e-9


@dataclass(frozen=True)
class ObjectiveQuadratic:
    """Entries of the symmetric matrix M(S) = [[alpha, gamma_od], [gamma_od, beta]]"""
    alpha: float
    beta: float
    gamma_od: float = 0.0

    def __post_init__(self):
        values = (self.alpha, self.beta, self.gamma_od)
        if not all(np.isfinite(v) for v in values):
            raise ValidationError(f"objective entries must be finite, got {values}")
        scale = max(1.0, abs(self.alpha), abs(self.beta))
        if self.alpha < -_PSD_TOL * scale or self.beta < -_PSD_TOL * scale:
            raise ValidationError(f"objective matrix must be positive semidefinite, got diagonal {values[:2]}")
        if self.discriminant < -_PSD_TOL * scale * scale:
            raise ValidationError(f"objective matrix must be positive semidefinite, det = {self.discriminant:.3e}")

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "ObjectiveQuadratic":
        m = np.asarray(m, dtype=float)
        return cls(alpha=float(m[0, 0]), beta=float(m[1, 1]), gamma_od=float(0.5 * (m[0, 1] + m[1, 0])))

    @classmethod
    def from_channel(
        cls,
        gamma: TwoModeCovariance,
        s: np.ndarray,
        d: Optional[OneModeCovariance] = None,
    ) -> "ObjectiveQuadratic":
        """M(S) for a map S on Bob's mode; d=None is the operation (swap) target"""
        return cls.from_maps(gamma, np.eye(2), s, d)

    @classmethod
    def from_maps(
        cls,
        gamma: TwoModeCovariance,
        s_alice: np.ndarray,
        s_bob: np.ndarray,
        d: Optional[OneModeCovariance] = None,
    ) -> "ObjectiveQuadratic":
        """M(S_A, S_B) for maps on both modes, noise excluded"""
        r = R_MATRIX
        s_alice = np.asarray(s_alice, dtype=float)
        s_bob = np.asarray(s_bob, dtype=float)
        a_blk = s_alice @ gamma.block_a @ s_alice.T
        c_blk = s_alice @ gamma.block_c @ s_bob.T
        cross = r @ c_blk
        m = r @ a_blk @ r + cross + cross.T + s_bob @ gamma.block_b @ s_bob.T
        if d is not None:
            m = m + 2.0 * d.m
        return cls.from_matrix(m)

    @classmethod
    def diagonal(
        cls, a: float, b: float, c1: float, c2: float, x: float, y: float, d11: float = 0.0, d22: float = 0.0
    ) -> "ObjectiveQuadratic":
        """Standard-form channel, diagonal input and S = diag(x, y)"""
        alpha = 2.0 * d11 + a + 2.0 * c1 * x + b * x * x
        beta = 2.0 * d22 + a - 2.0 * c2 * y + b * y * y
        return cls(alpha=alpha, beta=beta, gamma_od=0.0)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.alpha, self.gamma_od], [self.gamma_od, self.beta]])

    @property
    def discriminant(self) -> float:
        """alpha*beta - gamma_od^2 = det M"""
        return self.alpha * self.beta - self.gamma_od * self.gamma_od


def _sqrt_discriminant(obj: ObjectiveQuadratic) -> float:
    disc = obj.discriminant
    scale = max(1.0, obj.alpha * obj.beta)
    if disc < -_PSD_TOL * scale:
        raise ComputationalError(f"negative objective discriminant alpha*beta - gamma^2 = {disc:.3e}")
    return float(np.sqrt(max(disc, 0.0)))


def optimal_g_for_s(obj: ObjectiveQuadratic, s_det: float) -> np.ndarray:
    """
    Noise matrix G minimizing det(M + G) among CP-admissible G for det S = s_det

    G = |1 - s| / sqrt(alpha*beta - gamma^2) * M. It saturates the CP
    condition, g11*g22 - g12^2 = (1 - s)^2, and g12 has the sign of gamma.

    Raises:
        DegenerateObjectiveError: if alpha*beta - gamma^2 vanishes and s != 1
    """
    gap = abs(1.0 - s_det)
    if gap <= SYMPLECTIC_S_TOL:
        return np.zeros((2, 2))
    disc = obj.discriminant
    if disc <= DEGENERATE_TOL:
        raise DegenerateObjectiveError(
            f"alpha*beta - gamma^2 = {disc:.3e} is degenerate; optimal noise undefined for s = {s_det:.6g}"
        )
    return gap / np.sqrt(disc) * obj.matrix


def objective_determinant(obj: ObjectiveQuadratic, s_det: float) -> float:
    """Minimum of det(M + G) over admissible G: (|1 - s| + sqrt(alpha*beta - gamma^2))^2"""
    root = abs(1.0 - s_det) + _sqrt_discriminant(obj)
    return root * root


def two_sided_determinant(obj: ObjectiveQuadratic, s_alice_det: float, s_bob_det: float) -> float:
    """Minimum of det(M + R G_A R + G_B) with both noises admissible"""
    root = abs(1.0 - s_alice_det) + abs(1.0 - s_bob_det) + _sqrt_discriminant(obj)
    return root * root


def optimal_g_pair(obj: ObjectiveQuadratic, s_alice_det: float, s_bob_det: float) -> tuple:
    """
    Optimal (G_A, G_B) for maps on both modes

    Both are proportional to M; Alice's is conjugated by R because her noise
    reaches the teleported mode reflected.
    """
    g_bob = optimal_g_for_s(obj, s_bob_det)
    g_alice = R_MATRIX @ optimal_g_for_s(obj, s_alice_det) @ R_MATRIX
    return g_alice, g_bob


def determinant_for_g(obj: ObjectiveQuadratic, g: np.ndarray) -> float:
    """det(M + G) for an explicitly chosen noise matrix"""
    total = obj.matrix + np.asarray(g, dtype=float)
    return float(total[0, 0] * total[1, 1] - total[0, 1] * total[1, 0])


def fidelity_from_determinant(value: float) -> float:
    """2/sqrt(value); ComputationalError unless value is positive and finite"""
    if not np.isfinite(value) or value <= 0:
        raise ComputationalError(f"objective determinant must be positive, got {value!r}")
    return float(2.0 / np.sqrt(value))
