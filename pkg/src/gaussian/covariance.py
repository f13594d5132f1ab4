"""
Covariance matrices of one- and two-mode Gaussian states

Convention: Gamma_ij = <dr_i dr_j + dr_j dr_i>, so the vacuum covariance is
the identity matrix. Quadratures are ordered (x_A, p_A, x_B, p_B). Mean
values are assumed to vanish and are not tracked.
"""
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..utils.errors import PreconditionError, ValidationError
from .symplectic import OMEGA, R_MATRIX, SIGMA, rotation

PHYSICALITY_TOL = 1e-9
PURITY_TOL = 1e-9
SYMMETRY_TOL = 1e-10


def frozen_matrix(values, shape: tuple, name: str) -> np.ndarray:
    """Copy values into a read-only float array of the given shape"""
    try:
        arr = np.array(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name}: entries must be real numbers ({exc})") from exc
    if arr.shape != shape:
        raise ValidationError(f"{name}: expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name}: entries must be finite")
    arr.setflags(write=False)
    return arr


def check_symmetric(arr: np.ndarray, name: str) -> None:
    """Raise ValidationError unless arr equals its transpose up to a scale-relative tolerance"""
    scale = max(1.0, float(np.max(np.abs(arr))))
    if not np.allclose(arr, arr.T, rtol=0.0, atol=SYMMETRY_TOL * scale):
        raise ValidationError(f"{name} must be symmetric, got off-diagonal {arr[0, 1]!r} vs {arr[1, 0]!r}")


@dataclass(frozen=True, eq=False)
class OneModeCovariance:
    """2x2 covariance matrix of a single mode (input state D or a block)"""
    m: np.ndarray

    def __post_init__(self):
        arr = frozen_matrix(self.m, (2, 2), "OneModeCovariance")
        check_symmetric(arr, "OneModeCovariance")
        object.__setattr__(self, "m", arr)

    @classmethod
    def vacuum(cls) -> "OneModeCovariance":
        """Vacuum covariance, the identity in this convention"""
        return cls(np.eye(2))

    @classmethod
    def coherent(cls) -> "OneModeCovariance":
        """Coherent states share the vacuum covariance"""
        return cls.vacuum()

    @classmethod
    def squeezed(cls, s: float, phi: float = 0.0) -> "OneModeCovariance":
        """Squeezed vacuum rot(phi) diag(e^2s, e^-2s) rot(phi)^T"""
        rot = rotation(phi)
        return cls(rot @ np.diag([np.exp(2 * s), np.exp(-2 * s)]) @ rot.T)

    @classmethod
    def thermal(cls, nu: float) -> "OneModeCovariance":
        """
        Thermal state nu * I

        Args:
            nu: Symplectic eigenvalue, 1 for the vacuum

        Raises:
            ValidationError: if nu < 1
        """
        if nu < 1.0:
            raise ValidationError(f"thermal covariance needs nu >= 1, got {nu}")
        return cls(nu * np.eye(2))

    @property
    def det(self) -> float:
        """1 exactly for pure states"""
        return float(np.linalg.det(self.m))

    @property
    def d11(self) -> float:
        return float(self.m[0, 0])

    @property
    def d22(self) -> float:
        return float(self.m[1, 1])

    def is_pure(self, tol: float = PURITY_TOL) -> bool:
        return abs(self.det - 1.0) <= tol

    def is_diagonal(self, tol: float = 1e-12) -> bool:
        return abs(self.m[0, 1]) <= tol * max(1.0, float(np.max(np.abs(self.m))))

    def __repr__(self) -> str:
        return f"OneModeCovariance({self.m.tolist()})"


@dataclass(frozen=True, eq=False)
class TwoModeCovariance:
    """
    4x4 covariance matrix Gamma_AB of the shared channel

    Block structure [[A, C], [C^T, B]]: A is Alice's mode, B is Bob's mode,
    C holds the inter-mode correlations.
    """
    m: np.ndarray

    def __post_init__(self):
        arr = frozen_matrix(self.m, (4, 4), "TwoModeCovariance")
        check_symmetric(arr, "TwoModeCovariance")
        object.__setattr__(self, "m", arr)

    @classmethod
    def from_blocks(cls, a_block, b_block, c_block) -> "TwoModeCovariance":
        a_block = np.asarray(a_block, dtype=float)
        b_block = np.asarray(b_block, dtype=float)
        c_block = np.asarray(c_block, dtype=float)
        return cls(np.block([[a_block, c_block], [c_block.T, b_block]]))

    @classmethod
    def vacuum(cls) -> "TwoModeCovariance":
        """Two uncorrelated vacua"""
        return cls(np.eye(4))

    @classmethod
    def tridiagonal(cls, a: float, b: float, c1: float, c2: float) -> "TwoModeCovariance":
        """Standard form with A = aI, B = bI, C = diag(c1, c2)"""
        return cls.from_blocks(a * np.eye(2), b * np.eye(2), np.diag([c1, c2]))

    @property
    def block_a(self) -> np.ndarray:
        return self.m[:2, :2]

    @property
    def block_b(self) -> np.ndarray:
        return self.m[2:, 2:]

    @property
    def block_c(self) -> np.ndarray:
        return self.m[:2, 2:]

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.m))

    def is_tridiagonal(self, tol: float = 1e-12) -> bool:
        """A and B proportional to identity, C diagonal"""
        scale = max(1.0, float(np.max(np.abs(self.m))))
        a_blk, b_blk, c_blk = self.block_a, self.block_b, self.block_c
        return bool(
            abs(a_blk[0, 1]) <= tol * scale
            and abs(b_blk[0, 1]) <= tol * scale
            and abs(a_blk[0, 0] - a_blk[1, 1]) <= tol * scale
            and abs(b_blk[0, 0] - b_blk[1, 1]) <= tol * scale
            and abs(c_blk[0, 1]) <= tol * scale
            and abs(c_blk[1, 0]) <= tol * scale
        )

    def __repr__(self) -> str:
        return f"TwoModeCovariance({self.m.tolist()})"


Covariance = Union[OneModeCovariance, TwoModeCovariance]


def min_uncertainty_eigenvalue(g: Covariance) -> float:
    """Smallest eigenvalue of the Hermitian matrix m + i*Omega"""
    form = SIGMA if isinstance(g, OneModeCovariance) else OMEGA
    return float(np.linalg.eigvalsh(g.m + 1j * form)[0])


def is_physical(g: Covariance, tol: float = PHYSICALITY_TOL) -> bool:
    """Uncertainty relation m + i*Omega >= 0 up to tol on the smallest eigenvalue"""
    if not isinstance(g, (OneModeCovariance, TwoModeCovariance)):
        raise ValidationError(f"expected a covariance matrix type, got {type(g).__name__}")
    return min_uncertainty_eigenvalue(g) >= -tol


def require_physical(g: Covariance, name: str = "covariance") -> None:
    """
    Raise PreconditionError unless m + i*Omega >= 0

    Args:
        g: One- or two-mode covariance
        name: What g is, for the error message
    """
    if not is_physical(g):
        raise PreconditionError(
            f"{name} is not physical: smallest eigenvalue of m + i*Omega is "
            f"{min_uncertainty_eigenvalue(g):.3e}"
        )


def conjugate_local(gamma: TwoModeCovariance, s_a: np.ndarray, s_b: np.ndarray) -> TwoModeCovariance:
    """(S_A (+) S_B) Gamma (S_A (+) S_B)^T"""
    a_blk = s_a @ gamma.block_a @ s_a.T
    b_blk = s_b @ gamma.block_b @ s_b.T
    c_blk = s_a @ gamma.block_c @ s_b.T
    return TwoModeCovariance.from_blocks(_sym(a_blk), _sym(b_blk), c_blk)


def mirror_modes(gamma: TwoModeCovariance) -> TwoModeCovariance:
    """
    Swap the roles of Alice and Bob

    Returns [[R B R, R C^T R], [R C R, R A R]]. A map (S, G) on Alice's mode
    of gamma acts like the map (R S R, R G R) on Bob's mode of the mirror.
    The mirror is an involution and preserves physicality.
    """
    r = R_MATRIX
    return TwoModeCovariance.from_blocks(
        r @ gamma.block_b @ r,
        r @ gamma.block_a @ r,
        r @ gamma.block_c.T @ r,
    )


def _sym(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.T)
