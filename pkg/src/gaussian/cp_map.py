"""
Single-mode trace-preserving Gaussian CP maps

A map (S, G) sends a single-mode covariance V to S V S^T + G. It is
completely positive iff G + i*Sigma - i*S Sigma S^T >= 0, equivalently
g11 >= 0, g22 >= 0 and g11*g22 - g12^2 >= (1 - det S)^2.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..utils.errors import PreconditionError
from .covariance import (
    PHYSICALITY_TOL,
    TwoModeCovariance,
    check_symmetric,
    frozen_matrix,
)
from .symplectic import SIGMA

CP_TOL = PHYSICALITY_TOL


@dataclass(frozen=True, eq=False)
class GaussianCpMap:
    """
    Pair (S, G) defining a single-mode Gaussian CP map

    S and G are stored exactly as given. Validity is checked by
    is_valid_cp_map, not enforced here, so boundary-touching maps can be held.
    """
    s: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        s = frozen_matrix(self.s, (2, 2), "GaussianCpMap.s")
        g = frozen_matrix(self.g, (2, 2), "GaussianCpMap.g")
        check_symmetric(g, "GaussianCpMap.g")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "g", g)

    @classmethod
    def identity(cls) -> "GaussianCpMap":
        return cls(np.eye(2), np.zeros((2, 2)))

    @classmethod
    def vacuum_replacement(cls, g: Optional[np.ndarray] = None) -> "GaussianCpMap":
        """Discard the mode and prepare a state with covariance g (vacuum by default)"""
        return cls(np.zeros((2, 2)), np.eye(2) if g is None else g)

    @classmethod
    def diagonal(cls, x: float, y: float, g: Optional[np.ndarray] = None) -> "GaussianCpMap":
        return cls(np.diag([x, y]), np.zeros((2, 2)) if g is None else g)

    @property
    def s_det(self) -> float:
        """The symbol s = det S"""
        s = self.s
        return float(s[0, 0] * s[1, 1] - s[0, 1] * s[1, 0])

    @property
    def cp_margin(self) -> float:
        """g11*g22 - g12^2 - (1 - s)^2; zero for extremal maps"""
        g = self.g
        return float(g[0, 0] * g[1, 1] - g[0, 1] ** 2 - (1.0 - self.s_det) ** 2)

    @property
    def is_symplectic(self) -> bool:
        return abs(self.s_det - 1.0) <= 1e-12 and bool(np.allclose(self.g, 0.0, rtol=0.0, atol=1e-12))

    def __repr__(self) -> str:
        return f"GaussianCpMap(s={self.s.tolist()}, g={self.g.tolist()})"


def cp_matrix(cp_map: GaussianCpMap) -> np.ndarray:
    """Hermitian matrix G + i*Sigma - i*S Sigma S^T whose positivity is complete positivity"""
    s = cp_map.s
    return cp_map.g + 1j * SIGMA - 1j * (s @ SIGMA @ s.T)


def is_valid_cp_map(cp_map: GaussianCpMap, tol: float = CP_TOL) -> bool:
    """Scalar complete-positivity test"""
    g = cp_map.g
    return bool(g[0, 0] >= -tol and g[1, 1] >= -tol and cp_map.cp_margin >= -tol)


def is_valid_cp_map_matrix(cp_map: GaussianCpMap, tol: float = CP_TOL) -> bool:
    """Eigenvalue form of the same test, used as a cross-check"""
    return bool(np.linalg.eigvalsh(cp_matrix(cp_map))[0] >= -tol)


def _require_valid(cp_map: GaussianCpMap) -> None:
    if not is_valid_cp_map(cp_map):
        raise PreconditionError(
            f"map is not completely positive: g11={cp_map.g[0, 0]:.3e}, g22={cp_map.g[1, 1]:.3e}, "
            f"g11*g22 - g12^2 - (1-s)^2 = {cp_map.cp_margin:.3e}"
        )


def apply_cp_map_bob(gamma: TwoModeCovariance, cp_map: GaussianCpMap) -> TwoModeCovariance:
    """Blocks become A, C S^T, S C^T, S B S^T + G"""
    _require_valid(cp_map)
    s, g = cp_map.s, cp_map.g
    b_blk = s @ gamma.block_b @ s.T + g
    return TwoModeCovariance.from_blocks(gamma.block_a, 0.5 * (b_blk + b_blk.T), gamma.block_c @ s.T)


def apply_cp_map_alice(gamma: TwoModeCovariance, cp_map: GaussianCpMap) -> TwoModeCovariance:
    """Blocks become S A S^T + G, S C, C^T S^T, B"""
    _require_valid(cp_map)
    s, g = cp_map.s, cp_map.g
    a_blk = s @ gamma.block_a @ s.T + g
    return TwoModeCovariance.from_blocks(0.5 * (a_blk + a_blk.T), gamma.block_b, s @ gamma.block_c)


def apply_local_cp_maps(
    gamma: TwoModeCovariance,
    alice: Optional[GaussianCpMap] = None,
    bob: Optional[GaussianCpMap] = None,
) -> TwoModeCovariance:
    """Independent local maps on both modes; a missing side means do nothing"""
    if alice is not None:
        gamma = apply_cp_map_alice(gamma, alice)
    if bob is not None:
        gamma = apply_cp_map_bob(gamma, bob)
    return gamma
