"""
Brute-force fidelities from Wigner functions on a phase-space grid

Independent of the closed-form evaluators: the teleportation kernel is
rebuilt here from the channel covariance, and the overlap integrals are
midpoint sums over a square grid.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
from loguru import logger

from ..gaussian.covariance import OneModeCovariance, TwoModeCovariance, require_physical
from ..utils.errors import PreconditionError, ValidationError

DEFAULT_POINTS = 512
DEFAULT_SIGMAS = 8.0
_MIN_POINTS = 64
_PURE_TOL = 1e-9
# cells per standard deviation along the narrowest direction
_MIN_RESOLUTION = 2.0

# homodyne kernel: the output mode receives x_B + x_A and p_B - p_A
_KERNEL = np.array([[1.0, 0.0, 1.0, 0.0], [0.0, -1.0, 0.0, 1.0]])
# the (x, p, -x, p) slice of the two-mode phase space
_SWAP_SLICE = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, 1.0]])


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Square grid [-L, L]^2 with N midpoint cells per axis"""
    half_width: float
    points_per_axis: int = DEFAULT_POINTS

    def __post_init__(self):
        if not (np.isfinite(self.half_width) and self.half_width > 0):
            raise ValidationError(f"grid half width must be positive, got {self.half_width}")
        if self.points_per_axis < _MIN_POINTS or self.points_per_axis % 2:
            raise ValidationError(
                f"grid needs an even number of points >= {_MIN_POINTS}, got {self.points_per_axis}"
            )

    @classmethod
    def for_covariances(
        cls, *matrices: np.ndarray, points: int = DEFAULT_POINTS, sigmas: float = DEFAULT_SIGMAS
    ) -> "PhaseSpaceGrid":
        """Half width sigmas * sqrt(largest eigenvalue) over all matrices"""
        largest = max(float(np.linalg.eigvalsh(np.asarray(m, dtype=float))[-1]) for m in matrices)
        return cls(half_width=sigmas * np.sqrt(largest), points_per_axis=points)

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.points_per_axis

    @property
    def axis(self) -> np.ndarray:
        """Cell midpoints"""
        return -self.half_width + self.spacing * (np.arange(self.points_per_axis) + 0.5)

    @property
    def cell_area(self) -> float:
        return self.spacing * self.spacing

    def mesh(self):
        return np.meshgrid(self.axis, self.axis, indexing="ij")

    def is_adequate_for(self, v: np.ndarray) -> bool:
        """Wide enough for 8 sigma tails and fine enough to resolve the narrowest direction"""
        evals = np.linalg.eigvalsh(np.asarray(v, dtype=float))
        wide = self.half_width >= DEFAULT_SIGMAS * np.sqrt(evals[-1]) * (1.0 - 1e-12)
        fine = self.spacing * _MIN_RESOLUTION <= np.sqrt(evals[0])
        return bool(wide and fine)


@dataclass(frozen=True)
class OracleValue:
    """Quadrature result and whether the grid was adequate for it"""
    value: float
    grid_adequate: bool

    def __float__(self) -> float:
        return float(self.value)


def gaussian_wigner(v: np.ndarray, x: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Single-mode Wigner function 1/(pi sqrt(det V)) exp(-r^T V^-1 r) on a mesh"""
    v = np.asarray(v, dtype=float)
    det = v[0, 0] * v[1, 1] - v[0, 1] * v[1, 0]
    inv = np.linalg.inv(v)
    form = inv[0, 0] * x * x + (inv[0, 1] + inv[1, 0]) * x * p + inv[1, 1] * p * p
    return np.exp(-form) / (np.pi * np.sqrt(det))


def kernel_covariance(gamma: TwoModeCovariance) -> np.ndarray:
    """Covariance the channel adds to the teleported mode"""
    added = _KERNEL @ gamma.m @ _KERNEL.T
    return 0.5 * (added + added.T)


def _warn_if_inadequate(adequate: bool, what: str, grid: PhaseSpaceGrid) -> None:
    if not adequate:
        logger.warning(
            f"{what}: grid (L={grid.half_width:.4g}, N={grid.points_per_axis}) is too small "
            "for the covariance scale; result may be inaccurate"
        )


def wigner_overlap_fidelity(
    gamma: TwoModeCovariance, d: OneModeCovariance, grid: Optional[PhaseSpaceGrid] = None
) -> OracleValue:
    """2 pi * sum W_in W_out over the grid, with W_out the Gaussian of D + kernel covariance"""
    require_physical(gamma, "channel")
    require_physical(d, "input state")
    if abs(np.linalg.det(d.m) - 1.0) > _PURE_TOL:
        raise PreconditionError(f"overlap fidelity needs a pure input, got det D = {np.linalg.det(d.m):.12g}")

    v_in = d.m
    v_out = v_in + kernel_covariance(gamma)
    grid = grid or PhaseSpaceGrid.for_covariances(v_in, v_out)
    x, p = grid.mesh()
    overlap = np.sum(gaussian_wigner(v_in, x, p) * gaussian_wigner(v_out, x, p)) * grid.cell_area
    adequate = grid.is_adequate_for(v_in) and grid.is_adequate_for(v_out)
    _warn_if_inadequate(adequate, "overlap fidelity", grid)
    return OracleValue(value=float(2.0 * np.pi * overlap), grid_adequate=adequate)


def swap_slice_covariance(gamma: TwoModeCovariance) -> np.ndarray:
    """Covariance of the Gaussian obtained by restricting W_AB to (x, p, -x, p)"""
    restricted = _SWAP_SLICE.T @ np.linalg.inv(gamma.m) @ _SWAP_SLICE
    v = np.linalg.inv(0.5 * (restricted + restricted.T))
    return 0.5 * (v + v.T)


def swap_fidelity_integral(gamma: TwoModeCovariance, grid: Optional[PhaseSpaceGrid] = None) -> OracleValue:
    """2 pi * integral of W_AB(x, p, -x, p) dx dp by midpoint quadrature"""
    require_physical(gamma, "channel")
    v_slice = swap_slice_covariance(gamma)
    grid = grid or PhaseSpaceGrid.for_covariances(v_slice)
    x, p = grid.mesh()

    inv = np.linalg.inv(gamma.m)
    points = np.stack([x, p, -x, p], axis=-1)
    form = np.einsum("...i,ij,...j->...", points, inv, points)
    w_ab = np.exp(-form) / (np.pi ** 2 * np.sqrt(np.linalg.det(gamma.m)))
    adequate = grid.is_adequate_for(v_slice)
    _warn_if_inadequate(adequate, "swap fidelity integral", grid)
    return OracleValue(value=float(2.0 * np.pi * np.sum(w_ab) * grid.cell_area), grid_adequate=adequate)
