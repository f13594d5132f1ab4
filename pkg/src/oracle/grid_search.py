"""
Exhaustive grid search over diagonal local maps

Scans S = diag(x, y) on Bob's mode, S = diag(u, v) on Alice's mode, or both,
with the optimal noise assigned at every grid point, and refines the winner
with finer local scans. The reduced determinant is evaluated here from the
raw channel blocks, without going through the optimizer's objective.
"""
from typing import Optional, Tuple, Union

import numpy as np
from loguru import logger

from ..gaussian.covariance import OneModeCovariance, TwoModeCovariance, require_physical
from ..gaussian.cp_map import GaussianCpMap
from ..optimization.candidates import CandidateKind, CandidateSolution, Side
from ..utils.errors import ValidationError

_REFINE_FACTOR = 100
_REFINE_POINTS_4D = 9
_REFLECT = np.diag([1.0, -1.0])


class _ReducedDeterminant:
    """f = |1 - uv| + |1 - xy| + sqrt(det M) for diagonal maps on both modes (broadcasting)"""

    def __init__(self, gamma: TwoModeCovariance, d: Optional[OneModeCovariance]):
        self.a = gamma.block_a
        self.b = gamma.block_b
        self.c = gamma.block_c
        self.two_d = np.zeros((2, 2)) if d is None else 2.0 * d.m

    def matrix_entries(self, u, v, x, y):
        # Alice's map reaches the output reflected: t = (u, -v)
        t0, t1 = u, -v
        a, b, c, k = self.a, self.b, self.c, self.two_d
        m00 = k[0, 0] + a[0, 0] * t0 * t0 + 2.0 * c[0, 0] * t0 * x + b[0, 0] * x * x
        m11 = k[1, 1] + a[1, 1] * t1 * t1 + 2.0 * c[1, 1] * t1 * y + b[1, 1] * y * y
        m01 = k[0, 1] + a[0, 1] * t0 * t1 + c[0, 1] * t0 * y + c[1, 0] * t1 * x + b[0, 1] * x * y
        return m00, m11, m01

    def __call__(self, u, v, x, y):
        m00, m11, m01 = self.matrix_entries(u, v, x, y)
        det = np.maximum(m00 * m11 - m01 * m01, 0.0)
        return np.abs(1.0 - u * v) + np.abs(1.0 - x * y) + np.sqrt(det)

    def noise(self, u: float, v: float, x: float, y: float) -> Tuple[np.ndarray, np.ndarray]:
        """Noise matrices (G_A, G_B) proportional to M at a grid point"""
        m00, m11, m01 = self.matrix_entries(u, v, x, y)
        m = np.array([[m00, m01], [m01, m11]], dtype=float)
        det = float(m00 * m11 - m01 * m01)
        shape = m / np.sqrt(det) if det > 0 else np.eye(2)
        return _REFLECT @ (abs(1.0 - u * v) * shape) @ _REFLECT, abs(1.0 - x * y) * shape


def _axis(center: float, half: float, step: float) -> np.ndarray:
    count = int(round(2.0 * half / step))
    return center - half + step * np.arange(count + 1)


def _best_2d(f, xs: np.ndarray, ys: np.ndarray) -> Tuple[float, float, float]:
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    values = f(gx, gy)
    # argmin keeps the first hit, i.e. the lexicographically smallest (x, y) among ties
    i, j = np.unravel_index(np.argmin(values), values.shape)
    return float(xs[i]), float(ys[j]), float(values[i, j])


def _search_2d(f, bounds: float, step: float, refine: bool) -> Tuple[float, float, float]:
    axis = _axis(0.0, bounds, step)
    x, y, value = _best_2d(f, axis, axis)
    if refine:
        fine = step / _REFINE_FACTOR
        x, y, value = _best_2d(f, _axis(x, 2.0 * step, fine), _axis(y, 2.0 * step, fine))
    return x, y, value


def _search_4d(f, bounds: float, step: float, refine: bool) -> Tuple[np.ndarray, float]:
    axis = _axis(0.0, bounds, step)
    gv, gx, gy = np.meshgrid(axis, axis, axis, indexing="ij")
    best_point, best_value = None, np.inf
    # one slab per u keeps memory at three dimensions
    for u in axis:
        values = f(u, gv, gx, gy)
        flat = int(np.argmin(values))
        if values.flat[flat] < best_value:
            idx = np.unravel_index(flat, values.shape)
            best_value = float(values.flat[flat])
            best_point = np.array([u, axis[idx[0]], axis[idx[1]], axis[idx[2]]])

    if refine:
        half = 2.0 * step
        while half > 2.0 * step / _REFINE_FACTOR:
            offsets = np.linspace(-half, half, _REFINE_POINTS_4D)
            grids = np.meshgrid(*[best_point[k] + offsets for k in range(4)], indexing="ij")
            values = f(*grids)
            flat = int(np.argmin(values))
            if values.flat[flat] <= best_value:
                best_value = float(values.flat[flat])
                best_point = np.array([g.flat[flat] for g in grids])
            half /= 2.0
    return best_point, best_value


def grid_search_cp(
    gamma: TwoModeCovariance,
    d: Optional[OneModeCovariance],
    side: Union[Side, str] = Side.BOB,
    bounds: float = 3.0,
    step: float = 0.01,
    refine: bool = True,
) -> CandidateSolution:
    """
    Best diagonal map found by scanning [-bounds, bounds] with the given step

    side=both scans (u, v, x, y) jointly and refines iteratively; use a
    coarse step there.

    Args:
        gamma: Physical channel covariance
        d: Input covariance, or None for the swap fidelity
        side: Which mode(s) carry the diagonal map
        bounds: Half-width of the scanned box
        step: Initial grid spacing
        refine: Zoom in around the best grid point

    Returns:
        Candidate of kind bob_side, alice_side or two_sided with the optimal
        noise for the scanned S
    """
    require_physical(gamma, "channel")
    if not (bounds > 0 and step > 0 and step < bounds):
        raise ValidationError(f"grid search needs 0 < step < bounds, got step={step}, bounds={bounds}")
    try:
        side = side if isinstance(side, Side) else Side(side)
    except ValueError as exc:
        raise ValidationError(f"unknown side {side!r}") from exc

    f = _ReducedDeterminant(gamma, d)
    if side is Side.BOB:
        x, y, value = _search_2d(lambda gx, gy: f(1.0, 1.0, gx, gy), bounds, step, refine)
        u, v = 1.0, 1.0
    elif side is Side.ALICE:
        u, v, value = _search_2d(lambda gu, gv: f(gu, gv, 1.0, 1.0), bounds, step, refine)
        x, y = 1.0, 1.0
    else:
        point, value = _search_4d(f, bounds, step, refine)
        u, v, x, y = (float(c) for c in point)

    g_alice, g_bob = f.noise(u, v, x, y)
    alice_map = GaussianCpMap.diagonal(u, v, g_alice) if side is not Side.BOB else None
    bob_map = GaussianCpMap.diagonal(x, y, g_bob) if side is not Side.ALICE else None
    kind = {Side.BOB: CandidateKind.BOB_SIDE, Side.ALICE: CandidateKind.ALICE_SIDE,
            Side.BOTH: CandidateKind.TWO_SIDED}[side]
    logger.debug(f"Grid search ({side.value}): f={value:.12g} at u={u:.6g} v={v:.6g} x={x:.6g} y={y:.6g}")
    return CandidateSolution(
        kind=kind,
        side=side,
        objective=value * value,
        fidelity=2.0 / value,
        bob_map=bob_map,
        alice_map=alice_map,
        x=x if side is not Side.ALICE else u,
        y=y if side is not Side.ALICE else v,
    )
