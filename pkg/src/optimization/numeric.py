"""
Multi-start simplex search over general (non-diagonal) map matrices

The noise is always set to its optimum for the current S, so only S is
searched: four entries per mode, or three angles-and-squeezing parameters
when the map must stay symplectic. Deterministic for a given seed.
"""
from dataclasses import dataclass
from typing import Callable, List, Optional, Union

import numpy as np
from loguru import logger
from scipy.optimize import minimize

from ..config import MIN_FALLBACK_STARTS
from ..gaussian.covariance import OneModeCovariance, TwoModeCovariance, mirror_modes, require_physical
from ..gaussian.symplectic import R_MATRIX, rotation, single_mode_squeezer
from ..utils.errors import DegenerateObjectiveError, ValidationError
from .candidates import CandidateKind, CandidateSolution, OptimizationResult, Side, Target, select_best
from .one_sided import coerce_side, direct_candidate, mirror_candidate
from .two_sided import two_sided_candidate, vacuum_both_candidate

DEFAULT_MAX_ITER = 5000
FATOL = 1e-12
XATOL = 1e-10


@dataclass(frozen=True)
class SearchOutcome:
    """Best parameter vector of a multi-start run"""
    params: np.ndarray
    value: float
    converged: bool
    starts: int


def _det2(s: np.ndarray) -> float:
    return float(s[0, 0] * s[1, 1] - s[0, 1] * s[1, 0])


class _Objective:
    """sqrt of the optimal determinant as a function of the raw map entries"""

    def __init__(self, gamma: TwoModeCovariance, d: Optional[OneModeCovariance]):
        self.a = gamma.block_a
        self.b = gamma.block_b
        self.c = gamma.block_c
        self.two_d = np.zeros((2, 2)) if d is None else 2.0 * d.m

    def _root_det(self, s_alice: np.ndarray, s_bob: np.ndarray) -> float:
        r = R_MATRIX
        cross = r @ s_alice @ self.c @ s_bob.T
        m = self.two_d + r @ s_alice @ self.a @ s_alice.T @ r + cross + cross.T + s_bob @ self.b @ s_bob.T
        return float(np.sqrt(max(_det2(m), 0.0)))

    def one_side(self, s: np.ndarray) -> float:
        return abs(1.0 - _det2(s)) + self._root_det(np.eye(2), s)

    def both_sides(self, s_alice: np.ndarray, s_bob: np.ndarray) -> float:
        return abs(1.0 - _det2(s_alice)) + abs(1.0 - _det2(s_bob)) + self._root_det(s_alice, s_bob)


def symplectic_from_params(theta: np.ndarray) -> np.ndarray:
    """Euler form rot(t0) diag(e^-t1, e^t1) rot(t2), any single-mode symplectic"""
    return rotation(theta[0]) @ single_mode_squeezer(theta[1]) @ rotation(theta[2])


def _general_from_params(theta: np.ndarray) -> np.ndarray:
    return np.asarray(theta[:4], dtype=float).reshape(2, 2)


class NumericOptimizer:
    """Derivative-free multi-start minimizer of the reduced determinant"""

    def __init__(self, starts: int = MIN_FALLBACK_STARTS, max_iter: int = DEFAULT_MAX_ITER, seed: int = 0):
        if starts < MIN_FALLBACK_STARTS:
            raise ValidationError(f"numeric optimizer needs at least {MIN_FALLBACK_STARTS} starts, got {starts}")
        if max_iter < 1:
            raise ValidationError(f"max_iter must be positive, got {max_iter}")
        self.starts = starts
        self.max_iter = max_iter
        self.seed = seed
        self.logger = logger.bind(component="NumericOptimizer")

    def _initial_points(self, fixed: List[np.ndarray], dim: int, scale: float) -> List[np.ndarray]:
        rng = np.random.default_rng(self.seed)
        points = [np.asarray(p, dtype=float) for p in fixed]
        while len(points) < self.starts:
            points.append(rng.normal(scale=scale, size=dim))
        return points

    def _run(self, fun: Callable[[np.ndarray], float], x0: np.ndarray):
        return minimize(
            fun,
            x0,
            method="Nelder-Mead",
            options={"maxiter": self.max_iter, "xatol": XATOL, "fatol": FATOL},
        )

    def search(self, fun: Callable[[np.ndarray], float], points: List[np.ndarray]) -> SearchOutcome:
        best = None
        for x0 in points:
            res = self._run(fun, x0)
            if best is None or res.fun < best.fun:
                best = res
        # one restart from the winner rebuilds a collapsed simplex
        polished = self._run(fun, best.x)
        if polished.fun <= best.fun:
            best = polished
        if not best.success:
            self.logger.warning(f"Simplex search hit the iteration cap: {best.message}")
        return SearchOutcome(params=np.asarray(best.x), value=float(best.fun), converged=bool(best.success),
                             starts=len(points))

    def bob_side(
        self, gamma: TwoModeCovariance, d: Optional[OneModeCovariance], symplectic_only: bool = False
    ) -> tuple:
        objective = _Objective(gamma, d)
        if symplectic_only:
            to_s = symplectic_from_params
            fixed = [np.zeros(3), np.array([np.pi, 0.0, 0.0]), np.array([np.pi / 2, 0.0, 0.0])]
            points = self._initial_points(fixed, 3, scale=1.0)
        else:
            to_s = _general_from_params
            fixed = [
                np.array([1.0, 0.0, 0.0, 1.0]),
                np.zeros(4),
                np.array([-1.0, 0.0, 0.0, -1.0]),
                np.array([1.0, 0.0, 0.0, -1.0]),
                np.array([-1.0, 0.0, 0.0, 1.0]),
                np.array([0.5, 0.0, 0.0, 0.5]),
            ]
            points = self._initial_points(fixed, 4, scale=1.0)
        outcome = self.search(lambda theta: objective.one_side(to_s(theta)), points)
        return to_s(outcome.params), outcome

    def both_sides(self, gamma: TwoModeCovariance, d: Optional[OneModeCovariance]) -> tuple:
        objective = _Objective(gamma, d)
        eye, zero, neg = [1.0, 0.0, 0.0, 1.0], [0.0] * 4, [-1.0, 0.0, 0.0, -1.0]
        fixed = [np.array(a + b) for a, b in
                 [(eye, eye), (zero, zero), (eye, zero), (zero, eye), (neg, neg), (eye, neg), (neg, eye)]]
        points = self._initial_points(fixed, 8, scale=1.0)

        def fun(theta: np.ndarray) -> float:
            return objective.both_sides(_general_from_params(theta[:4]), _general_from_params(theta[4:]))

        outcome = self.search(fun, points)
        return _general_from_params(outcome.params[:4]), _general_from_params(outcome.params[4:]), outcome


def optimize_numeric_fallback(
    gamma: TwoModeCovariance,
    d: Optional[OneModeCovariance],
    side: Union[Side, str] = Side.BOB,
    starts: int = MIN_FALLBACK_STARTS,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
    symplectic_only: bool = False,
) -> OptimizationResult:
    """
    Numeric optimum over general map matrices

    The result always contains doing nothing and vacuum replacement for the
    same side so the best candidate never falls below them. Non-convergence
    is reported through OptimizationResult.converged, not raised.

    Args:
        gamma: Physical channel covariance
        d: Pure input covariance, or None for the swap fidelity
        side: bob, alice or both
        starts: Nelder-Mead starts, at least 32
        max_iter: Iteration cap per start
        seed: Seed for the randomized starts
        symplectic_only: Restrict one-sided searches to det S = 1, G = 0

    Returns:
        OptimizationResult with method "numeric"
    """
    side = coerce_side(side)
    require_physical(gamma, "channel")
    target = Target.from_input(d)
    optimizer = NumericOptimizer(starts=starts, max_iter=max_iter, seed=seed)

    if side is Side.BOTH:
        if symplectic_only:
            raise ValidationError("symplectic-only search is available for one side only")
        s_alice, s_bob, outcome = optimizer.both_sides(gamma, d)
        candidates = [two_sided_candidate(gamma, d, CandidateKind.IDENTITY, np.eye(2), np.eye(2)),
                      vacuum_both_candidate(gamma, d)]
        try:
            candidates.append(two_sided_candidate(gamma, d, CandidateKind.TWO_SIDED, s_alice, s_bob))
        except DegenerateObjectiveError as exc:
            optimizer.logger.debug(f"Discarding degenerate two-sided optimum: {exc}")
    else:
        work = mirror_modes(gamma) if side is Side.ALICE else gamma
        s, outcome = optimizer.bob_side(work, d, symplectic_only)
        kind = CandidateKind.ALICE_SIDE if side is Side.ALICE else CandidateKind.BOB_SIDE
        candidates = [direct_candidate(work, d, CandidateKind.IDENTITY, np.eye(2))]
        if not symplectic_only:
            candidates.append(direct_candidate(work, d, CandidateKind.VACUUM_REPLACEMENT, np.zeros((2, 2))))
        try:
            candidates.append(direct_candidate(work, d, kind, s))
        except DegenerateObjectiveError as exc:
            optimizer.logger.debug(f"Discarding degenerate numeric optimum: {exc}")
        if side is Side.ALICE:
            candidates = [mirror_candidate(c) for c in candidates]

    best = select_best(candidates)
    optimizer.logger.info(
        f"Numeric optimum ({side.value}, {target.kind.value}): fidelity={best.fidelity:.12g} "
        f"kind={best.kind.value} converged={outcome.converged} starts={outcome.starts}"
    )
    return OptimizationResult(
        best=best,
        all_candidates=candidates,
        target=target,
        side=side,
        converged=outcome.converged,
        method="numeric",
    )
