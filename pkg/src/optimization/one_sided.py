"""
Optimal local Gaussian CP map on one side of the channel

The channel is brought to standard form by local symplectics, the input
covariance is carried into the same frame, the diagonal problem is solved
analytically there and every candidate map is carried back. The Alice-side
problem is the Bob-side problem of the mirrored channel.
"""
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np
from loguru import logger

from ..gaussian.covariance import OneModeCovariance, TwoModeCovariance, mirror_modes, require_physical
from ..gaussian.cp_map import GaussianCpMap
from ..gaussian.standard_form import StandardFormParams, to_standard_form
from ..gaussian.symplectic import R_MATRIX
from ..utils.errors import ValidationError
from .candidates import (
    CandidateKind,
    CandidateSolution,
    OptimizationResult,
    Side,
    Target,
    boundary_candidates,
    interior_candidates,
    select_best,
)
from .objective import ObjectiveQuadratic, fidelity_from_determinant, objective_determinant, optimal_g_for_s

FRAME_TOL = 1e-10
MERGE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class StandardFrame:
    """
    Standard-form parameters of a channel together with the input covariance
    expressed in the same frame

    A map (S_hat, G_hat) found in the standard frame acts on the original
    channel as S = P S_hat S_B, G = P G_hat P^T with P = R S_A^-1 R.
    """
    params: StandardFormParams
    d_hat: Optional[OneModeCovariance]

    @property
    def p_matrix(self) -> np.ndarray:
        return R_MATRIX @ np.linalg.inv(self.params.s_a) @ R_MATRIX

    def to_channel_frame(self, cp_map: GaussianCpMap) -> GaussianCpMap:
        p = self.p_matrix
        g = p @ cp_map.g @ p.T
        return GaussianCpMap(p @ cp_map.s @ self.params.s_b, 0.5 * (g + g.T))


def _carry_input(s_a: np.ndarray, d: Optional[OneModeCovariance]) -> Optional[np.ndarray]:
    if d is None:
        return None
    p_inv = R_MATRIX @ s_a @ R_MATRIX
    d_hat = p_inv @ d.m @ p_inv.T
    return 0.5 * (d_hat + d_hat.T)


def _is_diagonal(m: np.ndarray) -> bool:
    return abs(m[0, 1]) <= FRAME_TOL * max(1.0, float(np.max(np.abs(m))))


def align_frame(gamma: TwoModeCovariance, d: Optional[OneModeCovariance]) -> Optional[StandardFrame]:
    """
    Standard frame in which the channel is tridiagonal and the input diagonal

    When the carried input is not diagonal, a common pair of rotations can
    still diagonalize it without spoiling the tridiagonal channel provided
    |c1| = |c2|. Returns None when no such frame exists.
    """
    sf = to_standard_form(gamma)
    d_hat = _carry_input(sf.s_a, d)
    if d_hat is None or _is_diagonal(d_hat):
        return StandardFrame(sf, None if d_hat is None else OneModeCovariance(d_hat))

    scale = max(1.0, abs(sf.c1), abs(sf.c2))
    if abs(abs(sf.c1) - abs(sf.c2)) > FRAME_TOL * scale:
        return None

    _, u = np.linalg.eigh(d_hat)
    if np.linalg.det(u) < 0:
        u[:, 1] = -u[:, 1]
    w_a = R_MATRIX @ u.T @ R_MATRIX
    # C = c1 R for c1 = -c2 and c1 I for c1 = c2
    w_b = u.T if sf.c1 * sf.c2 < 0 else w_a
    aligned = StandardFormParams(
        a=sf.a, b=sf.b, c1=sf.c1, c2=sf.c2, s_a=w_a @ sf.s_a, s_b=w_b @ sf.s_b
    )
    d_hat = _carry_input(aligned.s_a, d)
    d_hat[0, 1] = d_hat[1, 0] = 0.0
    return StandardFrame(aligned, OneModeCovariance(d_hat))


def direct_candidate(
    gamma: TwoModeCovariance,
    d: Optional[OneModeCovariance],
    kind: CandidateKind,
    s: np.ndarray,
) -> CandidateSolution:
    """Candidate for an explicit S on Bob's mode with its optimal noise"""
    obj = ObjectiveQuadratic.from_channel(gamma, s, d)
    s = np.asarray(s, dtype=float)
    s_det = float(s[0, 0] * s[1, 1] - s[0, 1] * s[1, 0])
    value = objective_determinant(obj, s_det)
    return CandidateSolution(
        kind=kind,
        side=Side.BOB,
        objective=value,
        fidelity=fidelity_from_determinant(value),
        bob_map=GaussianCpMap(s, optimal_g_for_s(obj, s_det)),
    )


def _duplicates_trivial(cp_map: GaussianCpMap) -> bool:
    s = cp_map.s
    return bool(
        np.allclose(s, np.eye(2), rtol=0.0, atol=MERGE_TOL) or np.allclose(s, 0.0, rtol=0.0, atol=MERGE_TOL)
    )


def mirror_candidate(candidate: CandidateSolution) -> CandidateSolution:
    """Bob-side candidate on the mirrored channel -> Alice-side candidate on the original"""
    bob = candidate.bob_map
    r = R_MATRIX
    return candidate.with_maps(Side.ALICE, None, GaussianCpMap(r @ bob.s @ r, r @ bob.g @ r))


def coerce_side(side: Union[Side, str]) -> Side:
    """Side from an enum member or its string value; ValidationError otherwise"""
    try:
        return side if isinstance(side, Side) else Side(side)
    except ValueError as exc:
        raise ValidationError(f"unknown side {side!r}; expected bob, alice or both") from exc


def optimize_one_sided(
    gamma: TwoModeCovariance,
    d: Optional[OneModeCovariance],
    side: Union[Side, str] = Side.BOB,
    symplectic_only: bool = False,
    seed: int = 0,
) -> OptimizationResult:
    """
    Best local map on one mode for a pure input D (or the operation itself when d is None)

    Candidates: stationary interior roots, boundary roots, doing nothing and
    replacing the mode by the optimal Gaussian state. With symplectic_only
    only noiseless maps compete (boundary roots and the identity).

    Falls back to the numeric optimizer when no frame makes both the channel
    and the input diagonal.

    Args:
        gamma: Physical channel covariance, in any local frame
        d: Pure input covariance, or None for the swap fidelity
        side: bob or alice
        symplectic_only: Keep only noiseless candidates
        seed: Seed passed on to the numeric fallback

    Returns:
        OptimizationResult whose maps are expressed in gamma's frame

    Raises:
        ValidationError: for side both or an unknown side
        PreconditionError: for a non-physical channel or a mixed input
    """
    side = coerce_side(side)
    if side is Side.BOTH:
        raise ValidationError("optimize_one_sided handles side bob or alice; use the two-sided optimizer")
    require_physical(gamma, "channel")
    target = Target.from_input(d)

    work = mirror_modes(gamma) if side is Side.ALICE else gamma
    frame = align_frame(work, d)
    if frame is None:
        logger.warning("Input covariance cannot be diagonalized with the channel; using numeric optimizer")
        from .numeric import optimize_numeric_fallback

        return optimize_numeric_fallback(gamma, d, side, seed=seed, symplectic_only=symplectic_only)

    diagnostics: List[str] = []
    identity = direct_candidate(work, d, CandidateKind.IDENTITY, np.eye(2))
    candidates = [identity]
    rejected: List[CandidateSolution] = []

    if not symplectic_only:
        candidates.append(direct_candidate(work, d, CandidateKind.VACUUM_REPLACEMENT, np.zeros((2, 2))))
        for candidate in interior_candidates(frame.params, frame.d_hat, diagnostics):
            carried = candidate.with_maps(Side.BOB, frame.to_channel_frame(candidate.bob_map), None)
            if not candidate.stationary:
                rejected.append(carried)
            elif not _duplicates_trivial(carried.bob_map):
                candidates.append(carried)

    for candidate in boundary_candidates(frame.params, frame.d_hat):
        carried = candidate.with_maps(Side.BOB, frame.to_channel_frame(candidate.bob_map), None)
        if not _duplicates_trivial(carried.bob_map):
            candidates.append(carried)

    if side is Side.ALICE:
        candidates = [mirror_candidate(c) for c in candidates]
        rejected = [mirror_candidate(c) for c in rejected]

    best = select_best(candidates)
    logger.debug(
        f"One-sided optimum ({side.value}, {target.kind.value}): kind={best.kind.value} "
        f"fidelity={best.fidelity:.12g} from {len(candidates)} candidates, {len(rejected)} rejected"
    )
    return OptimizationResult(
        best=best,
        all_candidates=candidates,
        target=target,
        side=side,
        rejected=rejected,
        diagnostics=diagnostics,
    )
