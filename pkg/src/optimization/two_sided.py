"""
Local maps on both modes for the operation (swap) fidelity

With maps on both sides the determinant is linear in the product of the
map determinants, so the optimum sits at an extreme: leave Alice alone and
optimize Bob, absorb everything into Alice, or discard the channel on both
sides and prepare vacua. The last strategy reaches the classical value 1.
"""
from typing import Optional

import numpy as np
from loguru import logger

from ..gaussian.covariance import OneModeCovariance, TwoModeCovariance, require_physical
from ..gaussian.cp_map import GaussianCpMap
from .candidates import CandidateKind, CandidateSolution, OptimizationResult, Side, Target, select_best
from .objective import (
    ObjectiveQuadratic,
    determinant_for_g,
    fidelity_from_determinant,
    optimal_g_pair,
    two_sided_determinant,
)
from .one_sided import optimize_one_sided


def two_sided_candidate(
    gamma: TwoModeCovariance,
    d: Optional[OneModeCovariance],
    kind: CandidateKind,
    s_alice: np.ndarray,
    s_bob: np.ndarray,
) -> CandidateSolution:
    """Candidate for explicit S_A, S_B with both noises chosen optimally"""
    s_alice = np.asarray(s_alice, dtype=float)
    s_bob = np.asarray(s_bob, dtype=float)
    obj = ObjectiveQuadratic.from_maps(gamma, s_alice, s_bob, d)
    det_a, det_b = float(np.linalg.det(s_alice)), float(np.linalg.det(s_bob))
    g_alice, g_bob = optimal_g_pair(obj, det_a, det_b)
    value = two_sided_determinant(obj, det_a, det_b)
    return CandidateSolution(
        kind=kind,
        side=Side.BOTH,
        objective=value,
        fidelity=fidelity_from_determinant(value),
        bob_map=GaussianCpMap(s_bob, g_bob),
        alice_map=GaussianCpMap(s_alice, g_alice),
    )


def vacuum_both_candidate(gamma: TwoModeCovariance, d: Optional[OneModeCovariance] = None) -> CandidateSolution:
    """Both modes replaced by vacuum; the optimal-noise formula is degenerate here so G = I"""
    zero = np.zeros((2, 2))
    obj = ObjectiveQuadratic.from_maps(gamma, zero, zero, d)
    value = determinant_for_g(obj, 2.0 * np.eye(2))
    return CandidateSolution(
        kind=CandidateKind.VACUUM_REPLACEMENT,
        side=Side.BOTH,
        objective=value,
        fidelity=fidelity_from_determinant(value),
        bob_map=GaussianCpMap.vacuum_replacement(),
        alice_map=GaussianCpMap.vacuum_replacement(),
    )


def optimize_swap_two_sided(gamma: TwoModeCovariance) -> OptimizationResult:
    """
    Best pair of local maps for the operation fidelity

    Compares the Bob-side optimum, the Alice-side optimum and vacuum on both
    modes; the candidate lists of all three are kept.

    Args:
        gamma: Physical channel covariance

    Returns:
        OptimizationResult with side BOTH and the swap target

    Raises:
        PreconditionError: if gamma is not physical
    """
    require_physical(gamma, "channel")
    bob = optimize_one_sided(gamma, None, Side.BOB)
    alice = optimize_one_sided(gamma, None, Side.ALICE)
    vacuum = vacuum_both_candidate(gamma)

    candidates = bob.all_candidates + alice.all_candidates + [vacuum]
    best = select_best(candidates)
    logger.debug(
        f"Two-sided swap optimum: kind={best.kind.value} side={best.side.value} "
        f"fidelity={best.fidelity:.12g} (bob {bob.fidelity:.12g}, alice {alice.fidelity:.12g})"
    )
    return OptimizationResult(
        best=best,
        all_candidates=candidates,
        target=Target.swap(),
        side=Side.BOTH,
        rejected=bob.rejected + alice.rejected,
        converged=bob.converged and alice.converged,
        method="analytic" if bob.method == alice.method == "analytic" else "mixed",
        diagnostics=bob.diagnostics + alice.diagnostics,
    )
