"""Optimal local Gaussian CP maps for teleportation"""
from .candidates import (
    CandidateKind,
    CandidateSolution,
    OptimizationResult,
    Side,
    SignCase,
    Target,
    TargetKind,
    boundary_candidates,
    boundary_quartic_coefficients,
    interior_candidates,
    interior_quadratic_coefficients,
    reduced_objective,
    select_best,
    stationarity_check,
)
from .numeric import NumericOptimizer, optimize_numeric_fallback
from .objective import (
    ObjectiveQuadratic,
    determinant_for_g,
    objective_determinant,
    optimal_g_for_s,
    optimal_g_pair,
    two_sided_determinant,
)
from .one_sided import StandardFrame, align_frame, optimize_one_sided
from .polynomial import real_quartic_roots, solve_quadratic
from .two_sided import optimize_swap_two_sided, two_sided_candidate, vacuum_both_candidate

__all__ = [
    "CandidateKind",
    "CandidateSolution",
    "OptimizationResult",
    "Side",
    "SignCase",
    "Target",
    "TargetKind",
    "boundary_candidates",
    "boundary_quartic_coefficients",
    "interior_candidates",
    "interior_quadratic_coefficients",
    "reduced_objective",
    "select_best",
    "stationarity_check",
    "NumericOptimizer",
    "optimize_numeric_fallback",
    "ObjectiveQuadratic",
    "determinant_for_g",
    "objective_determinant",
    "optimal_g_for_s",
    "optimal_g_pair",
    "two_sided_determinant",
    "StandardFrame",
    "align_frame",
    "optimize_one_sided",
    "real_quartic_roots",
    "solve_quadratic",
    "optimize_swap_two_sided",
    "two_sided_candidate",
    "vacuum_both_candidate",
]
