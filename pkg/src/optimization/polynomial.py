"""
Real roots of low-degree polynomials

Quadratics use the cancellation-free form of the quadratic formula. Higher
degrees go through companion-matrix eigenvalues (numpy.roots), keep the
numerically real ones and polish them with a few Newton steps.
"""
from typing import List, Sequence

import numpy as np

from ..utils.errors import DegenerateObjectiveError, ValidationError

COEFFICIENT_TOL = 1e-14
IMAG_TOL = 1e-9
LOOSE_IMAG_TOL = 1e-6
RESIDUAL_TOL = 1e-8
_NEWTON_STEPS = 8
_DUPLICATE_TOL = 1e-9
_CLUSTER_TOL = 1e-7


def _scale(coeffs: Sequence[float]) -> float:
    return max(1.0, max(abs(c) for c in coeffs))


def solve_quadratic(a2: float, a1: float, a0: float, tol: float = COEFFICIENT_TOL) -> List[float]:
    """
    Real roots of a2*x^2 + a1*x + a0, ascending

    Degenerates to the linear equation when a2 vanishes relative to the
    other coefficients. A double root is returned once.

    Raises:
        DegenerateObjectiveError: if all coefficients vanish
    """
    scale = _scale((a2, a1, a0))
    if abs(a2) <= tol * scale:
        if abs(a1) <= tol * scale:
            if abs(a0) <= tol * scale:
                raise DegenerateObjectiveError("quadratic vanishes identically")
            return []
        return [-a0 / a1]

    disc = a1 * a1 - 4.0 * a2 * a0
    if disc < 0:
        if disc >= -tol * scale * scale:
            disc = 0.0
        else:
            return []
    if disc == 0.0:
        return [-a1 / (2.0 * a2)]

    # q never cancels: its sign follows a1
    q = -0.5 * (a1 + np.copysign(np.sqrt(disc), a1))
    roots = [q / a2]
    if q != 0.0:
        roots.append(a0 / q)
    else:
        roots.append(-roots[0])
    return sorted(roots)


def _polish(coeffs: np.ndarray, root: float) -> float:
    deriv = np.polyder(coeffs)
    x = root
    for _ in range(_NEWTON_STEPS):
        slope = np.polyval(deriv, x)
        if slope == 0.0:
            break
        step = np.polyval(coeffs, x) / slope
        candidate = x - step
        if abs(np.polyval(coeffs, candidate)) > abs(np.polyval(coeffs, x)):
            break
        x = candidate
        if abs(step) <= 1e-16 * max(1.0, abs(x)):
            break
    return float(x)


def _merge_multiple(p: np.ndarray, roots: List[float]) -> List[float]:
    """
    Collapse clusters of polished roots that are one multiple root

    A root of multiplicity m is only resolved to about eps**(1/m), so its
    copies land a few 1e-9 apart. A cluster is one root when polishing the
    derivative from its centre lands on a point where p itself vanishes.
    """
    merged: List[float] = []
    cluster: List[float] = []
    tolerance = RESIDUAL_TOL * _scale(p)

    def flush() -> None:
        if len(cluster) == 1:
            merged.append(cluster[0])
        elif cluster:
            centre = _polish(np.polyder(p), float(np.mean(cluster)))
            size = max(1.0, abs(centre))
            if abs(np.polyval(p, centre)) <= tolerance * size ** (len(p) - 1):
                merged.append(centre)
            else:
                merged.extend(cluster)
        cluster.clear()

    for x in roots:
        if cluster and abs(x - cluster[-1]) > _CLUSTER_TOL * max(1.0, abs(x)):
            flush()
        cluster.append(x)
    flush()
    return merged


def real_polynomial_roots(coeffs: Sequence[float]) -> List[float]:
    """
    Distinct real roots of a polynomial given highest power first

    Raises:
        DegenerateObjectiveError: if every coefficient vanishes
    """
    p = np.asarray(coeffs, dtype=float)
    scale = _scale(p)
    nonzero = np.flatnonzero(np.abs(p) > COEFFICIENT_TOL * scale)
    if len(nonzero) == 0:
        raise DegenerateObjectiveError("polynomial vanishes identically")
    p = p[nonzero[0]:]
    if len(p) == 1:
        return []
    if len(p) == 3:
        return solve_quadratic(*p)

    roots: List[float] = []
    for z in np.roots(p):
        size = max(1.0, abs(z))
        if abs(z.imag) <= IMAG_TOL * size:
            roots.append(_polish(p, z.real))
        elif abs(z.imag) < LOOSE_IMAG_TOL * size:
            # near-double roots split into a conjugate pair; keep them if the real part is a root
            x = _polish(p, z.real)
            if abs(np.polyval(p, x)) <= RESIDUAL_TOL * _scale(p) * size ** (len(p) - 1):
                roots.append(x)

    roots = _merge_multiple(p, sorted(roots))
    distinct: List[float] = []
    for x in roots:
        if not distinct or abs(x - distinct[-1]) > _DUPLICATE_TOL * max(1.0, abs(x)):
            distinct.append(x)
    return distinct


def real_quartic_roots(coeffs: Sequence[float]) -> List[float]:
    """Real roots of a quartic (highest power first); degree may drop if leading terms vanish"""
    if len(coeffs) != 5:
        raise ValidationError(f"quartic needs 5 coefficients, got {len(coeffs)}")
    return real_polynomial_roots(coeffs)
