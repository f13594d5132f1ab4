"""
Candidate local maps for the one-sided optimization

All candidates here live in the standard frame: the channel is tridiagonal
(a, b, c1, c2), the input covariance diag(d11, d22) and the map on Bob's
mode is S = diag(x, y). With p = 2*d11 + a and q = 2*d22 + a the reduced
objective is

    f(x, y) = |1 - xy| + sqrt(alpha(x) * beta(y))
    alpha(x) = p + 2*c1*x + b*x^2,   beta(y) = q - 2*c2*y + b*y^2

Interior stationary points solve a quadratic in x; stationary points on
the symplectic boundary xy = 1 solve a quartic.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.optimize import minimize_scalar, root

from ..fidelity.teleportation import require_pure_input
from ..gaussian.covariance import OneModeCovariance, TwoModeCovariance
from ..gaussian.cp_map import GaussianCpMap, apply_local_cp_maps
from ..gaussian.standard_form import StandardFormParams
from ..utils.errors import DegenerateObjectiveError, PreconditionError, ValidationError
from .objective import (
    ObjectiveQuadratic,
    fidelity_from_determinant,
    objective_determinant,
    optimal_g_for_s,
)
from .polynomial import real_quartic_roots, solve_quadratic

TIE_TOL = 1e-10
STATIONARY_TOL = 1e-7
SIGN_CASE_TOL = 1e-9
DENOMINATOR_TOL = 1e-12
ZERO_ROOT_TOL = 1e-12
NEAR_DOUBLE_TOL = 1e-8
DUPLICATE_POINT_TOL = 1e-9
_SCAN_BOUND = 10.0


class CandidateKind(Enum):
    IDENTITY = "identity"
    BOUNDARY_ROOT = "boundary_root"
    INTERIOR_ROOT = "interior_root"
    VACUUM_REPLACEMENT = "vacuum_replacement"
    BOB_SIDE = "bob_side"
    ALICE_SIDE = "alice_side"
    TWO_SIDED = "two_sided"


class Side(Enum):
    BOB = "bob"
    ALICE = "alice"
    BOTH = "both"


class SignCase(Enum):
    """Sign of 1 - det S at a candidate"""
    POSITIVE = "positive"
    NEGATIVE = "negative"
    BOUNDARY = "boundary"


class TargetKind(Enum):
    COHERENT = "coherent_fidelity"
    PURE_GAUSSIAN = "pure_gaussian_fidelity"
    SWAP = "swap_fidelity"


# least intervention first
_KIND_PRIORITY = {kind: rank for rank, kind in enumerate(CandidateKind)}
_SIDE_PRIORITY = {side: rank for rank, side in enumerate(Side)}


@dataclass(frozen=True, eq=False)
class Target:
    """Which fidelity is maximized: a pure input D, or the operation itself (D absent)"""
    kind: TargetKind
    d: Optional[OneModeCovariance] = None

    def __post_init__(self):
        if self.kind is TargetKind.SWAP:
            if self.d is not None:
                raise ValidationError("swap target takes no input covariance")
            return
        if self.d is None:
            raise ValidationError(f"{self.kind.value} target needs an input covariance")
        require_pure_input(self.d)

    @classmethod
    def coherent(cls) -> "Target":
        return cls(TargetKind.COHERENT, OneModeCovariance.coherent())

    @classmethod
    def pure_gaussian(cls, d: OneModeCovariance) -> "Target":
        return cls(TargetKind.PURE_GAUSSIAN, d)

    @classmethod
    def swap(cls) -> "Target":
        return cls(TargetKind.SWAP)

    @classmethod
    def from_input(cls, d: Optional[OneModeCovariance]) -> "Target":
        if d is None:
            return cls.swap()
        if np.allclose(d.m, np.eye(2), rtol=0.0, atol=1e-12):
            return cls.coherent()
        return cls.pure_gaussian(d)


@dataclass(frozen=True, eq=False)
class CandidateSolution:
    """
    One candidate strategy and the fidelity it reaches

    x and y are the diagonal of S in the standard frame when the candidate
    comes from the analytic solution; the maps themselves are expressed in
    the frame of the channel that was passed in.
    """
    kind: CandidateKind
    side: Side
    objective: float
    fidelity: float
    bob_map: Optional[GaussianCpMap] = None
    alice_map: Optional[GaussianCpMap] = None
    x: Optional[float] = None
    y: Optional[float] = None
    case: Optional[SignCase] = None
    stationary: bool = True

    def __post_init__(self):
        if self.side in (Side.BOB, Side.BOTH) and self.bob_map is None:
            raise ValidationError(f"{self.side.value} candidate needs a map on Bob's mode")
        if self.side in (Side.ALICE, Side.BOTH) and self.alice_map is None:
            raise ValidationError(f"{self.side.value} candidate needs a map on Alice's mode")

    @property
    def cp_map(self) -> GaussianCpMap:
        """The map on the optimized side (Bob's for two-sided candidates)"""
        return self.alice_map if self.side is Side.ALICE else self.bob_map

    @property
    def s_matrix(self) -> np.ndarray:
        return self.cp_map.s

    @property
    def g_matrix(self) -> np.ndarray:
        return self.cp_map.g

    def apply(self, gamma: TwoModeCovariance) -> TwoModeCovariance:
        """Channel after this candidate's local maps"""
        return apply_local_cp_maps(gamma, alice=self.alice_map, bob=self.bob_map)

    def with_maps(
        self, side: Side, bob_map: Optional[GaussianCpMap], alice_map: Optional[GaussianCpMap]
    ) -> "CandidateSolution":
        return CandidateSolution(
            kind=self.kind,
            side=side,
            objective=self.objective,
            fidelity=self.fidelity,
            bob_map=bob_map,
            alice_map=alice_map,
            x=self.x,
            y=self.y,
            case=self.case,
            stationary=self.stationary,
        )

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            "kind": self.kind.value,
            "side": self.side.value,
            "fidelity": self.fidelity,
            "objective": self.objective,
            "stationary": self.stationary,
        }
        if self.x is not None:
            result["x"] = self.x
            result["y"] = self.y
        if self.case is not None:
            result["case"] = self.case.value
        if self.bob_map is not None:
            result["bob"] = {"s": self.bob_map.s.tolist(), "g": self.bob_map.g.tolist()}
        if self.alice_map is not None:
            result["alice"] = {"s": self.alice_map.s.tolist(), "g": self.alice_map.g.tolist()}
        return result


@dataclass(frozen=True, eq=False)
class OptimizationResult:
    """Best candidate, everything that competed with it and what was rejected"""
    best: CandidateSolution
    all_candidates: List[CandidateSolution]
    target: Target
    side: Side
    rejected: List[CandidateSolution] = field(default_factory=list)
    converged: bool = True
    method: str = "analytic"
    diagnostics: List[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.all_candidates:
            raise ValidationError("optimization result needs at least one candidate")
        top = max(c.fidelity for c in self.all_candidates)
        if self.best.fidelity < top - TIE_TOL:
            raise ValidationError(f"best fidelity {self.best.fidelity} is below candidate maximum {top}")

    @property
    def fidelity(self) -> float:
        return self.best.fidelity

    def candidates_of_kind(self, kind: CandidateKind) -> List[CandidateSolution]:
        return [c for c in self.all_candidates if c.kind is kind]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": self.target.kind.value,
            "side": self.side.value,
            "method": self.method,
            "converged": self.converged,
            "best": self.best.to_dict(),
            "candidates": [c.to_dict() for c in self.all_candidates],
            "rejected": [c.to_dict() for c in self.rejected],
            "diagnostics": list(self.diagnostics),
        }


def select_best(candidates: Sequence[CandidateSolution]) -> CandidateSolution:
    """
    Highest fidelity; near-ties (within TIE_TOL) go to the least intervention,
    then to Bob's side, then to the earlier candidate
    """
    if not candidates:
        raise ValidationError("no candidates to select from")
    top = max(c.fidelity for c in candidates)
    ranked = [
        (_KIND_PRIORITY[c.kind], _SIDE_PRIORITY[c.side], index, c)
        for index, c in enumerate(candidates)
        if c.fidelity >= top - TIE_TOL
    ]
    return min(ranked, key=lambda entry: entry[:3])[3]


# Standard-frame problem

def _input_diagonal(d: Optional[OneModeCovariance]) -> Tuple[float, float]:
    if d is None:
        return 0.0, 0.0
    if not d.is_diagonal():
        raise PreconditionError(f"input covariance must be diagonal in the standard frame, got {d.m.tolist()}")
    return d.d11, d.d22


@dataclass(frozen=True)
class _Problem:
    a: float
    b: float
    c1: float
    c2: float
    p: float
    q: float
    d11: float
    d22: float

    @classmethod
    def build(cls, sf: StandardFormParams, d: Optional[OneModeCovariance]) -> "_Problem":
        d11, d22 = _input_diagonal(d)
        return cls(
            a=sf.a, b=sf.b, c1=sf.c1, c2=sf.c2,
            p=2.0 * d11 + sf.a, q=2.0 * d22 + sf.a, d11=d11, d22=d22,
        )

    def alpha(self, x: float) -> float:
        return self.p + 2.0 * self.c1 * x + self.b * x * x

    def beta(self, y: float) -> float:
        return self.q - 2.0 * self.c2 * y + self.b * y * y

    def objective(self, x: float, y: float) -> ObjectiveQuadratic:
        return ObjectiveQuadratic.diagonal(self.a, self.b, self.c1, self.c2, x, y, self.d11, self.d22)

    def reduced(self, x: float, y: float) -> float:
        """f(x, y) = |1 - xy| + sqrt(alpha*beta)"""
        return abs(1.0 - x * y) + float(np.sqrt(max(self.alpha(x) * self.beta(y), 0.0)))

    @property
    def scale(self) -> float:
        return max(1.0, self.p, self.q, self.b, abs(self.c1), abs(self.c2))


def _sign_case(x: float, y: float) -> SignCase:
    gap = 1.0 - x * y
    if abs(gap) <= SIGN_CASE_TOL * max(1.0, abs(x * y)):
        return SignCase.BOUNDARY
    return SignCase.POSITIVE if gap > 0 else SignCase.NEGATIVE


def _stationary_for_sign(problem: _Problem, x: float, y: float, sign: float) -> bool:
    """Extremal equations x = sign*(b*y - c2)*sqrt(alpha/beta), y = sign*(b*x + c1)*sqrt(beta/alpha)"""
    alpha, beta = problem.alpha(x), problem.beta(y)
    if alpha <= 0 or beta <= 0:
        return False
    ratio = np.sqrt(alpha / beta)
    res_x = x - sign * (problem.b * y - problem.c2) * ratio
    res_y = y - sign * (problem.b * x + problem.c1) / ratio
    tol = STATIONARY_TOL * problem.scale * max(1.0, abs(x), abs(y))
    return abs(res_x) <= tol and abs(res_y) <= tol


def _is_stationary(problem: _Problem, x: float, y: float) -> Tuple[SignCase, bool]:
    case = _sign_case(x, y)
    if case is SignCase.POSITIVE:
        return case, _stationary_for_sign(problem, x, y, 1.0)
    if case is SignCase.NEGATIVE:
        return case, _stationary_for_sign(problem, x, y, -1.0)
    return case, _stationary_for_sign(problem, x, y, 1.0) or _stationary_for_sign(problem, x, y, -1.0)


def _diagonal_candidate(
    problem: _Problem,
    kind: CandidateKind,
    x: float,
    y: float,
    case: Optional[SignCase],
    stationary: bool,
) -> CandidateSolution:
    obj = problem.objective(x, y)
    s_det = x * y
    g = optimal_g_for_s(obj, s_det)
    value = objective_determinant(obj, s_det)
    return CandidateSolution(
        kind=kind,
        side=Side.BOB,
        objective=value,
        fidelity=fidelity_from_determinant(value),
        bob_map=GaussianCpMap.diagonal(x, y, g),
        x=float(x),
        y=float(y),
        case=case,
        stationary=stationary,
    )


def _interior_coefficients(problem: _Problem) -> Tuple[float, float, float]:
    """
    Quadratic in x whose roots are the interior stationary points

    Eliminating y with y = c2 (b x + c1) / (k x + b c1), k = b^2 - 1, from the
    extremal equations leaves k*M x^2 + 2 b c1 M x + b c1^2 (q b - c2^2) - p c2^2
    with M = q k - b c2^2.
    """
    b, c1, c2, p, q = problem.b, problem.c1, problem.c2, problem.p, problem.q
    k = b * b - 1.0
    m = q * k - b * c2 * c2
    return k * m, 2.0 * b * c1 * m, b * c1 * c1 * (q * b - c2 * c2) - p * c2 * c2


def _y_from_x(problem: _Problem, x: float) -> Optional[float]:
    b, c1, c2 = problem.b, problem.c1, problem.c2
    denominator = (b * b - 1.0) * x + b * c1
    if abs(denominator) <= DENOMINATOR_TOL * problem.scale * max(1.0, abs(x)):
        return None
    return c2 * (b * x + c1) / denominator


def _near_double(coeffs: Tuple[float, float, float]) -> bool:
    """Roots of the interior quadratic too close for y = c2*w/(k*x + b*c1) to be trusted"""
    a2, a1, a0 = coeffs
    if abs(a2) <= DENOMINATOR_TOL * max(abs(a1), abs(a0), 1.0):
        return False
    disc = a1 * a1 - 4.0 * a2 * a0
    return abs(disc) <= NEAR_DOUBLE_TOL * max(a1 * a1, abs(4.0 * a2 * a0))


def _y_from_extremal(problem: _Problem, x: float) -> List[float]:
    """
    Both y with y^2 alpha(x) = (b x + c1)^2 beta(y)

    This is the squared y-equation, so it holds in either sign case and
    stays well conditioned where the elimination ratio is 0/0.
    """
    w = problem.b * x + problem.c1
    try:
        return solve_quadratic(
            problem.alpha(x) - problem.b * w * w,
            2.0 * problem.c2 * w * w,
            -problem.q * w * w,
        )
    except DegenerateObjectiveError:
        return []


def _refine_stationary(problem: _Problem, x: float, y: float) -> Tuple[float, float]:
    """Newton-type polish of (x, y) on the extremal equations of its sign case"""
    sign = -1.0 if x * y > 1.0 else 1.0

    def residual(v: np.ndarray) -> List[float]:
        vx, vy = float(v[0]), float(v[1])
        alpha = max(problem.alpha(vx), np.finfo(float).tiny)
        beta = max(problem.beta(vy), np.finfo(float).tiny)
        ratio = np.sqrt(alpha / beta)
        return [
            vx - sign * (problem.b * vy - problem.c2) * ratio,
            vy - sign * (problem.b * vx + problem.c1) / ratio,
        ]

    sol = root(residual, [x, y], method="hybr", options={"xtol": 1e-15})
    if not sol.success or not np.all(np.isfinite(sol.x)):
        return x, y
    return float(sol.x[0]), float(sol.x[1])


def _line_candidates(problem: _Problem, x0: float, notes: List[str]) -> List[CandidateSolution]:
    """Interior points at (or next to) the double root x0 = -b*c1/k"""
    points: List[Tuple[float, float]] = []
    for y0 in _y_from_extremal(problem, x0):
        x, y = _refine_stationary(problem, x0, y0)
        tol = DUPLICATE_POINT_TOL * max(1.0, abs(x), abs(y))
        if any(abs(x - px) <= tol and abs(y - py) <= tol for px, py in points):
            continue
        points.append((x, y))

    candidates = []
    for x, y in points:
        case, stationary = _is_stationary(problem, x, y)
        try:
            candidates.append(_diagonal_candidate(problem, CandidateKind.INTERIOR_ROOT, x, y, case, stationary))
        except DegenerateObjectiveError as exc:
            notes.append(f"interior point x={x:.12g} skipped: {exc}")
    return candidates


def _scan_interior(problem: _Problem) -> List[float]:
    """Numeric minimization of f along the elimination curve when the quadratic vanishes"""
    def along_curve(x: float) -> float:
        y = _y_from_x(problem, x)
        return np.inf if y is None else problem.reduced(x, y)

    res = minimize_scalar(along_curve, bounds=(-_SCAN_BOUND, _SCAN_BOUND), method="bounded",
                          options={"xatol": 1e-12})
    return [float(res.x)] if np.isfinite(res.fun) else []


def interior_candidates(
    sf: StandardFormParams,
    d: Optional[OneModeCovariance],
    diagnostics: Optional[List[str]] = None,
) -> List[CandidateSolution]:
    """
    Every real interior root, each tagged with its sign case and whether the
    extremal equations of that case actually hold there

    d=None is the operation (swap) target. Where the roots (nearly) coincide,
    or a root sits on the zero of the elimination denominator, y is taken
    from the squared y-equation instead and the point is polished on the
    extremal equations.

    Args:
        sf: Channel in standard form
        d: Diagonal pure input, or None
        diagnostics: List that receives notes on skipped or repaired roots

    Returns:
        INTERIOR_ROOT candidates; the non-stationary ones are for rejection

    Raises:
        PreconditionError: if d is not diagonal
    """
    notes = diagnostics if diagnostics is not None else []
    problem = _Problem.build(sf, d)

    coeffs = _interior_coefficients(problem)
    if _near_double(coeffs):
        # c2 -> 0 collapses both roots onto x0, where the y-ratio is 0/0
        x0 = -coeffs[1] / (2.0 * coeffs[0])
        logger.debug(f"Interior roots coincide at x={x0:.6g}; solving the y-equation directly")
        return _line_candidates(problem, x0, notes)

    try:
        roots = solve_quadratic(*coeffs)
    except DegenerateObjectiveError:
        notes.append("interior quadratic vanishes identically; scanned numerically")
        logger.debug("Interior quadratic degenerate, falling back to scalar scan")
        roots = _scan_interior(problem)

    candidates = []
    for x in roots:
        y = _y_from_x(problem, x)
        if y is None:
            notes.append(f"interior root x={x:.12g}: y denominator vanishes, solved y directly")
            candidates.extend(_line_candidates(problem, x, notes))
            continue
        case, stationary = _is_stationary(problem, x, y)
        try:
            candidates.append(_diagonal_candidate(problem, CandidateKind.INTERIOR_ROOT, x, y, case, stationary))
        except DegenerateObjectiveError as exc:
            notes.append(f"interior root x={x:.12g} skipped: {exc}")
    return candidates


def boundary_quartic_coefficients(sf: StandardFormParams, d: Optional[OneModeCovariance]) -> List[float]:
    """
    x^3/2 * d/dx[alpha(x) beta(1/x)], highest power first:
    b q x^4 + (c1 q - b c2) x^3 + (p c2 - b c1) x - p b
    """
    problem = _Problem.build(sf, d)
    b, c1, c2, p, q = problem.b, problem.c1, problem.c2, problem.p, problem.q
    return [b * q, c1 * q - b * c2, 0.0, p * c2 - b * c1, -p * b]


def boundary_candidates(sf: StandardFormParams, d: Optional[OneModeCovariance]) -> List[CandidateSolution]:
    """Noiseless candidates S = diag(x, 1/x) at the real roots of the boundary quartic, best first"""
    problem = _Problem.build(sf, d)
    candidates = []
    for x in real_quartic_roots(boundary_quartic_coefficients(sf, d)):
        if abs(x) <= ZERO_ROOT_TOL:
            continue
        candidates.append(
            _diagonal_candidate(problem, CandidateKind.BOUNDARY_ROOT, x, 1.0 / x, SignCase.BOUNDARY, True)
        )
    candidates.sort(key=lambda c: c.objective)
    return candidates


def stationarity_check(sf: StandardFormParams, d: Optional[OneModeCovariance], x: float, y: float) -> bool:
    """Whether (x, y) satisfies the extremal equations of its sign case"""
    return _is_stationary(_Problem.build(sf, d), x, y)[1]


def reduced_objective(sf: StandardFormParams, d: Optional[OneModeCovariance], x: float, y: float) -> float:
    """f(x, y) = |1 - xy| + sqrt(alpha(x) beta(y)); fidelity is 2/f"""
    return _Problem.build(sf, d).reduced(x, y)


def interior_quadratic_coefficients(
    sf: StandardFormParams, d: Optional[OneModeCovariance]
) -> Tuple[float, float, float]:
    """(x^2, x, 1) coefficients of the interior quadratic"""
    return _interior_coefficients(_Problem.build(sf, d))
