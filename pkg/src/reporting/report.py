"""
Fidelity and optimization reports
Builds plain dictionaries (for JSON output) and prints banner-style text summaries
"""
import json
from typing import Any, Dict, Optional

import numpy as np
from loguru import logger

from ..fidelity.teleportation import noise_matrix, swap_fidelity, teleport_fidelity
from ..gaussian.covariance import OneModeCovariance, TwoModeCovariance
from ..gaussian.separability import is_ppt_separable
from ..optimization.candidates import OptimizationResult
from ..oracle.wigner import (
    PhaseSpaceGrid,
    kernel_covariance,
    swap_fidelity_integral,
    swap_slice_covariance,
    wigner_overlap_fidelity,
)

BANNER = "=" * 60


def _check(name: str, closed_form: float, oracle, tolerance: float) -> Dict[str, Any]:
    delta = abs(closed_form - oracle.value)
    return {
        "quantity": name,
        "closed_form": closed_form,
        "oracle": oracle.value,
        "delta": delta,
        "grid_adequate": oracle.grid_adequate,
        "passed": bool(delta <= tolerance),
    }


def verify_fidelities(
    gamma: TwoModeCovariance,
    d: Optional[OneModeCovariance],
    include_swap: bool,
    points: int,
    tolerance: float,
) -> Dict[str, Any]:
    """Recompute the requested fidelities by phase-space quadrature and compare"""
    checks = []
    if d is not None:
        v_out = d.m + kernel_covariance(gamma)
        grid = PhaseSpaceGrid.for_covariances(d.m, v_out, points=points)
        checks.append(_check("fidelity", teleport_fidelity(gamma, d).value,
                             wigner_overlap_fidelity(gamma, d, grid), tolerance))
    if include_swap:
        grid = PhaseSpaceGrid.for_covariances(swap_slice_covariance(gamma), points=points)
        checks.append(_check("swap_fidelity", swap_fidelity(gamma).value,
                             swap_fidelity_integral(gamma, grid), tolerance))
    passed = all(c["passed"] for c in checks)
    if not passed:
        logger.error(f"Verification failed: {[c for c in checks if not c['passed']]}")
    return {"points": points, "tolerance": tolerance, "checks": checks, "passed": passed}


def fidelity_report(
    gamma: TwoModeCovariance,
    d: Optional[OneModeCovariance],
    include_swap: bool,
) -> Dict[str, Any]:
    report: Dict[str, Any] = {
        "channel": gamma.m.tolist(),
        "e_prime": noise_matrix(gamma).e.tolist(),
        "ppt_separable": is_ppt_separable(gamma),
        "input": None if d is None else d.m.tolist(),
        "fidelity": None,
        "swap_fidelity": None,
    }
    if d is not None:
        report["fidelity"] = teleport_fidelity(gamma, d).value
    if include_swap:
        report["swap_fidelity"] = swap_fidelity(gamma).value
    return report


def verify_optimization(
    gamma: TwoModeCovariance, result: OptimizationResult, points: int, tolerance: float
) -> Dict[str, Any]:
    """Apply the winning maps explicitly and re-evaluate the target by quadrature"""
    transformed = result.best.apply(gamma)
    d = result.target.d
    verification = verify_fidelities(transformed, d, include_swap=d is None, points=points, tolerance=tolerance)
    for check in verification["checks"]:
        check["claimed"] = result.best.fidelity
        check["claim_delta"] = abs(result.best.fidelity - check["closed_form"])
        check["passed"] = check["passed"] and check["claim_delta"] <= tolerance
    verification["passed"] = all(c["passed"] for c in verification["checks"])
    return verification


def optimization_report(result: OptimizationResult) -> Dict[str, Any]:
    return result.to_dict()


def _matrix(m) -> str:
    return np.array2string(np.asarray(m, dtype=float), precision=6, suppress_small=True).replace("\n", "")


def print_fidelity_report(report: Dict[str, Any]) -> None:
    print("\n" + BANNER)
    print("TELEPORTATION FIDELITY")
    print(BANNER)
    print(f"E' (channel noise):  {_matrix(report['e_prime'])}")
    print(f"PPT separable:       {'yes' if report['ppt_separable'] else 'no'}")
    if report["fidelity"] is not None:
        print(f"Input covariance:    {_matrix(report['input'])}")
        print(f"Fidelity F:          {report['fidelity']:.12g}")
    if report["swap_fidelity"] is not None:
        print(f"Swap fidelity:       {report['swap_fidelity']:.12g}")
    _print_verification(report.get("verification"))
    print(BANNER + "\n")


def print_optimization_report(report: Dict[str, Any]) -> None:
    print("\n" + BANNER)
    print("OPTIMAL LOCAL CP MAP")
    print(BANNER)
    print(f"Target: {report['target']}   Side: {report['side']}   Method: {report['method']}"
          f"{'' if report['converged'] else '   (NOT CONVERGED)'}")
    print("\nCandidates:")
    for candidate in report["candidates"]:
        _print_candidate(candidate)
    if report["rejected"]:
        print(f"\nRejected (not stationary): {len(report['rejected'])}")
        for candidate in report["rejected"]:
            print(f"  {candidate['kind']:<20s} x={candidate.get('x', float('nan')):.9g} "
                  f"y={candidate.get('y', float('nan')):.9g}")
    best = report["best"]
    print(f"\nWinner: {best['kind']} ({best['side']})  fidelity = {best['fidelity']:.12g}")
    for note in report.get("diagnostics", []):
        print(f"  note: {note}")
    _print_verification(report.get("verification"))
    print(BANNER + "\n")


def _print_candidate(candidate: Dict[str, Any]) -> None:
    print(f"  {candidate['kind']:<20s} [{candidate['side']}] fidelity = {candidate['fidelity']:.12g}")
    for side in ("alice", "bob"):
        if side in candidate:
            print(f"    {side:<5s} S = {_matrix(candidate[side]['s'])}  G = {_matrix(candidate[side]['g'])}")


def _print_verification(verification: Optional[Dict[str, Any]]) -> None:
    if not verification:
        return
    print(f"\nVerification (N = {verification['points']}, tolerance {verification['tolerance']:g}):")
    for check in verification["checks"]:
        status = "ok" if check["passed"] else "FAILED"
        print(f"  {check['quantity']:<14s} closed form {check['closed_form']:.12g}  "
              f"oracle {check['oracle']:.12g}  delta {check['delta']:.2e}  {status}")


def dump_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2, default=str)
