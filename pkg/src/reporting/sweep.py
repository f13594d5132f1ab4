"""
Squeezing sweeps over the noisy two-mode squeezed vacuum family
Produces plot-ready tables of optimal, symplectic-only and do-nothing fidelities
"""
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Optional

import numpy as np
import pandas as pd
from loguru import logger

from ..fidelity.teleportation import swap_fidelity, teleport_fidelity
from ..gaussian.channels import ChannelParams, make_tmsv_noisy, squeezing_threshold
from ..gaussian.covariance import OneModeCovariance
from ..optimization.candidates import CandidateSolution, OptimizationResult, Side
from ..optimization.one_sided import optimize_one_sided
from ..optimization.two_sided import optimize_swap_two_sided
from ..utils.errors import ValidationError

SWEEP_COLUMNS = [
    "r",
    "fidelity_optimal_cp",
    "fidelity_symplectic_only",
    "fidelity_no_op",
    "winner_kind",
    "x_opt",
    "y_opt",
]
SWEEP_MODES = frozenset({"optimal_cp", "symplectic_only", "none"})
SWEEP_TARGETS = ("coherent", "swap")
CSV_FLOAT_FORMAT = "%.12g"


@dataclass(frozen=True)
class SweepSpec:
    """Sweep of the squeezing r for a fixed added noise b0"""
    b0: float = 0.5
    r_min: float = 0.0
    r_max: float = 1.0
    r_steps: int = 101
    target: str = "coherent"
    side: str = "bob"
    modes: FrozenSet[str] = field(default_factory=lambda: SWEEP_MODES)

    def __post_init__(self):
        if not (math.isfinite(self.b0) and self.b0 >= 0):
            raise ValidationError(f"b0 must be >= 0, got {self.b0}")
        if not (math.isfinite(self.r_min) and self.r_min >= 0):
            raise ValidationError(f"r_min must be >= 0, got {self.r_min}")
        if not (math.isfinite(self.r_max) and self.r_max > self.r_min):
            raise ValidationError(f"r_max must exceed r_min, got r_min={self.r_min}, r_max={self.r_max}")
        if self.r_steps < 2:
            raise ValidationError(f"r_steps must be at least 2, got {self.r_steps}")
        if self.target not in SWEEP_TARGETS:
            raise ValidationError(f"sweep target must be one of {SWEEP_TARGETS}, got {self.target!r}")
        if self.side not in {s.value for s in Side}:
            raise ValidationError(f"unknown side {self.side!r}")
        if self.side == Side.BOTH.value and self.target != "swap":
            raise ValidationError("side 'both' is only available for the swap target")
        object.__setattr__(self, "modes", frozenset(self.modes))
        unknown = self.modes - SWEEP_MODES
        if unknown or not self.modes:
            raise ValidationError(f"sweep modes must be a non-empty subset of {sorted(SWEEP_MODES)}")

    @property
    def r_values(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.r_steps)

    @property
    def threshold(self) -> float:
        return squeezing_threshold(self.b0)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["modes"] = sorted(self.modes)
        data["channel"] = {"kind": "tmsv_noisy", "b0": self.b0}
        return data


def _diagonal_of(candidate: CandidateSolution) -> tuple:
    if candidate.x is not None:
        return candidate.x, candidate.y
    s = candidate.s_matrix
    return float(s[0, 0]), float(s[1, 1])


class SqueezingSweep:
    """Row-by-row evaluation of a SweepSpec; rows may run on a thread pool"""

    def __init__(self, spec: SweepSpec, workers: int = 1):
        if workers < 1:
            raise ValidationError(f"workers must be positive, got {workers}")
        self.spec = spec
        self.workers = workers
        self.logger = logger.bind(component="SqueezingSweep")
        self._input: Optional[OneModeCovariance] = (
            OneModeCovariance.coherent() if spec.target == "coherent" else None
        )

    def _optimize(self, gamma, symplectic_only: bool) -> OptimizationResult:
        side = Side(self.spec.side)
        if side is Side.BOTH:
            if not symplectic_only:
                return optimize_swap_two_sided(gamma)
            bob = optimize_one_sided(gamma, None, Side.BOB, symplectic_only=True)
            alice = optimize_one_sided(gamma, None, Side.ALICE, symplectic_only=True)
            return bob if bob.fidelity >= alice.fidelity else alice
        return optimize_one_sided(gamma, self._input, side, symplectic_only=symplectic_only)

    def row(self, r: float) -> Dict[str, Any]:
        gamma = make_tmsv_noisy(ChannelParams(r=float(r), b0=self.spec.b0))
        modes = self.spec.modes
        row: Dict[str, Any] = {column: np.nan for column in SWEEP_COLUMNS}
        row["r"] = float(r)
        row["winner_kind"] = ""
        if "optimal_cp" in modes:
            best = self._optimize(gamma, symplectic_only=False).best
            row["fidelity_optimal_cp"] = best.fidelity
            row["winner_kind"] = best.kind.value
            row["x_opt"], row["y_opt"] = _diagonal_of(best)
        if "symplectic_only" in modes:
            row["fidelity_symplectic_only"] = self._optimize(gamma, symplectic_only=True).fidelity
        if "none" in modes:
            value = swap_fidelity(gamma) if self._input is None else teleport_fidelity(gamma, self._input)
            row["fidelity_no_op"] = value.value
        return row

    def run(self) -> pd.DataFrame:
        r_values = self.spec.r_values
        self.logger.info(
            f"Sweeping r in [{self.spec.r_min}, {self.spec.r_max}] ({len(r_values)} steps), "
            f"b0={self.spec.b0}, target={self.spec.target}, side={self.spec.side}"
        )
        if self.workers == 1:
            rows = [self.row(r) for r in r_values]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                rows = list(pool.map(self.row, r_values))
        return pd.DataFrame(rows, columns=SWEEP_COLUMNS)


def run_sweep(spec: SweepSpec, workers: int = 1) -> pd.DataFrame:
    """
    One row per squeezing value r of the sweep

    Args:
        spec: Channel family, r grid, target, side and the modes to compute
        workers: Threads computing rows; the table does not depend on it

    Returns:
        DataFrame with SWEEP_COLUMNS, ordered by r

    Raises:
        ValidationError: if workers < 1
    """
    return SqueezingSweep(spec, workers=workers).run()


def winner_transitions(table: pd.DataFrame) -> List[Dict[str, Any]]:
    """Squeezing values at which the winning kind changes"""
    kinds = table["winner_kind"].tolist()
    r_values = table["r"].tolist()
    return [
        {"r": r_values[i], "from": kinds[i - 1], "to": kinds[i]}
        for i in range(1, len(kinds))
        if kinds[i] != kinds[i - 1]
    ]


def summarize_sweep(spec: SweepSpec, table: pd.DataFrame) -> Dict[str, Any]:
    """Peak fidelity, winner transitions and where only the noisy maps beat the classical bound"""
    optimal = table["fidelity_optimal_cp"]
    symplectic = table["fidelity_symplectic_only"]
    classical = 1.0 if spec.target == "swap" else 0.5
    summary: Dict[str, Any] = {
        "rows": int(len(table)),
        "classical_bound": classical,
        "transitions": winner_transitions(table),
    }
    if optimal.notna().any():
        summary["max_fidelity_optimal_cp"] = float(optimal.max())
    if optimal.notna().any() and symplectic.notna().any():
        gap = (optimal - symplectic).abs()
        summary["max_gap_optimal_vs_symplectic"] = float(gap.max())
        below = table.loc[(symplectic < classical) & (optimal > classical), "r"]
        summary["symplectic_below_classical_r"] = [float(r) for r in below.iloc[[0, -1]]] if len(below) else []
    return summary


def write_sweep(spec: SweepSpec, table: pd.DataFrame, out_path: Path) -> Path:
    """
    Write the CSV and a JSON sidecar next to it

    The CSV holds data only and is byte-stable; run metadata goes to the sidecar.
    """
    out_path = Path(out_path)
    table.to_csv(out_path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n", encoding="utf-8")
    sidecar = out_path.with_suffix(".json") if out_path.suffix != ".json" else out_path.with_suffix(".meta.json")
    threshold = spec.threshold
    metadata = {
        "config": spec.to_dict(),
        "r_th": threshold if math.isfinite(threshold) else None,
        "columns": SWEEP_COLUMNS,
        "summary": summarize_sweep(spec, table),
        "generated_at": datetime.now(timezone.utc).isoformat(),
    }
    with open(sidecar, "w", encoding="utf-8") as f:
        json.dump(metadata, f, indent=2, default=str)
        f.write("\n")
    logger.info(f"Sweep written to {out_path} (metadata {sidecar})")
    return sidecar
