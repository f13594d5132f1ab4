"""Sweeps and reports for the command-line front end"""
from .report import (
    fidelity_report,
    optimization_report,
    print_fidelity_report,
    print_optimization_report,
    verify_fidelities,
    verify_optimization,
)
from .sweep import SWEEP_COLUMNS, SqueezingSweep, SweepSpec, run_sweep, summarize_sweep, winner_transitions, write_sweep

__all__ = [
    "fidelity_report",
    "optimization_report",
    "print_fidelity_report",
    "print_optimization_report",
    "verify_fidelities",
    "verify_optimization",
    "SWEEP_COLUMNS",
    "SqueezingSweep",
    "SweepSpec",
    "run_sweep",
    "summarize_sweep",
    "winner_transitions",
    "write_sweep",
]
