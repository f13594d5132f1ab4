"""
Tests for sweeps, reports and quadrature verification
"""
import math

import numpy as np
import pandas as pd
import pytest

from src.gaussian.covariance import OneModeCovariance
from src.optimization.one_sided import optimize_one_sided
from src.reporting.report import fidelity_report, verify_fidelities, verify_optimization
from src.reporting.sweep import SWEEP_COLUMNS, SweepSpec, run_sweep, summarize_sweep, winner_transitions
from src.utils.errors import ValidationError


class TestSweepSpec:
    """Test sweep configuration checks"""

    def test_defaults(self):
        """Test the default sweep"""
        spec = SweepSpec()
        assert len(spec.r_values) == 101
        assert spec.threshold == pytest.approx(math.log(2.0) / 2.0)

    @pytest.mark.parametrize("kwargs", [
        {"b0": -0.1},
        {"r_min": -1.0},
        {"r_min": 1.0, "r_max": 1.0},
        {"r_steps": 1},
        {"target": "mixed"},
        {"side": "carol"},
        {"side": "both", "target": "coherent"},
        {"modes": frozenset()},
        {"modes": frozenset({"optimal_cp", "other"})},
    ])
    def test_rejects(self, kwargs):
        """Test invalid sweep settings"""
        with pytest.raises(ValidationError):
            SweepSpec(**kwargs)

    def test_to_dict(self):
        """Test the sidecar form names the channel family"""
        data = SweepSpec(b0=0.25, modes=frozenset({"none", "optimal_cp"})).to_dict()
        assert data["channel"] == {"kind": "tmsv_noisy", "b0": 0.25}
        assert data["modes"] == ["none", "optimal_cp"]


class TestSweep:
    """Test sweep rows"""

    def test_columns_and_regimes(self):
        """Test the winner moves from replacement to damping to doing nothing"""
        spec = SweepSpec(b0=0.5, r_min=0.0, r_max=1.0, r_steps=11)
        table = run_sweep(spec)
        assert list(table.columns) == SWEEP_COLUMNS
        assert table["winner_kind"].iloc[0] == "vacuum_replacement"
        assert table.loc[np.isclose(table["r"], 0.2), "winner_kind"].item() == "interior_root"
        assert table["winner_kind"].iloc[-1] == "identity"
        assert (table["fidelity_optimal_cp"] >= table["fidelity_no_op"] - 1e-12).all()
        assert (table["fidelity_optimal_cp"] >= table["fidelity_symplectic_only"] - 1e-12).all()

    def test_no_op_column(self):
        """Test the do-nothing column at b0 = 0 is 1/(1 + e^-2r)"""
        spec = SweepSpec(b0=0.0, r_min=0.0, r_max=1.0, r_steps=5, modes=frozenset({"none"}))
        table = run_sweep(spec)
        expected = 1.0 / (1.0 + np.exp(-2.0 * table["r"]))
        assert np.allclose(table["fidelity_no_op"], expected, atol=1e-12)
        assert table["fidelity_optimal_cp"].isna().all()
        assert (table["winner_kind"] == "").all()

    def test_pure_channel_curves_coincide(self):
        """Test at b0 = 0 no map beats doing nothing, noisy or noiseless"""
        table = run_sweep(SweepSpec(b0=0.0, r_min=0.0, r_max=1.5, r_steps=16))
        assert np.allclose(table["fidelity_optimal_cp"], table["fidelity_no_op"], rtol=0.0, atol=1e-10)
        assert np.allclose(table["fidelity_symplectic_only"], table["fidelity_no_op"], rtol=0.0, atol=1e-10)
        assert (table["winner_kind"] == "identity").all()

    def test_workers_agree(self):
        """Test threaded rows match sequential rows"""
        spec = SweepSpec(r_steps=6)
        pd.testing.assert_frame_equal(run_sweep(spec, workers=1), run_sweep(spec, workers=3))

    def test_invalid_workers(self):
        """Test worker count validation"""
        with pytest.raises(ValidationError):
            run_sweep(SweepSpec(r_steps=3), workers=0)

    def test_swap_both_sides(self):
        """Test the two-sided swap sweep never drops below 1"""
        spec = SweepSpec(b0=0.5, r_steps=5, target="swap", side="both")
        table = run_sweep(spec)
        assert (table["fidelity_optimal_cp"] >= 1.0 - 1e-12).all()


class TestSummary:
    """Test sweep summaries"""

    def test_transitions(self):
        """Test transitions are reported where the kind changes"""
        table = pd.DataFrame({"r": [0.0, 0.1, 0.2, 0.3], "winner_kind": ["a", "b", "b", "c"]})
        assert winner_transitions(table) == [
            {"r": 0.1, "from": "a", "to": "b"},
            {"r": 0.3, "from": "b", "to": "c"},
        ]

    def test_summary(self):
        """Test the classical bound and symplectic-only deficit"""
        spec = SweepSpec(b0=0.5, r_steps=11)
        summary = summarize_sweep(spec, run_sweep(spec))
        assert summary["classical_bound"] == 0.5
        assert summary["rows"] == 11
        assert summary["max_gap_optimal_vs_symplectic"] > 0.0
        assert summary["symplectic_below_classical_r"]
        assert summary["transitions"][-1]["to"] == "identity"


class TestVerification:
    """Test quadrature cross-checks of reported values"""

    def test_fidelity_report(self, tmsv_pure):
        """Test the report carries both fidelities"""
        report = fidelity_report(tmsv_pure, OneModeCovariance.coherent(), include_swap=True)
        assert report["fidelity"] == pytest.approx(1.0 / (1.0 + math.exp(-1.0)), abs=1e-12)
        assert report["swap_fidelity"] == pytest.approx(math.e, rel=1e-12)
        assert report["ppt_separable"] is False

    def test_verify_fidelities(self, noisy_below_threshold, squeezed_input):
        """Test closed forms agree with quadrature"""
        verification = verify_fidelities(noisy_below_threshold, squeezed_input, True, 256, 1e-6)
        assert verification["passed"]
        assert [c["quantity"] for c in verification["checks"]] == ["fidelity", "swap_fidelity"]

    def test_verify_optimization(self, noisy_below_threshold):
        """Test the winning map re-evaluates to its claimed fidelity"""
        result = optimize_one_sided(noisy_below_threshold, OneModeCovariance.coherent())
        verification = verify_optimization(noisy_below_threshold, result, 256, 1e-6)
        assert verification["passed"]
        assert verification["checks"][0]["claim_delta"] < 1e-9

    def test_tolerance_failure(self, tmsv_pure):
        """Test a zero-width tolerance is reported as a failure"""
        verification = verify_fidelities(tmsv_pure, None, True, 64, 0.0)
        check = verification["checks"][0]
        assert verification["passed"] == (check["delta"] == 0.0)
