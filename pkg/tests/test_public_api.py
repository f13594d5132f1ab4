"""
Tests for the documented public surface
"""
import inspect

import pytest

import src.gaussian as gaussian
from src import cli
from src.fidelity.teleportation import evaluate_fidelity, swap_fidelity, teleport_fidelity
from src.gaussian.channels import make_tmsv_noisy, parse_channel_spec
from src.gaussian.covariance import OneModeCovariance
from src.gaussian.standard_form import to_standard_form
from src.optimization.candidates import interior_candidates
from src.optimization.numeric import optimize_numeric_fallback
from src.optimization.one_sided import optimize_one_sided
from src.optimization.two_sided import optimize_swap_two_sided
from src.oracle.grid_search import grid_search_cp
from src.oracle.sampling import standard_form_sampler
from src.reporting.sweep import run_sweep

ENTRY_POINTS = [
    teleport_fidelity, swap_fidelity, evaluate_fidelity, make_tmsv_noisy, parse_channel_spec,
    to_standard_form, interior_candidates, optimize_one_sided, optimize_swap_two_sided,
    optimize_numeric_fallback, grid_search_cp, standard_form_sampler, run_sweep,
    OneModeCovariance.thermal, cli.cmd_fidelity, cli.cmd_optimize, cli.cmd_sweep,
]


class TestDocstrings:
    """Test the public entry points document their arguments"""

    @pytest.mark.parametrize("func", ENTRY_POINTS, ids=lambda f: f.__qualname__)
    def test_args_documented(self, func):
        """Test every parameter is named under Args"""
        doc = inspect.getdoc(func)
        assert doc and "Args:" in doc
        args_section = doc.split("Args:", 1)[1]
        for name in inspect.signature(func).parameters:
            if name in ("self", "cls"):
                continue
            assert f"{name}:" in args_section, f"{func.__qualname__} does not document {name}"

    def test_package_exports_are_documented(self):
        """Test every callable exported from the gaussian package has a docstring"""
        for name in gaussian.__all__:
            obj = getattr(gaussian, name)
            if callable(obj):
                assert inspect.getdoc(obj), f"{name} has no docstring"
