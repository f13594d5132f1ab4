"""
End-to-end acceptance checks

Full-size sweeps and randomized cross-checks against the quadrature and
grid-search oracles. Most are marked slow; run them with `pytest -m slow`.
"""
import math

import numpy as np
import pytest
from scipy.optimize import minimize

from src.fidelity.teleportation import swap_fidelity, teleport_fidelity
from src.gaussian.channels import ChannelParams, make_tmsv_noisy, squeezing_threshold
from src.gaussian.covariance import OneModeCovariance, TwoModeCovariance
from src.gaussian.separability import is_ppt_separable
from src.gaussian.standard_form import to_standard_form
from src.optimization.candidates import Side, interior_candidates
from src.optimization.objective import ObjectiveQuadratic, determinant_for_g, objective_determinant, optimal_g_for_s
from src.optimization.one_sided import optimize_one_sided
from src.optimization.two_sided import optimize_swap_two_sided, vacuum_both_candidate
from src.oracle.grid_search import grid_search_cp
from src.oracle.sampling import (
    physical_state_sampler,
    scramble_locally,
    separable_state_sampler,
    standard_form_sampler,
)
from src.oracle.wigner import PhaseSpaceGrid, kernel_covariance, wigner_overlap_fidelity
from src.reporting.sweep import SweepSpec, run_sweep, winner_transitions

R_TH_HALF = math.log(2.0) / 2.0


@pytest.fixture(scope="module")
def coherent_sweep():
    return run_sweep(SweepSpec(b0=0.5, r_min=0.0, r_max=1.0, r_steps=1001, target="coherent"))


@pytest.fixture(scope="module")
def swap_sweep():
    return run_sweep(SweepSpec(b0=0.5, r_min=0.0, r_max=1.0, r_steps=1001, target="swap"))


class TestClosedForms:
    """Exact values from the closed-form fidelities"""

    def test_swap_fidelity_grows_exponentially(self):
        """Test swap fidelity of the pure TMSV is e^{2r} on r = 0, 0.1, ..., 2"""
        for k in range(21):
            r = 0.1 * k
            value = swap_fidelity(make_tmsv_noisy(ChannelParams(r=r, b0=0.0))).value
            assert value == pytest.approx(math.exp(2.0 * r), rel=1e-12)

    def test_classical_bound(self):
        """Test two vacua teleport a coherent state with fidelity 1/2"""
        gamma = TwoModeCovariance(np.eye(4))
        assert teleport_fidelity(gamma, OneModeCovariance.coherent()).value == pytest.approx(0.5, abs=1e-14)


@pytest.mark.slow
class TestCoherentSweep:
    """Coherent-state sweep at b0 = 1/2"""

    def test_optimal_beats_classical(self, coherent_sweep):
        """Test the optimal map beats 1/2 for every r > 0"""
        positive = coherent_sweep[coherent_sweep["r"] > 0]
        assert (positive["fidelity_optimal_cp"] > 0.5).all()

    def test_curves_merge_above_threshold(self, coherent_sweep):
        """Test optimal and noiseless maps agree above r_th and differ below it"""
        gap = (coherent_sweep["fidelity_optimal_cp"] - coherent_sweep["fidelity_symplectic_only"]).abs()
        above = coherent_sweep["r"] >= R_TH_HALF
        assert (gap[above] <= 1e-10).all()
        assert (gap[~above] > 1e-6).any()

    def test_noiseless_maps_fall_below_classical(self, coherent_sweep):
        """Test noiseless maps alone lose to 1/2 somewhere in (0, r_th)"""
        inside = (coherent_sweep["r"] > 0) & (coherent_sweep["r"] < R_TH_HALF)
        assert (coherent_sweep.loc[inside, "fidelity_symplectic_only"] < 0.5).any()

    def test_transition_at_threshold(self, coherent_sweep):
        """Test the winner becomes the identity at r_th"""
        last = winner_transitions(coherent_sweep)[-1]
        assert last["to"] == "identity"
        assert last["r"] == pytest.approx(squeezing_threshold(0.5), abs=1e-3)


@pytest.mark.slow
class TestSwapSweep:
    """Swap-fidelity sweep at b0 = 1/2"""

    def test_region_above_one(self, swap_sweep):
        """Test a region where only the optimal map pushes the swap fidelity above 1"""
        region = (swap_sweep["fidelity_optimal_cp"] > 1.0) & (swap_sweep["fidelity_symplectic_only"] < 1.0)
        assert region.any()


@pytest.mark.slow
class TestRandomized:
    """Randomized cross-checks"""

    def test_interior_root_formulas(self):
        """Test x1 = c2/(b - 1) and x2 = c2/(b + 1) for 50 random channels"""
        rng = np.random.default_rng(2024)
        for _ in range(50):
            r, b0 = rng.uniform(1e-3, 1.0, size=2)
            gamma = make_tmsv_noisy(ChannelParams(r=r, b0=b0))
            sf = to_standard_form(gamma)
            xs = sorted(c.x for c in interior_candidates(sf, OneModeCovariance.coherent()))
            expected = sorted([sf.c2 / (sf.b - 1.0), sf.c2 / (sf.b + 1.0)])
            assert xs == pytest.approx(expected, rel=1e-10, abs=1e-10)

    def test_interior_root_one_at_threshold(self):
        """Test x1 = 1 at r_th for several noise levels"""
        for b0 in (0.1, 0.3, 0.5, 0.8):
            gamma = make_tmsv_noisy(ChannelParams(r=squeezing_threshold(b0), b0=b0))
            sf = to_standard_form(gamma)
            xs = [c.x for c in interior_candidates(sf, OneModeCovariance.coherent())]
            assert max(xs) == pytest.approx(1.0, abs=1e-9)

    def test_optimal_noise(self):
        """Test the optimal noise saturates CP and no other CP noise beats it"""
        rng = np.random.default_rng(7)
        checked = 0
        while checked < 1000:
            alpha, beta = rng.uniform(0.2, 6.0, size=2)
            obj = ObjectiveQuadratic(alpha, beta, rng.uniform(-1.0, 1.0) * math.sqrt(alpha * beta))
            if obj.discriminant <= 0.01:
                continue
            checked += 1
            s = rng.uniform(-3.0, 3.0)
            g = optimal_g_for_s(obj, s)
            gap2 = (1.0 - s) ** 2
            assert np.linalg.det(g) == pytest.approx(gap2, rel=1e-12, abs=1e-12)
            assert determinant_for_g(obj, g) == pytest.approx(objective_determinant(obj, s), rel=1e-12)

            def det_on_boundary(v):
                g11, g12 = math.exp(v[0]), v[1]
                return determinant_for_g(obj, np.array([[g11, g12], [g12, (gap2 + g12 * g12) / g11]]))

            res = minimize(det_on_boundary, x0=[0.0, 0.0], method="Nelder-Mead",
                           options={"xatol": 1e-10, "fatol": 1e-12})
            assert res.fun >= objective_determinant(obj, s) - 1e-8

    def test_overlap_quadrature(self):
        """Test closed-form fidelities against N = 512 Wigner-overlap quadrature"""
        rng = np.random.default_rng(11)
        for gamma in standard_form_sampler(seed=31, count=50):
            d = OneModeCovariance.squeezed(rng.uniform(-0.5, 0.5), rng.uniform(0.0, np.pi))
            grid = PhaseSpaceGrid.for_covariances(d.m, d.m + kernel_covariance(gamma), points=512)
            oracle = wigner_overlap_fidelity(gamma, d, grid)
            assert oracle.value == pytest.approx(teleport_fidelity(gamma, d).value, rel=1e-6)

    def test_grid_search_never_beats_analytic(self):
        """Test the exhaustive grid never beats the analytic optimum on 100 diagonal channels"""
        coherent = OneModeCovariance.coherent()
        for gamma in standard_form_sampler(seed=97, count=100):
            analytic = optimize_one_sided(gamma, coherent, Side.BOB).fidelity
            found = grid_search_cp(gamma, coherent, Side.BOB, bounds=3.0, step=0.01)
            assert found.fidelity <= analytic + 1e-6

    def test_separability_bound(self):
        """Test separable states never beat 1, and beating 1 implies entanglement"""
        for gamma in separable_state_sampler(seed=3, count=200):
            assert swap_fidelity(gamma).value <= 1.0 + 1e-9
        population = separable_state_sampler(seed=4, count=50) + physical_state_sampler(seed=4, count=150)
        beaten = [g for g in population if swap_fidelity(g).value > 1.0 + 1e-9]
        assert beaten
        assert not any(is_ppt_separable(g) for g in beaten)

    def test_two_sided_reduction(self):
        """Test the two-sided optimum is the best one-sided or vacuum strategy and the 4-D grid agrees"""
        for gamma in standard_form_sampler(seed=13, count=100, entangled_only=True, max_diagonal=3.0):
            result = optimize_swap_two_sided(gamma)
            expected = max(
                optimize_one_sided(gamma, None, Side.BOB).fidelity,
                optimize_one_sided(gamma, None, Side.ALICE).fidelity,
                vacuum_both_candidate(gamma).fidelity,
            )
            assert result.fidelity == pytest.approx(expected, abs=1e-12)
            found = grid_search_cp(gamma, None, Side.BOTH, bounds=2.0, step=0.1)
            assert found.fidelity <= result.fidelity + 1e-4

    def test_standard_form_round_trip(self):
        """Test standard form recovers (a, b, c1, c2) after random local symplectics"""
        for seed, gamma in enumerate(standard_form_sampler(seed=21, count=100)):
            expected = (gamma.m[0, 0], gamma.m[2, 2], gamma.m[0, 2], gamma.m[1, 3])
            sf = to_standard_form(scramble_locally(gamma, seed))
            assert (sf.a, sf.b, sf.c1, sf.c2) == pytest.approx(expected, abs=1e-9)
