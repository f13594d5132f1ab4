"""
Tests for closed-form teleportation fidelities
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.fidelity.teleportation import (
    FidelityKind,
    FidelityValue,
    NoiseMatrixE,
    evaluate_fidelity,
    noise_matrix,
    output_covariance,
    swap_fidelity,
    teleport_fidelity,
)
from src.gaussian.channels import ChannelParams, make_tmsv_noisy
from src.gaussian.covariance import OneModeCovariance, TwoModeCovariance, conjugate_local
from src.gaussian.separability import is_ppt_separable
from src.gaussian.symplectic import R_MATRIX, rotation, single_mode_squeezer
from src.oracle.sampling import physical_state_sampler, separable_state_sampler
from src.utils.errors import ComputationalError, PreconditionError, ValidationError


class TestNoiseMatrix:
    """Test the channel noise matrix E'"""

    def test_vacuum_channel(self, vacuum_channel):
        """Test two vacua add 2I"""
        assert np.allclose(noise_matrix(vacuum_channel).e, 2.0 * np.eye(2))

    def test_tmsv(self):
        """Test TMSV adds 2 e^-2r I"""
        e = noise_matrix(make_tmsv_noisy(ChannelParams(r=0.7))).e
        assert np.allclose(e, 2.0 * math.exp(-1.4) * np.eye(2), atol=1e-12)

    def test_noise_on_bob_adds_directly(self):
        """Test b0 on Bob's mode enters E' additively"""
        clean = noise_matrix(make_tmsv_noisy(ChannelParams(r=0.3))).e
        noisy = noise_matrix(make_tmsv_noisy(ChannelParams(r=0.3, b0=0.4))).e
        assert np.allclose(noisy - clean, 0.4 * np.eye(2), atol=1e-12)

    def test_requires_physical_channel(self):
        """Test non-physical channels are refused"""
        with pytest.raises(PreconditionError):
            noise_matrix(TwoModeCovariance(0.5 * np.eye(4)))

    def test_noise_matrix_validation(self):
        """Test NoiseMatrixE shape and symmetry checks"""
        with pytest.raises(ValidationError):
            NoiseMatrixE(np.eye(3))
        with pytest.raises(ValidationError):
            NoiseMatrixE(np.array([[1.0, 0.2], [0.0, 1.0]]))


class TestTeleportFidelity:
    """Test pure-state fidelity F = 2/sqrt(det(2D + E'))"""

    def test_classical_bound(self, vacuum_channel, coherent_input):
        """Test two vacua give exactly 1/2"""
        assert teleport_fidelity(vacuum_channel, coherent_input).value == pytest.approx(0.5, abs=1e-14)

    def test_tmsv_coherent(self, tmsv_pure, coherent_input):
        """Test r = 0.5 TMSV gives 1/(1 + e^-1)"""
        f = teleport_fidelity(tmsv_pure, coherent_input)
        assert f.value == pytest.approx(1.0 / (1.0 + math.exp(-1.0)), abs=1e-12)
        assert f.kind is FidelityKind.PURE_STATE
        assert float(f) == f.value

    def test_e_matrix_attached(self, tmsv_pure, coherent_input):
        """Test the attached matrix is 2D + E'"""
        f = teleport_fidelity(tmsv_pure, coherent_input)
        assert np.allclose(f.e_matrix.e, 2.0 * np.eye(2) + noise_matrix(tmsv_pure).e)

    def test_squeezed_input(self, tmsv_pure, squeezed_input):
        """Test squeezed input against the determinant formula"""
        e = 2.0 * squeezed_input.m + noise_matrix(tmsv_pure).e
        expected = 2.0 / math.sqrt(np.linalg.det(e))
        assert teleport_fidelity(tmsv_pure, squeezed_input).value == pytest.approx(expected, rel=1e-12)

    def test_impure_input_rejected(self, tmsv_pure):
        """Test mixed inputs raise a precondition error"""
        with pytest.raises(PreconditionError, match="pure"):
            teleport_fidelity(tmsv_pure, OneModeCovariance.thermal(2.0))

    def test_zero_input_rejected(self, tmsv_pure):
        """Test D = 0 points to the swap fidelity"""
        with pytest.raises(PreconditionError, match="swap"):
            teleport_fidelity(tmsv_pure, OneModeCovariance(np.zeros((2, 2))))

    def test_non_physical_input_rejected(self, tmsv_pure):
        """Test inputs violating the uncertainty relation"""
        with pytest.raises(PreconditionError):
            teleport_fidelity(tmsv_pure, OneModeCovariance(np.diag([0.5, 0.5])))

    def test_bounded_by_one(self):
        """Test physical channels never exceed unit fidelity"""
        for gamma in physical_state_sampler(seed=21, count=50):
            assert teleport_fidelity(gamma, OneModeCovariance.coherent()).value <= 1.0 + 1e-12

    def test_monotone_in_squeezing(self, coherent_input):
        """Test fidelity grows with r for the pure TMSV"""
        values = [teleport_fidelity(make_tmsv_noisy(ChannelParams(r=r)), coherent_input).value
                  for r in np.linspace(0.0, 2.0, 21)]
        assert all(b > a for a, b in zip(values, values[1:]))


class TestSwapFidelity:
    """Test the operation fidelity 2/sqrt(det E')"""

    @pytest.mark.parametrize("r", [round(0.1 * k, 1) for k in range(21)])
    def test_tmsv_is_exponential(self, r):
        """Test TMSV swap fidelity equals e^2r"""
        value = swap_fidelity(make_tmsv_noisy(ChannelParams(r=r))).value
        assert value == pytest.approx(math.exp(2.0 * r), rel=1e-12)

    def test_vacuum_is_one(self, vacuum_channel):
        """Test the classical resource gives 1"""
        assert swap_fidelity(vacuum_channel).value == pytest.approx(1.0, abs=1e-14)

    def test_kind(self, tmsv_pure):
        """Test the fidelity kind tag"""
        assert swap_fidelity(tmsv_pure).kind is FidelityKind.SWAP

    def test_separable_states_bounded(self):
        """Test PPT-separable states never exceed 1"""
        for gamma in separable_state_sampler(seed=7, count=200):
            assert swap_fidelity(gamma).value <= 1.0 + 1e-9

    def test_above_one_witnesses_entanglement(self):
        """Test every state with swap fidelity above 1 fails the PPT test"""
        tmsv = [make_tmsv_noisy(ChannelParams(r=0.1 * k, b0=0.05 * k)) for k in range(1, 8)]
        population = physical_state_sampler(seed=8, count=200) + separable_state_sampler(seed=9, count=50) + tmsv
        witnessed = [g for g in population if swap_fidelity(g).value > 1.0 + 1e-9]
        assert witnessed
        assert not any(is_ppt_separable(g) for g in witnessed)

    @given(st.floats(min_value=0.0, max_value=2.0 * math.pi), st.floats(min_value=-1.0, max_value=1.0),
           st.floats(min_value=0.0, max_value=2.0 * math.pi))
    @settings(max_examples=100, deadline=None)
    def test_invariant_under_matched_local_symplectics(self, t0, r, t1):
        """Test S on Bob with R S R on Alice leaves det E' unchanged"""
        gamma = make_tmsv_noisy(ChannelParams(r=0.6, b0=0.3))
        s = rotation(t0) @ single_mode_squeezer(r) @ rotation(t1)
        moved = conjugate_local(gamma, R_MATRIX @ s @ R_MATRIX, s)
        assert swap_fidelity(moved).value == pytest.approx(swap_fidelity(gamma).value, rel=1e-9)


class TestEvaluateFidelity:
    """Test dispatch and output covariance"""

    def test_dispatch(self, tmsv_pure, coherent_input):
        """Test d=None selects the swap fidelity"""
        assert evaluate_fidelity(tmsv_pure).kind is FidelityKind.SWAP
        assert evaluate_fidelity(tmsv_pure, coherent_input).kind is FidelityKind.PURE_STATE

    def test_output_covariance(self, tmsv_pure, coherent_input):
        """Test teleported covariance D + E'"""
        out = output_covariance(tmsv_pure, coherent_input)
        assert np.allclose(out.m, np.eye(2) + noise_matrix(tmsv_pure).e)

    def test_output_covariance_accepts_mixed_input(self, tmsv_pure):
        """Test mixed inputs are fine for the output covariance"""
        out = output_covariance(tmsv_pure, OneModeCovariance.thermal(3.0))
        assert out.m[0, 0] == pytest.approx(3.0 + noise_matrix(tmsv_pure).e[0, 0])


class TestFidelityValue:
    """Test FidelityValue validation"""

    def test_rejects_non_positive(self):
        """Test zero fidelity is a computational error"""
        with pytest.raises(ComputationalError):
            FidelityValue(0.0, FidelityKind.SWAP, NoiseMatrixE(np.eye(2)))

    def test_rejects_pure_state_above_one(self):
        """Test pure-state fidelity cannot exceed 1"""
        with pytest.raises(ComputationalError):
            FidelityValue(1.5, FidelityKind.PURE_STATE, NoiseMatrixE(np.eye(2)))

    def test_swap_may_exceed_one(self):
        """Test operation fidelity above 1 is allowed"""
        assert FidelityValue(2.5, FidelityKind.SWAP, NoiseMatrixE(np.eye(2))).value == 2.5

    def test_value_is_builtin_float(self, tmsv_pure, coherent_input):
        """Test float() and .value give a plain float, never a numpy scalar"""
        for f in (teleport_fidelity(tmsv_pure, coherent_input), swap_fidelity(tmsv_pure),
                  FidelityValue(np.float64(0.75), FidelityKind.PURE_STATE, NoiseMatrixE(np.eye(2)))):
            assert type(f.value) is float
            assert type(float(f)) is float
