"""
Pytest configuration and fixtures
"""
import math

import numpy as np
import pytest

from src.gaussian.channels import ChannelParams, make_tmsv_noisy
from src.gaussian.covariance import OneModeCovariance, TwoModeCovariance


# Squeezing threshold for b0 = 1/2: -ln(1/2)/2
R_TH_HALF = math.log(2.0) / 2.0


@pytest.fixture
def coherent_input():
    """Vacuum covariance shared by all coherent inputs"""
    return OneModeCovariance.coherent()


@pytest.fixture
def squeezed_input():
    """Pure squeezed input, diagonal in the lab frame"""
    return OneModeCovariance.squeezed(0.3)


@pytest.fixture
def vacuum_channel():
    """Two uncorrelated vacua: the classical (no entanglement) resource"""
    return TwoModeCovariance.vacuum()


@pytest.fixture
def tmsv_pure():
    """Pure two-mode squeezed vacuum, r = 0.5"""
    return make_tmsv_noisy(ChannelParams(r=0.5, b0=0.0))


@pytest.fixture
def noisy_below_threshold():
    """Noisy channel below the damping threshold: r = 0.2, b0 = 1/2"""
    return make_tmsv_noisy(ChannelParams(r=0.2, b0=0.5))


@pytest.fixture
def noisy_above_threshold():
    """Noisy channel above the damping threshold: r = 0.6, b0 = 1/2"""
    return make_tmsv_noisy(ChannelParams(r=0.6, b0=0.5))


@pytest.fixture
def asymmetric_channel():
    """Physical standard-form channel with |c1| != |c2|"""
    return TwoModeCovariance.tridiagonal(2.0, 2.5, -1.6, 1.1)


@pytest.fixture
def rng():
    """Seeded generator for randomized checks"""
    return np.random.default_rng(42)
