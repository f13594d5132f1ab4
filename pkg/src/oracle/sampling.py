"""
Seeded random two-mode Gaussian states for tests and cross-checks
"""
from typing import List

import numpy as np
from loguru import logger

from ..gaussian.covariance import TwoModeCovariance, conjugate_local, is_physical
from ..gaussian.separability import is_ppt_separable
from ..gaussian.symplectic import (
    beam_splitter,
    local_symplectic,
    rotation,
    single_mode_squeezer,
    two_mode_squeezer,
)
from ..utils.errors import ComputationalError, ValidationError

_MAX_ATTEMPTS = 10_000


def _check_count(count: int) -> None:
    if count < 1:
        raise ValidationError(f"count must be at least 1, got {count}")


def random_local_symplectic(rng: np.random.Generator, max_squeezing: float = 0.8) -> np.ndarray:
    """rot(t0) squeeze(r) rot(t1) with uniform angles and bounded squeezing"""
    return (
        rotation(rng.uniform(0.0, 2.0 * np.pi))
        @ single_mode_squeezer(rng.uniform(-max_squeezing, max_squeezing))
        @ rotation(rng.uniform(0.0, 2.0 * np.pi))
    )


def _thermal_product(rng: np.random.Generator, max_excess: float = 2.0) -> np.ndarray:
    nu_a, nu_b = 1.0 + rng.uniform(0.0, max_excess, size=2)
    return np.diag([nu_a, nu_a, nu_b, nu_b])


def separable_state_sampler(seed: int, count: int) -> List[TwoModeCovariance]:
    """
    Separable states: locally transformed thermal products plus correlated
    classical noise

    Adding a positive semidefinite noise covariance mixes displaced product
    states, so separability is preserved; each draw is still PPT-checked.
    The first draw has no classical noise (a product state, C = 0).
    """
    _check_count(count)
    rng = np.random.default_rng(seed)
    states: List[TwoModeCovariance] = []
    attempts = 0
    while len(states) < count:
        attempts += 1
        if attempts > _MAX_ATTEMPTS:
            raise ComputationalError(f"separable sampler gave up after {_MAX_ATTEMPTS} attempts")
        s = local_symplectic(random_local_symplectic(rng), random_local_symplectic(rng))
        base = s @ _thermal_product(rng) @ s.T
        if states:
            x = rng.normal(size=(4, 4))
            base = base + rng.uniform(0.0, 1.0) * (x @ x.T) / 4.0
        gamma = TwoModeCovariance(0.5 * (base + base.T))
        if is_physical(gamma) and is_ppt_separable(gamma):
            states.append(gamma)
        else:
            logger.debug("Rejected separable draw that failed the PPT check")
    return states


def physical_state_sampler(seed: int, count: int, max_squeezing: float = 1.0) -> List[TwoModeCovariance]:
    """Entangled or separable states: thermal product under a random global symplectic"""
    _check_count(count)
    rng = np.random.default_rng(seed)
    states: List[TwoModeCovariance] = []
    for _ in range(count):
        s = (
            local_symplectic(random_local_symplectic(rng), random_local_symplectic(rng))
            @ beam_splitter(rng.uniform(0.0, np.pi))
            @ two_mode_squeezer(rng.uniform(0.0, max_squeezing))
            @ local_symplectic(random_local_symplectic(rng), random_local_symplectic(rng))
        )
        base = s @ _thermal_product(rng, max_excess=1.0) @ s.T
        states.append(TwoModeCovariance(0.5 * (base + base.T)))
    return states


def _standard_signs(c1: float, c2: float) -> tuple:
    if abs(c1) < abs(c2):
        c1, c2 = c2, c1
    if c1 * c2 < 0:
        return (-abs(c1), abs(c2))
    return (abs(c1), abs(c2))


def standard_form_sampler(
    seed: int, count: int, entangled_only: bool = False, max_diagonal: float = 4.0
) -> List[TwoModeCovariance]:
    """
    Random physical channels already in standard form, by rejection sampling
    of (a, b, c1, c2) with |c1| >= |c2| and the usual sign convention

    Args:
        seed: Seed for numpy's default_rng
        count: Number of channels, at least 1
        entangled_only: Reject PPT (separable) draws
        max_diagonal: Upper bound for a and b

    Returns:
        count tridiagonal channels, identical for identical seeds

    Raises:
        ComputationalError: if the acceptance rate collapses
    """
    _check_count(count)
    rng = np.random.default_rng(seed)
    states: List[TwoModeCovariance] = []
    attempts = 0
    while len(states) < count:
        attempts += 1
        if attempts > _MAX_ATTEMPTS * count:
            raise ComputationalError("standard-form sampler acceptance rate too low")
        a, b = rng.uniform(1.0, max_diagonal, size=2)
        bound = np.sqrt(a * b)
        c1, c2 = _standard_signs(*rng.uniform(-bound, bound, size=2))
        gamma = TwoModeCovariance.tridiagonal(a, b, c1, c2)
        if not is_physical(gamma):
            continue
        if entangled_only and is_ppt_separable(gamma):
            continue
        states.append(gamma)
    return states


def scramble_locally(gamma: TwoModeCovariance, seed: int) -> TwoModeCovariance:
    """Apply random local symplectics on both modes"""
    rng = np.random.default_rng(seed)
    return conjugate_local(gamma, random_local_symplectic(rng), random_local_symplectic(rng))
