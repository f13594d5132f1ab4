"""
PPT separability test for two-mode Gaussian states

Partial transposition flips the sign of Bob's momentum. For one mode on
each side PPT is necessary and sufficient for separability.
"""
import numpy as np

from .covariance import TwoModeCovariance, is_physical, min_uncertainty_eigenvalue, require_physical

_PT = np.diag([1.0, 1.0, 1.0, -1.0])


def partial_transpose(gamma: TwoModeCovariance) -> TwoModeCovariance:
    """Flip the sign of Bob's momentum: P Gamma P with P = diag(1, 1, 1, -1)"""
    return TwoModeCovariance(_PT @ gamma.m @ _PT)


def is_ppt_separable(gamma: TwoModeCovariance) -> bool:
    """True iff the partially transposed covariance still satisfies the uncertainty relation"""
    require_physical(gamma, "channel")
    return is_physical(partial_transpose(gamma))


def ppt_violation(gamma: TwoModeCovariance) -> float:
    """Amount by which the partial transpose violates the uncertainty relation (0 if PPT)"""
    require_physical(gamma, "channel")
    return max(0.0, -min_uncertainty_eigenvalue(partial_transpose(gamma)))
