"""
Symplectic primitives for one and two modes
All matrices act on quadratures ordered (x, p) per mode, i.e. xpxp ordering.
"""
from dataclasses import dataclass, field

import numpy as np

from ..utils.errors import ValidationError


@dataclass(frozen=True, eq=False)
class SymplecticForm:
    """The single-mode symplectic form Sigma and the momentum reflection R"""
    sigma: np.ndarray = field(default_factory=lambda: np.array([[0.0, 1.0], [-1.0, 0.0]]))
    r_matrix: np.ndarray = field(default_factory=lambda: np.diag([1.0, -1.0]))

    def __post_init__(self):
        sigma = np.array(self.sigma, dtype=float)
        r = np.array(self.r_matrix, dtype=float)
        if sigma.shape != (2, 2) or not np.array_equal(sigma.T, -sigma) or not np.any(sigma):
            raise ValidationError(f"symplectic form must be a non-zero antisymmetric 2x2 matrix, got {sigma.tolist()}")
        if r.shape != (2, 2) or not np.allclose(r @ r, np.eye(2), rtol=0.0, atol=1e-14):
            raise ValidationError(f"reflection must square to the identity, got {r.tolist()}")
        sigma.setflags(write=False)
        r.setflags(write=False)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "r_matrix", r)

    @property
    def omega(self) -> np.ndarray:
        """Two-mode form Sigma (+) Sigma"""
        out = np.block([[self.sigma, np.zeros((2, 2))], [np.zeros((2, 2)), self.sigma]])
        out.setflags(write=False)
        return out


SYMPLECTIC_FORM = SymplecticForm()
SIGMA = SYMPLECTIC_FORM.sigma
R_MATRIX = SYMPLECTIC_FORM.r_matrix
OMEGA = SYMPLECTIC_FORM.omega


def rotation(theta: float) -> np.ndarray:
    """Phase-space rotation (phase shifter) by angle theta"""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


def single_mode_squeezer(r: float) -> np.ndarray:
    """Squeezer diag(e^-r, e^r); vacuum goes to diag(e^-2r, e^2r)"""
    return np.diag([np.exp(-r), np.exp(r)])


def beam_splitter(theta: float) -> np.ndarray:
    """Two-mode beam splitter with transmittance amplitude cos(theta)"""
    c, s = np.cos(theta), np.sin(theta)
    eye = np.eye(2)
    return np.block([[c * eye, s * eye], [-s * eye, c * eye]])


def two_mode_squeezer(r: float) -> np.ndarray:
    """
    Two-mode squeezer

    Acting on two vacua it produces the two-mode squeezed vacuum with
    c1 = -sinh 2r, c2 = sinh 2r.
    """
    ch, sh = np.cosh(r), np.sinh(r)
    return np.block([[ch * np.eye(2), -sh * R_MATRIX], [-sh * R_MATRIX, ch * np.eye(2)]])


def is_symplectic(s: np.ndarray, tol: float = 1e-10) -> bool:
    """True if S Omega S^T == Omega for the matching number of modes"""
    s = np.asarray(s, dtype=float)
    form = SIGMA if s.shape == (2, 2) else OMEGA
    if s.shape != form.shape:
        return False
    return bool(np.allclose(s @ form @ s.T, form, rtol=0.0, atol=tol))


def local_symplectic(s_a: np.ndarray, s_b: np.ndarray) -> np.ndarray:
    """Block-diagonal S_A (+) S_B"""
    out = np.zeros((4, 4))
    out[:2, :2] = s_a
    out[2:, 2:] = s_b
    return out
