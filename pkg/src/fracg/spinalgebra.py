"""Spin-1/2 representation of the fractional angular-momentum algebra.

The fractional generators obey the ordinary su(2) relations with the
structure constant hbar replaced by ``hbar_eff = Gamma(alpha+1) hbar**alpha M``.
In the 2x2 representation they are ``hbar_eff/2 * sigma_i``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .fraccalc import check_order
from .specialfn import check_real, gamma

__all__ = [
    "IDENTITY2",
    "PAULI",
    "SIGMA_MU",
    "SIGMA_BAR_MU",
    "EffectiveConstants",
    "FractionalAngularMomentum",
    "CommutatorReport",
    "HelicityProjection",
    "effective_planck",
    "build_spin_half",
    "verify_commutators",
    "helicity_projection",
    "commutator",
]

IDENTITY2 = np.eye(2, dtype=complex)
PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
SIGMA_MU = (IDENTITY2,) + PAULI
SIGMA_BAR_MU = (IDENTITY2,) + tuple(-s for s in PAULI)

for _m in SIGMA_MU + SIGMA_BAR_MU:
    _m.flags.writeable = False


def commutator(a, b):
    return a @ b - b @ a


def effective_planck(hbar, alpha, M_alpha=1.0):
    """``Gamma(alpha+1) * hbar**alpha * M_alpha``."""
    hbar = check_real(hbar, "hbar")
    M_alpha = check_real(M_alpha, "M_alpha")
    alpha = check_order(alpha)
    if hbar <= 0 or M_alpha <= 0:
        raise DomainError("hbar and M_alpha must be positive")
    value = gamma(alpha + 1.0) * hbar**alpha * M_alpha
    if not np.isfinite(value):
        raise OverflowError(f"effective Planck constant overflowed for hbar={hbar}, M={M_alpha}")
    return value


@dataclass(frozen=True)
class EffectiveConstants:
    """Scale constants of the coarse-grained algebra (natural units by default).

    ``M_alpha`` stands for both the spatial and the temporal dimensional
    constants; they are not distinguished anywhere in the algebra.
    """

    alpha: float
    hbar: float = 1.0
    M_alpha: float = 1.0

    def __post_init__(self):
        effective_planck(self.hbar, self.alpha, self.M_alpha)

    @property
    def hbar_eff(self):
        return effective_planck(self.hbar, self.alpha, self.M_alpha)


@dataclass(frozen=True)
class FractionalAngularMomentum:
    constants: EffectiveConstants
    generators: tuple

    @property
    def hbar_eff(self):
        return self.constants.hbar_eff

    @property
    def raising(self):
        return self.generators[0] + 1j * self.generators[1]

    @property
    def lowering(self):
        return self.generators[0] - 1j * self.generators[1]

    @property
    def casimir(self):
        return sum(g @ g for g in self.generators)


def build_spin_half(constants):
    scale = constants.hbar_eff / 2.0
    return FractionalAngularMomentum(constants, tuple(scale * s for s in PAULI))


@dataclass(frozen=True)
class CommutatorReport:
    max_residual: float
    residuals: dict = field(default_factory=dict)
    tol: float = 1e-14

    @property
    def passed(self):
        return self.max_residual <= self.tol


def verify_commutators(am, tol=1e-14):
    """Check every relation of the algebra entry-wise and report the worst residual."""
    lx, ly, lz = am.generators
    lp, lm, l2 = am.raising, am.lowering, am.casimir
    k = am.hbar_eff
    checks = {
        "[Lx,Ly]=i k Lz": commutator(lx, ly) - 1j * k * lz,
        "[Ly,Lz]=i k Lx": commutator(ly, lz) - 1j * k * lx,
        "[Lz,Lx]=i k Ly": commutator(lz, lx) - 1j * k * ly,
        "[L+,L-]=2 k Lz": commutator(lp, lm) - 2.0 * k * lz,
        "[Lz,L+]=k L+": commutator(lz, lp) - k * lp,
        "[Lz,L-]=-k L-": commutator(lz, lm) + k * lm,
        "[L2,L+]=0": commutator(l2, lp),
        "[L2,L-]=0": commutator(l2, lm),
        "[L2,Lx]=0": commutator(l2, lx),
        "[L2,Ly]=0": commutator(l2, ly),
        "[L2,Lz]=0": commutator(l2, lz),
    }
    residuals = {name: float(np.max(np.abs(m))) for name, m in checks.items()}
    return CommutatorReport(max(residuals.values()), residuals, tol)


@dataclass(frozen=True)
class HelicityProjection:
    """``S . p_hat`` with its raw and normalized eigenvalues (ascending)."""

    matrix: np.ndarray
    eigenvalues: np.ndarray
    hbar_eff: float

    @property
    def normalized(self):
        return self.eigenvalues / (self.hbar_eff / 2.0)


def helicity_projection(am, p_hat):
    p_hat = np.asarray(p_hat, dtype=float)
    if p_hat.shape != (3,) or not np.all(np.isfinite(p_hat)):
        raise DomainError(f"direction must be a finite 3-vector, got {p_hat!r}")
    if abs(np.linalg.norm(p_hat) - 1.0) > 1e-12:
        raise DomainError(f"direction must be a unit vector, |p|={np.linalg.norm(p_hat)}")
    m = sum(c * g for c, g in zip(p_hat, am.generators))
    return HelicityProjection(m, np.linalg.eigvalsh(m), am.hbar_eff)
