"""Plane-wave layer of the fractional Weyl and Dirac equations.

On a plane wave ``exp(-i k_mu x^mu)`` the coarse-grained chain rule turns
every fractional derivative into a multiplication,
``d^alpha_mu -> -i Gamma(alpha+1) k_mu`` (and ``+i Gamma(alpha+1) k_mu`` on
the conjugate field), so each field equation reduces to matrix algebra.

Conventions: metric (+,-,-,-); chiral basis with
``gamma^mu = [[0, sigma_bar^mu], [sigma^mu, 0]]`` acting on ``(chi_L, xi_R)``;
``Psi_bar = Psi^dagger gamma^0``. Wave vectors are stored contravariant.

Because of the Gamma(alpha+1) factor the plane-wave Dirac operator has a
kernel only on the shell ``hbar^(2a) Gamma(a+1)^2 k.k = m^(2a) c^(2a)``,
which differs from :func:`dispersion_energy` for alpha != 1. Both are kept.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, OffShellError, OnShellError
from .fraccalc import SampledFunction, check_order, classical_derivative, mrl_derivative_rl
from .gfactor import g_frac
from .spinalgebra import IDENTITY2, PAULI, SIGMA_BAR_MU, SIGMA_MU
from .specialfn import check_real, gamma

__all__ = [
    "METRIC",
    "GammaBasis",
    "DispersionInput",
    "FracPlaneWave",
    "PauliReduction",
    "GordonCurrents",
    "build_gamma_basis",
    "dispersion_energy",
    "shell_energy",
    "weyl_spinor",
    "dirac_spinor",
    "weyl_residual",
    "dirac_residual",
    "gauge_phase_check",
    "pauli_reduction",
    "pauli_product_residual",
    "gordon_decompose",
    "current_divergence",
    "trace_identity_residual",
]

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
SHELL_TOL = 1e-12
_ZERO2 = np.zeros((2, 2), dtype=complex)


@dataclass(frozen=True)
class GammaBasis:
    gammas: tuple

    def __getitem__(self, mu):
        return self.gammas[mu]

    @property
    def identity(self):
        return np.eye(4, dtype=complex)

    def slash(self, k_lower):
        """``gamma^mu a_mu`` for a covariant 4-vector (possibly complex)."""
        return sum(a * g for a, g in zip(k_lower, self.gammas))

    def big_sigma(self, mu, nu):
        """``Sigma^{mu nu} = [gamma^mu, gamma^nu] / 2``."""
        g = self.gammas
        return 0.5 * (g[mu] @ g[nu] - g[nu] @ g[mu])

    def sigma(self, mu, nu):
        """``sigma^{mu nu} = i Sigma^{mu nu}``."""
        return 1j * self.big_sigma(mu, nu)

    def bar(self, spinor):
        return np.conj(spinor) @ self.gammas[0]

    def clifford_residual(self):
        worst = 0.0
        for mu in range(4):
            for nu in range(4):
                anti = self.gammas[mu] @ self.gammas[nu] + self.gammas[nu] @ self.gammas[mu]
                worst = max(worst, np.max(np.abs(anti - 2.0 * METRIC[mu, nu] * self.identity)))
        return float(worst)


def build_gamma_basis():
    gammas = tuple(np.block([[_ZERO2, sb], [s, _ZERO2]]) for s, sb in zip(SIGMA_MU, SIGMA_BAR_MU))
    for g in gammas:
        g.flags.writeable = False
    return GammaBasis(gammas)


def trace_identity_residual():
    """Worst deviation of ``tr(sigma^mu sigma_bar^nu)`` and the symmetrized products from ``2 eta``."""
    worst = 0.0
    for mu in range(4):
        for nu in range(4):
            eta = METRIC[mu, nu]
            worst = max(
                worst,
                abs(np.trace(SIGMA_MU[mu] @ SIGMA_BAR_MU[nu]) - 2 * eta),
                abs(np.trace(SIGMA_BAR_MU[mu] @ SIGMA_MU[nu]) - 2 * eta),
                np.max(np.abs(SIGMA_MU[mu] @ SIGMA_BAR_MU[nu] + SIGMA_MU[nu] @ SIGMA_BAR_MU[mu]
                              - 2 * eta * IDENTITY2)),
                np.max(np.abs(SIGMA_BAR_MU[mu] @ SIGMA_MU[nu] + SIGMA_BAR_MU[nu] @ SIGMA_MU[mu]
                              - 2 * eta * IDENTITY2)),
            )
    return float(worst)


@dataclass(frozen=True)
class DispersionInput:
    p: float
    m: float
    alpha: float
    c: float = 1.0

    def energy(self):
        return dispersion_energy(self.p, self.m, self.alpha, self.c)


def dispersion_energy(p, m, alpha, c=1.0):
    """Energy from ``E**(2a) = p**(2a) c**(2a) + m**(2a) c**(4a)``."""
    p, m, c = check_real(p, "p"), check_real(m, "m"), check_real(c, "c")
    alpha = check_order(alpha)
    if p < 0 or m < 0:
        raise DomainError(f"momentum and mass must be non-negative, got p={p}, m={m}")
    if c <= 0:
        raise DomainError(f"speed of light must be positive, got {c}")
    if p == 0 and m == 0:
        return 0.0
    if m == 0:
        return p * c
    e2a = (p * c) ** (2 * alpha) + m ** (2 * alpha) * c ** (4 * alpha)
    return e2a ** (1.0 / (2.0 * alpha))


def _mass_term(m, alpha, c):
    return m**alpha * c**alpha


def shell_energy(k_vec, m, alpha, c=1.0, hbar=1.0):
    """Positive ``k^0`` on the plane-wave Dirac shell."""
    alpha = check_order(alpha)
    k_vec = np.asarray(k_vec, dtype=float)
    kappa = _mass_term(m, alpha, c) / (hbar**alpha * gamma(alpha + 1.0))
    return float(math.sqrt(k_vec @ k_vec + kappa * kappa))


@dataclass(frozen=True)
class FracPlaneWave:
    """``spinor * exp(-i k_mu x^mu)``; ``k`` is contravariant ``(k^0, k^1, k^2, k^3)``."""

    k: np.ndarray
    spinor: np.ndarray
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "k", np.asarray(self.k, dtype=float).reshape(4))
        object.__setattr__(self, "spinor", np.asarray(self.spinor, dtype=complex).ravel())
        object.__setattr__(self, "alpha", check_order(self.alpha))
        if self.spinor.size not in (2, 4):
            raise DomainError(f"spinor must have 2 or 4 components, got {self.spinor.size}")

    @property
    def k_lower(self):
        return METRIC @ self.k

    @property
    def derivative_factor(self):
        """Covariant factor produced by ``d^alpha_mu`` acting on the wave."""
        return -1j * gamma(self.alpha + 1.0) * self.k_lower

    @property
    def conjugate_derivative_factor(self):
        return 1j * gamma(self.alpha + 1.0) * self.k_lower


def weyl_spinor(k_vec, chirality):
    """Unit 2-spinor annihilated by the ``chirality`` Weyl operator for momentum ``k_vec``.

    The ``L`` equation (``sigma^mu``) selects ``sigma . k_hat = +1``, the
    ``R`` equation (``sigma_bar^mu``) selects ``-1``.
    """
    k_vec = np.asarray(k_vec, dtype=float)
    norm = np.linalg.norm(k_vec)
    if norm == 0:
        raise DomainError("helicity is undefined for k = 0")
    s = sum(c * p for c, p in zip(k_vec / norm, PAULI))
    vals, vecs = np.linalg.eigh(s)
    return vecs[:, 1] if chirality == "L" else vecs[:, 0]


def _check_massless(wave):
    k0, kv = wave.k[0], np.linalg.norm(wave.k[1:])
    if abs(k0 - kv) > SHELL_TOL * max(1.0, abs(k0)):
        raise OffShellError(f"massless wave needs k0 = |k|, got k0={k0}, |k|={kv}")


def weyl_residual(wave, chirality):
    """Norm of ``sigma^mu (-i Gamma(a+1) k_mu) chi`` (``sigma_bar`` for ``R``)."""
    if chirality not in ("L", "R"):
        raise DomainError(f"chirality must be 'L' or 'R', got {chirality!r}")
    _check_massless(wave)
    mats = SIGMA_MU if chirality == "L" else SIGMA_BAR_MU
    op = sum(d * s for d, s in zip(wave.derivative_factor, mats))
    chi = wave.spinor if wave.spinor.size == 2 else (
        wave.spinor[:2] if chirality == "L" else wave.spinor[2:]
    )
    return float(np.linalg.norm(op @ chi))


def _dirac_operator(basis, wave, m, c, hbar):
    a = wave.alpha
    # i hbar^a gamma^mu (-i G k_mu) - m^a c^a
    return 1j * hbar**a * basis.slash(wave.derivative_factor) - _mass_term(m, a, c) * basis.identity


def _check_massive(wave, m, c, hbar):
    expected = shell_energy(wave.k[1:], m, wave.alpha, c, hbar)
    if abs(wave.k[0] - expected) > SHELL_TOL * max(1.0, expected):
        raise OffShellError(f"k0={wave.k[0]} is off the shell k0={expected}")


def dirac_spinor(k_vec, m, alpha, seed, c=1.0, hbar=1.0):
    """On-shell wave built by projecting ``seed`` onto the positive-energy kernel."""
    alpha = check_order(alpha)
    k_vec = np.asarray(k_vec, dtype=float)
    k = np.concatenate(([shell_energy(k_vec, m, alpha, c, hbar)], k_vec))
    basis = build_gamma_basis()
    wave = FracPlaneWave(k, np.zeros(4), alpha)
    proj = 1j * hbar**alpha * basis.slash(wave.derivative_factor) + _mass_term(m, alpha, c) * basis.identity
    u = proj @ np.asarray(seed, dtype=complex)
    norm = np.linalg.norm(u)
    if norm == 0:
        raise DomainError("seed spinor lies in the negative-energy subspace")
    return FracPlaneWave(k, u / norm, alpha)


def dirac_residual(wave, m, c=1.0, hbar=1.0):
    """``|(hbar^a Gamma(a+1) gamma^mu k_mu - m^a c^a) psi|`` for an on-shell wave."""
    if wave.spinor.size != 4:
        raise DomainError("the Dirac operator needs a 4-spinor")
    _check_massive(wave, m, c, hbar)
    return float(np.linalg.norm(_dirac_operator(build_gamma_basis(), wave, m, c, hbar) @ wave.spinor))


def gauge_phase_check(chi, e_alpha, c, hbar, alpha, x, nodes=None):
    """Residual of ``d^a R = -(i e/(c^a hbar^a)) R d^a chi`` for ``R = exp(-(i e/(c^a hbar^a)) chi)``.

    The left side is the coarse chain rule ``dR/dchi * D^a chi`` with
    ``dR/dchi`` from a five-point difference in ``chi``; the right side is
    the closed form. ``D^a chi`` comes from the integral-form evaluator.
    """
    alpha = check_order(alpha)
    x = check_real(x)
    q = check_real(e_alpha, "e_alpha") / (check_real(c, "c") ** alpha * check_real(hbar, "hbar") ** alpha)
    d_chi = classical_derivative(chi, x) if alpha == 1.0 else mrl_derivative_rl(chi, alpha, x, nodes)
    u = chi(x)
    step = 1e-3 * max(1.0, abs(u))
    vals = np.exp(-1j * q * (u + step * np.array([-2.0, -1.0, 1.0, 2.0])))
    d_r = (vals[0] - 8.0 * vals[1] + 8.0 * vals[2] - vals[3]) / (12.0 * step)
    lhs = d_r * d_chi
    rhs = -1j * q * np.exp(-1j * q * u) * d_chi
    return float(abs(lhs - rhs))


@dataclass(frozen=True)
class PauliReduction:
    """Coefficients of the non-relativistic (Pauli) limit.

    ``spin_coupling`` is rebuilt from the sigma.B coefficient and the spin
    normalization, independently of ``g_factor``.
    """

    alpha: float
    kinetic_denominator: float
    rest_shift: float
    spin_coupling: float
    g_factor: float


def pauli_reduction(alpha, m, c=1.0, hbar=1.0, M_alpha=1.0, e_alpha=1.0):
    alpha = check_order(alpha)
    if not m > 0:
        raise DomainError(f"mass must be positive, got {m}")
    g1 = gamma(alpha + 1.0)
    m_a = m**alpha
    kinetic = (1.0 + g1) * m_a
    rest_shift = (1.0 - g1) * m_a * c ** (2 * alpha)
    sigma_b = -(hbar**alpha) * M_alpha * (e_alpha / c**alpha) / kinetic
    spin_norm = 0.5 * hbar**alpha * g1 * M_alpha
    spin_coupling = (sigma_b / spin_norm) / (-e_alpha / (2.0 * m_a * c**alpha))
    return PauliReduction(alpha, kinetic, rest_shift, spin_coupling, g_frac(alpha))


def pauli_product_residual(a, b):
    """Entry-wise deviation from ``(s.a)(s.b) = a.b + i s.(a x b)``."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    sa = sum(x * s for x, s in zip(a, PAULI))
    sb = sum(x * s for x, s in zip(b, PAULI))
    cross = np.cross(a, b)
    rhs = (a @ b) * IDENTITY2 + 1j * sum(x * s for x, s in zip(cross, PAULI))
    return float(np.max(np.abs(sa @ sb - rhs)))


@dataclass(frozen=True)
class GordonCurrents:
    total: np.ndarray
    convective: np.ndarray
    spin: np.ndarray

    @property
    def closure_residual(self):
        return float(np.max(np.abs(self.total - self.convective - self.spin)))


def gordon_decompose(wave_out, wave_in, m, c=1.0, hbar=1.0, tol=1e-9):
    """Split the transition current ``Psi_bar_out gamma^mu Psi_in`` into convective and spin parts."""
    if wave_out.alpha != wave_in.alpha:
        raise DomainError("waves must share the fractional order")
    basis = build_gamma_basis()
    for w in (wave_out, wave_in):
        if dirac_residual(w, m, c, hbar) > tol * max(1.0, np.linalg.norm(w.spinor)):
            raise OnShellError("spinor does not solve the plane-wave Dirac equation")
    a = wave_in.alpha
    pref = hbar**a / (2.0 * _mass_term(m, a, c))
    bar_out = basis.bar(wave_out.spinor)
    u_in = wave_in.spinor
    d_in = wave_in.derivative_factor  # acts on Psi_in
    d_out = wave_out.conjugate_derivative_factor  # acts on Psi_bar_out
    scalar = bar_out @ u_in
    total = np.array([bar_out @ basis[mu] @ u_in for mu in range(4)])
    convective = 1j * pref * METRIC @ (d_in * scalar - d_out * scalar)
    # d_nu of the bilinear picks up both factors
    d_pair = d_in + d_out
    spin = pref * np.array(
        [sum(d_pair[nu] * (bar_out @ basis.sigma(mu, nu) @ u_in) for nu in range(4)) for mu in range(4)]
    )
    return GordonCurrents(total, convective, spin)


def current_divergence(wave_out, wave_in):
    """``d_mu j^mu`` on the transition current, i.e. ``i Gamma (k_out - k_in)_mu j^mu``."""
    basis = build_gamma_basis()
    bar_out = basis.bar(wave_out.spinor)
    j = np.array([bar_out @ basis[mu] @ wave_in.spinor for mu in range(4)])
    return complex((wave_in.derivative_factor + wave_out.conjugate_derivative_factor) @ j)
