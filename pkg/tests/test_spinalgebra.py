import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fracg.errors import DomainError
from fracg.spinalgebra import (
    PAULI,
    EffectiveConstants,
    FractionalAngularMomentum,
    build_spin_half,
    effective_planck,
    helicity_projection,
    verify_commutators,
)

ALPHAS = [round(0.1 * i, 1) for i in range(1, 11)]
GAMMA_1_5 = 0.886226925452758013649


def test_effective_planck_examples():
    assert effective_planck(1.0, 1.0) == 1.0
    assert effective_planck(1.0, 0.5) == pytest.approx(GAMMA_1_5, rel=1e-15)
    assert effective_planck(2.0, 1.0, 3.0) == 6.0


@pytest.mark.parametrize("args", [(0.0, 0.5), (-1.0, 0.5), (1.0, 0.0), (1.0, 1.2)])
def test_effective_planck_domain(args):
    with pytest.raises(DomainError):
        effective_planck(*args)


def test_hbar_eff_never_stale():
    c = EffectiveConstants(0.5, hbar=2.0, M_alpha=3.0)
    assert c.hbar_eff == effective_planck(2.0, 0.5, 3.0)
    with pytest.raises(AttributeError):
        c.alpha = 0.9
    with pytest.raises(DomainError):
        EffectiveConstants(0.5, hbar=-1.0)


def test_classical_generators():
    am = build_spin_half(EffectiveConstants(1.0))
    for g, s in zip(am.generators, PAULI):
        assert np.array_equal(g, s / 2)


def test_half_order_generators():
    am = build_spin_half(EffectiveConstants(0.5))
    ref = float(mpmath.gamma(1.5)) / 2
    for g, s in zip(am.generators, PAULI):
        assert np.allclose(g, ref * s, rtol=1e-15, atol=0)
    assert abs(np.trace(am.generators[2])) == 0.0


@pytest.mark.parametrize("alpha", ALPHAS)
def test_commutators(alpha):
    am = build_spin_half(EffectiveConstants(alpha))
    rep = verify_commutators(am)
    assert rep.passed and rep.max_residual <= 1e-14
    assert len(rep.residuals) == 11
    k = am.hbar_eff
    assert np.max(np.abs(am.casimir - 0.75 * k * k * np.eye(2))) <= 1e-14
    up, down = np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)
    assert np.max(np.abs(am.raising @ down - k * up)) <= 1e-13
    assert np.max(np.abs(am.lowering @ up - k * down)) <= 1e-13


def test_unit_constant_residual_is_tiny():
    assert verify_commutators(build_spin_half(EffectiveConstants(1.0))).max_residual <= 1e-15
    assert verify_commutators(build_spin_half(EffectiveConstants(0.5))).max_residual <= 1e-15


def test_corrupted_generator_detected():
    am = build_spin_half(EffectiveConstants(0.5))
    bad = FractionalAngularMomentum(am.constants, (am.generators[0] * 1.01,) + am.generators[1:])
    rep = verify_commutators(bad)
    assert not rep.passed and rep.max_residual > 1e-3


def test_helicity_examples():
    am1 = build_spin_half(EffectiveConstants(1.0))
    hp = helicity_projection(am1, [0, 0, 1])
    assert np.array_equal(hp.matrix, PAULI[2] / 2)
    assert np.allclose(hp.eigenvalues, [-0.5, 0.5], atol=1e-15)
    am = build_spin_half(EffectiveConstants(0.5))
    assert np.allclose(helicity_projection(am, [0, 0, 1]).eigenvalues, [-GAMMA_1_5 / 2, GAMMA_1_5 / 2], atol=1e-15)
    diag = helicity_projection(am, np.ones(3) / math.sqrt(3))
    assert np.allclose(diag.eigenvalues, [-GAMMA_1_5 / 2, GAMMA_1_5 / 2], atol=1e-12)
    assert np.allclose(diag.normalized, [-1, 1], atol=1e-12)


def test_helicity_rejects_non_unit():
    am = build_spin_half(EffectiveConstants(0.5))
    with pytest.raises(DomainError):
        helicity_projection(am, [0, 0, 1.001])
    with pytest.raises(DomainError):
        helicity_projection(am, [0, 1])


@given(
    st.sampled_from(ALPHAS),
    arrays(float, 3, elements=st.floats(-1, 1)).filter(lambda v: np.linalg.norm(v) > 1e-3),
)
def test_helicity_random_directions(alpha, v):
    am = build_spin_half(EffectiveConstants(alpha))
    ev = helicity_projection(am, v / np.linalg.norm(v)).eigenvalues
    assert np.max(np.abs(ev - np.array([-1, 1]) * am.hbar_eff / 2)) <= 1e-12


@given(st.floats(0.01, 1.0), st.floats(0.1, 10.0), st.floats(0.1, 10.0))
def test_commutators_any_constants(alpha, hbar, m):
    am = build_spin_half(EffectiveConstants(alpha, hbar, m))
    rep = verify_commutators(am)
    # residuals scale with hbar_eff**2
    assert rep.max_residual <= 1e-14 * max(1.0, am.hbar_eff**2)
