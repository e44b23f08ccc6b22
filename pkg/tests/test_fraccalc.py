import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracg import fraccalc
from fracg.errors import ConvergenceWarning, DomainError, SingularityError
from fracg.fraccalc import (
    Rule,
    SampledFunction,
    mrl_derivative,
    mrl_derivative_gl,
    mrl_derivative_rl,
    power_rule,
    rule_residual,
)

SWEEP = [(g, a, x) for g in (0.5, 1.0, 1.5, 2.0) for a in (0.2, 0.5, 0.8) for x in (0.25, 0.5, 1.0)]


def power(p, x_max=math.inf):
    return SampledFunction(lambda t: np.asarray(t, dtype=float) ** p, x_max, f"x^{p}")


def const(k):
    return SampledFunction(lambda t: np.full_like(np.asarray(t, dtype=float), k), math.inf, str(k))


def oracle_power(g, a, x):
    return float(mpmath.gamma(g + 1) / mpmath.gamma(g + 1 - a) * mpmath.mpf(x) ** (g - a))


# --- examples -------------------------------------------------------------

def test_gl_constant_is_zero():
    for a in (0.2, 0.5, 0.8, 1.0):
        assert abs(mrl_derivative_gl(const(3.7), a, 0.9)) <= 1e-10


def test_gl_identity_classical():
    assert abs(mrl_derivative_gl(power(1.0), 1.0, 0.5) - 1.0) <= 1e-8


def test_gl_power_example():
    # Gamma(2.5)/Gamma(2)
    assert abs(mrl_derivative_gl(power(1.5), 0.5, 1.0) - 1.32934038817913702047) / 1.3293 <= 1e-4


def test_rl_examples():
    assert abs(mrl_derivative_rl(power(2.0), 0.5, 1.0) - 1.50450555612735009853) / 1.5045 <= 1e-5
    assert mrl_derivative_rl(const(-2.0), 0.4, 0.8) == 0.0
    ref = 0.857387963447334248209  # Gamma(2)/Gamma(1.7) * 0.7**0.7
    assert abs(mrl_derivative_rl(power(1.0), 0.3, 0.7) - ref) / ref <= 1e-5


def test_power_rule_examples():
    for a in (0.1, 0.5, 0.9):
        assert power_rule(a, a, 1.0) == pytest.approx(float(mpmath.gamma(a + 1)), rel=1e-14)
    assert power_rule(1.0, 1.0, 2.0) == 1.0
    assert power_rule(0.8, 0.5, 1.0) == pytest.approx(1.03778738939727132196, rel=1e-14)


def test_power_rule_errors():
    with pytest.raises(DomainError):
        power_rule(1.0, 0.5, 0.0)
    with pytest.raises(DomainError):
        power_rule(0.0, 0.5, 1.0)


def test_leibniz_constant_operands():
    r = rule_residual("leibniz", const(2.0), const(5.0), 0.5, 0.7)
    assert r.pointwise_residual == 0.0


def test_leibniz_identity_operands():
    ref = 0.752252778063675049264  # |Gamma(3)/Gamma(2.5) - 2 Gamma(2)/Gamma(1.5)|
    r = rule_residual(Rule.LEIBNIZ, power(1.0), power(1.0), 0.5, 1.0)
    assert r.rule_id is Rule.LEIBNIZ
    assert abs(r.pointwise_residual - ref) <= 1e-5
    assert r.relative_residual == pytest.approx(r.pointwise_residual / max(abs(r.lhs), abs(r.rhs)))


def test_chain_coarse_identity_inner_affine_outer():
    # with u = x and an affine outer map both sides are the same quadrature
    outer = SampledFunction(lambda t: 3.0 * np.asarray(t) + 1.0, math.inf, "3x+1")
    r = rule_residual("chain_coarse", outer, power(1.0), 0.5, 0.8)
    assert r.relative_residual <= 1e-6


def test_chain_coarse_identity_inner_curved_outer_is_only_approximate():
    r = rule_residual("chain_coarse", power(2.0), power(1.0), 0.5, 0.8)
    assert r.relative_residual > 1e-3


def test_chain_nondiff_rejects_decreasing_inner():
    inner = SampledFunction(lambda t: 2.0 - np.asarray(t), math.inf, "2-x")
    with pytest.raises(DomainError):
        rule_residual("chain_nondiff", power(1.0), inner, 0.5, 0.5)


def test_unknown_rule():
    with pytest.raises(ValueError):
        rule_residual("product", power(1.0), power(1.0), 0.5, 0.5)


# --- errors ---------------------------------------------------------------

def test_rl_rejects_alpha_one():
    with pytest.raises(SingularityError):
        mrl_derivative_rl(power(1.0), 1.0, 0.5)


@pytest.mark.parametrize("alpha", [0.0, -0.1, 1.01, math.nan])
def test_order_window(alpha):
    with pytest.raises(DomainError):
        mrl_derivative(power(1.0), alpha, 0.5)


def test_rl_domain():
    f = power(1.0, x_max=1.0)
    with pytest.raises(DomainError):
        mrl_derivative_rl(f, 0.5, 0.0)
    with pytest.raises(DomainError):
        mrl_derivative_rl(f, 0.5, 1.5)
    with pytest.raises(DomainError):
        mrl_derivative_rl(f, 0.5, 0.5, nodes=4)


def test_gl_refuses_to_extrapolate():
    f = power(1.0, x_max=1.0)
    with pytest.raises(DomainError):
        mrl_derivative_gl(f, 0.5, 1.0)


def test_gl_truncation_warns():
    with pytest.warns(ConvergenceWarning):
        mrl_derivative_gl(power(1.0), 0.5, 1.0, terms=10)


def test_gl_no_warning_at_defaults():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        mrl_derivative_gl(power(1.5), 0.5, 1.0)


def test_infinite_origin_rejected():
    with np.errstate(divide="ignore"), pytest.raises(DomainError):
        SampledFunction(lambda t: 1.0 / np.asarray(t), math.inf, "1/x")


# --- result type ----------------------------------------------------------

def test_result_fields():
    res = mrl_derivative(power(1.5), 0.5, 1.0)
    assert res.value == res.rl_value
    assert res.error_estimate == abs(res.gl_value - res.rl_value)
    assert res.grid_size == fraccalc.RL_DEFAULT_NODES


def test_alpha_one_is_classical():
    res = mrl_derivative(power(2.0), 1.0, 1.5)
    assert res.value == pytest.approx(3.0, rel=1e-12)
    assert res.error_estimate == 0.0


# --- sweep invariants -----------------------------------------------------

@pytest.mark.parametrize("g,a,x", SWEEP)
def test_sweep_closed_form_and_cross_validation(g, a, x):
    ref = oracle_power(g, a, x)
    res = mrl_derivative(power(g), a, x)
    assert abs(res.rl_value - ref) / abs(ref) <= 1e-5
    assert abs(res.gl_value - res.rl_value) / abs(res.rl_value) <= 1e-4


@pytest.mark.parametrize("a", [0.2, 0.5, 0.8])
def test_constant_annihilation(a):
    for x in (0.25, 0.5, 1.0):
        res = mrl_derivative(const(7.0), a, x)
        assert abs(res.gl_value) <= 1e-10 and abs(res.rl_value) <= 1e-10


def test_classical_limit_monotone():
    f = SampledFunction(lambda t: np.exp(np.asarray(t, dtype=float)), math.inf, "exp")
    x = 0.8
    exact = math.exp(x)
    gaps = [abs(mrl_derivative_gl(f, a, x) - exact) for a in (0.9, 0.99, 0.999)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_rl_first_order_convergence():
    f = SampledFunction(lambda t: np.sin(np.asarray(t, dtype=float)), math.inf, "sin")
    # f(0) = 0, so the integral form equals the kernel integral of f'
    ref = float(mpmath.quad(lambda t: (1 - t) ** -0.5 * mpmath.cos(t), [0, 1]) / mpmath.gamma(0.5))
    errs = [abs(mrl_derivative_rl(f, 0.5, 1.0, nodes=n) - ref) for n in (100, 200, 400)]
    assert errs[1] < errs[0] / 1.9 and errs[2] < errs[1] / 1.9


@given(
    st.floats(-3, 3), st.floats(-3, 3),
    st.sampled_from([0.2, 0.5, 0.8]), st.floats(0.1, 1.5),
)
def test_linearity(a, b, alpha, x):
    f, g = power(1.5), SampledFunction(lambda t: np.sin(np.asarray(t, dtype=float)), math.inf, "sin")
    combo = SampledFunction(lambda t: a * f(t) + b * g(t), math.inf, "combo")
    for ev in (lambda h: mrl_derivative_rl(h, alpha, x, nodes=2000), lambda h: mrl_derivative_gl(h, alpha, x)):
        lhs, rhs = ev(combo), a * ev(f) + b * ev(g)
        scale = max(abs(a * ev(f)), abs(b * ev(g)), 1e-300)
        assert abs(lhs - rhs) <= 1e-10 * scale


@given(st.floats(0.05, 0.95), st.floats(0.1, 3.0))
def test_integral_form_reproduces_power_rule(alpha, x):
    # D^a x^a = Gamma(a+1) for every x
    got = mrl_derivative_rl(power(alpha), alpha, x)
    assert abs(got / float(mpmath.gamma(alpha + 1)) - 1) <= 1e-5


@given(st.floats(0.1, 3.0), st.floats(0.05, 0.95), st.floats(0.05, 5.0))
def test_power_rule_against_mpmath(g, a, x):
    assert power_rule(g, a, x) == pytest.approx(oracle_power(g, a, x), rel=1e-13)


def test_deterministic():
    f = power(1.5)
    assert mrl_derivative(f, 0.5, 0.7) == mrl_derivative(f, 0.5, 0.7)
