"""Modified Riemann-Liouville (MRL) fractional derivatives of order 0 < alpha <= 1.

Two independent evaluators are provided:

* :func:`mrl_derivative_gl`, the shifted Grunwald-Letnikov difference sum
  ``h**-alpha * sum_k (-1)**k C(alpha, k) g(x + (alpha - k) h)``;
* :func:`mrl_derivative_rl`, the integral form
  ``1/Gamma(1-alpha) d/dx int_0^x (x-t)**-alpha g(t) dt``,

both applied to ``g(t) = f(t) - f(0)``, which is what makes the derivative
of a constant vanish. For the sum, ``g`` is taken as zero for ``t < 0``
(the lower terminal of the integral), so the series terminates on its own
once the sample points leave ``[0, x]``.
"""

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceWarning, DomainError, SingularityError
from .specialfn import check_real, gamma

__all__ = [
    "SampledFunction",
    "FracDerivResult",
    "RuleResidual",
    "Rule",
    "check_order",
    "classical_derivative",
    "mrl_derivative_gl",
    "mrl_derivative_rl",
    "mrl_derivative",
    "power_rule",
    "rule_residual",
    "GL_RELATIVE_STEP",
    "GL_MAX_TERMS",
    "RL_DEFAULT_NODES",
]

#: default GL step as a fraction of x
GL_RELATIVE_STEP = 2e-5
GL_MAX_TERMS = 100_000
GL_TAIL_BOUND = 1e-16
RL_DEFAULT_NODES = 50_000
RL_MIN_NODES = 8
#: step of the 4th-order central difference, as a fraction of x
FD_RELATIVE_STEP = 1e-3


def check_order(alpha):
    """Validate a fractional order, ``0 < alpha <= 1``."""
    alpha = check_real(alpha, "alpha")
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"fractional order must satisfy 0 < alpha <= 1, got {alpha}")
    return alpha


@dataclass(frozen=True)
class SampledFunction:
    """A real function on ``[0, x_max]``.

    ``evaluator`` is called with numpy arrays where possible; scalar-only
    callables are vectorized on the fly.
    """

    evaluator: Callable
    x_max: float = math.inf
    name: str = "f"

    def __post_init__(self):
        if not self.x_max > 0:
            raise DomainError(f"x_max must be positive, got {self.x_max}")
        f0 = float(np.asarray(self.evaluator(0.0), dtype=float))
        if not math.isfinite(f0):
            raise DomainError(f"{self.name}(0) must be finite, got {f0}")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if t.ndim == 0:
            return float(self.evaluator(float(t)))
        out = np.asarray(self.evaluator(t), dtype=float)
        if out.shape != t.shape:
            out = np.array([float(self.evaluator(float(v))) for v in t])
        return out

    def check_point(self, x):
        if not 0.0 <= x <= self.x_max:
            raise DomainError(f"x={x} outside the domain [0, {self.x_max}] of {self.name}")


@dataclass(frozen=True)
class FracDerivResult:
    value: float
    gl_value: float
    rl_value: float
    error_estimate: float
    grid_size: int


class Rule(str, enum.Enum):
    LEIBNIZ = "leibniz"
    CHAIN_NONDIFF = "chain_nondiff"
    CHAIN_COARSE = "chain_coarse"


@dataclass(frozen=True)
class RuleResidual:
    pointwise_residual: float
    relative_residual: float
    rule_id: Rule
    lhs: float
    rhs: float


def classical_derivative(f, x, h=None):
    """First derivative by a five-point stencil.

    Central when ``[x - 2h, x + 2h]`` fits in the domain, one-sided otherwise.
    """
    x = check_real(x)
    f.check_point(x)
    if h is None:
        # a power of two keeps the stencil nodes exact
        h = 2.0 ** math.floor(math.log2(FD_RELATIVE_STEP * max(x, 1e-3)))
    if x + 2 * h <= f.x_max and x - 2 * h >= 0.0:
        fm2, fm1, fp1, fp2 = f(np.array([x - 2 * h, x - h, x + h, x + 2 * h]))
        return float((fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h))
    sign = -1.0 if x + 2 * h > f.x_max else 1.0
    if sign < 0 and x - 4 * h < 0.0:
        raise DomainError(f"domain of {f.name} too narrow for a derivative at x={x}")
    v = f(x + sign * h * np.arange(5.0))
    return float(sign * (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / (12.0 * h))


def _gl_weights(alpha, n):
    # (-1)^k C(alpha, k) for k = 0..n
    k = np.arange(1, n + 1, dtype=float)
    return np.concatenate(([1.0], np.cumprod(1.0 - (alpha + 1.0) / k)))


def mrl_derivative_gl(f, alpha, x, h=None, terms=None):
    """Difference-sum form of the MRL derivative.

    Default step is ``GL_RELATIVE_STEP * x``; the number of terms defaults to
    every sample point that lands in ``[0, x + alpha h]``, capped at
    ``GL_MAX_TERMS``. A :class:`ConvergenceWarning` is emitted when a
    non-negligible tail is dropped. ``alpha == 1`` falls back to the
    classical derivative.
    """
    alpha = check_order(alpha)
    x = check_real(x)
    f.check_point(x)
    if alpha == 1.0:
        return classical_derivative(f, x)
    if h is None:
        if x <= 0.0:
            raise DomainError("a step h is required at x = 0")
        h = GL_RELATIVE_STEP * x
    h = check_real(h, "h")
    if h <= 0.0:
        raise DomainError(f"step must be positive, got {h}")
    if x + alpha * h > f.x_max:
        raise DomainError(
            f"sample x + alpha*h = {x + alpha * h} exceeds domain [0, {f.x_max}] of {f.name}"
        )
    n_support = int(math.floor(x / h + alpha))
    if terms is None:
        terms = min(n_support, GL_MAX_TERMS)
    terms = int(terms)
    if terms < 0:
        raise DomainError(f"terms must be non-negative, got {terms}")
    n = min(terms, n_support)
    w = _gl_weights(alpha, n + 1)
    if n < n_support and abs(w[n + 1]) >= GL_TAIL_BOUND:
        warnings.warn(
            f"GL sum truncated at {n} of {n_support} terms; tail weight {abs(w[n + 1]):.3g}",
            ConvergenceWarning,
            stacklevel=2,
        )
    t = x + (alpha - np.arange(n + 1, dtype=float)) * h
    t = np.maximum(t, 0.0)  # guard rounding at the lower terminal
    g = f(t) - f(0.0)
    return math.fsum(w[: n + 1] * g) * h ** (-alpha)


def mrl_derivative_rl(f, alpha, x, nodes=None):
    """Integral form of the MRL derivative by L1 product integration.

    ``f - f(0)`` is replaced by its piecewise-linear interpolant on a uniform
    grid of ``nodes`` intervals over ``[0, x]``. The kernel moments of each
    linear piece are exact, and the outer d/dx is applied to those closed
    forms, which leaves ``sum_j slope_j * int_{t_j}^{t_j+1} (x-t)**-alpha dt``.
    """
    alpha = check_order(alpha)
    x = check_real(x)
    if alpha == 1.0:
        raise SingularityError("kernel (x-t)^-1 is not integrable; use the classical derivative")
    if not 0.0 < x <= f.x_max:
        raise DomainError(f"x={x} outside (0, {f.x_max}] for {f.name}")
    nodes = RL_DEFAULT_NODES if nodes is None else int(nodes)
    if nodes < RL_MIN_NODES:
        raise DomainError(f"need at least {RL_MIN_NODES} nodes, got {nodes}")
    t = np.linspace(0.0, x, nodes + 1)
    g = f(t) - f(0.0)
    dt = np.diff(t)
    dist = x - t[:-1]
    beta = 1.0 - alpha
    with np.errstate(divide="ignore"):
        # (x-t_j)^beta - (x-t_{j+1})^beta without cancellation; last ratio is exactly 1
        moments = -(dist**beta) * np.expm1(beta * np.log1p(-dt / dist))
    slopes = np.diff(g) / dt
    return math.fsum(slopes * moments) / (beta * gamma(1.0 - alpha))


def mrl_derivative(f, alpha, x, h=None, nodes=None):
    """Evaluate both forms and report their disagreement."""
    alpha = check_order(alpha)
    if alpha == 1.0:
        d = classical_derivative(f, x)
        return FracDerivResult(d, d, d, 0.0, 0)
    rl = mrl_derivative_rl(f, alpha, x, nodes=nodes)
    gl = mrl_derivative_gl(f, alpha, x, h=h)
    grid = RL_DEFAULT_NODES if nodes is None else int(nodes)
    return FracDerivResult(rl, gl, rl, abs(gl - rl), grid)


def power_rule(gamma_exp, alpha, x):
    """Closed form ``Gamma(g+1)/Gamma(g+1-alpha) x**(g-alpha)`` of D^alpha x**g."""
    alpha = check_order(alpha)
    gamma_exp = check_real(gamma_exp, "gamma_exp")
    x = check_real(x)
    if gamma_exp <= 0.0:
        raise DomainError(f"power rule needs a positive exponent, got {gamma_exp}")
    if x <= 0.0:
        raise DomainError(f"power rule needs x > 0, got {x}")
    return gamma(gamma_exp + 1.0) / gamma(gamma_exp + 1.0 - alpha) * x ** (gamma_exp - alpha)


def _frac(f, alpha, x, nodes):
    if alpha == 1.0:
        return classical_derivative(f, x)
    return mrl_derivative_rl(f, alpha, x, nodes=nodes)


def rule_residual(rule_id, f, g, alpha, x, nodes=None):
    """Measure how far one of the MRL calculus rules is from holding at ``x``.

    ``leibniz``: ``D(f g)`` against ``D(f) g + f D(g)``.
    ``chain_nondiff``: ``D f(g(x))`` against ``(D_u f)(g(x)) * g'(x)**alpha``.
    ``chain_coarse``: ``D f(g(x))`` against ``f'(g(x)) * D g(x)``.

    For the chain rules ``f`` is the outer function and ``g`` the inner map.
    Every fractional derivative comes from the integral-form evaluator.
    """
    rule_id = Rule(rule_id)
    alpha = check_order(alpha)
    x = check_real(x)
    if rule_id is Rule.LEIBNIZ:
        prod = SampledFunction(
            lambda t: f(t) * g(t), min(f.x_max, g.x_max), f"{f.name}*{g.name}"
        )
        lhs = _frac(prod, alpha, x, nodes)
        rhs = _frac(f, alpha, x, nodes) * g(x) + f(x) * _frac(g, alpha, x, nodes)
    else:
        comp = SampledFunction(lambda t: f(g(t)), g.x_max, f"{f.name}({g.name})")
        lhs = _frac(comp, alpha, x, nodes)
        u = g(x)
        if rule_id is Rule.CHAIN_NONDIFF:
            du = classical_derivative(g, x)
            if du < 0.0:
                raise DomainError(f"inner derivative {du} < 0 has no real power alpha={alpha}")
            rhs = _frac(f, alpha, u, nodes) * du**alpha
        else:
            rhs = classical_derivative(f, u) * _frac(g, alpha, x, nodes)
    diff = abs(lhs - rhs)
    return RuleResidual(diff, diff / max(abs(lhs), abs(rhs), 1e-300), rule_id, lhs, rhs)
