"""Fractional (MRL) calculus, fractional spin/Dirac algebra and the fractional lepton g-factor."""

from .errors import (
    BracketError,
    ConvergenceWarning,
    DomainError,
    FracgError,
    MaxIterError,
    OffShellError,
    PoleError,
    SingularityError,
)
from .fraccalc import (
    FracDerivResult,
    SampledFunction,
    mrl_derivative,
    mrl_derivative_gl,
    mrl_derivative_rl,
    power_rule,
    rule_residual,
)
from .gfactor import g_frac, g_frac_derivative, hierarchy_report, invert_g, load_leptons
from .specialfn import digamma, gamma, lgamma

__version__ = "0.1.0"
