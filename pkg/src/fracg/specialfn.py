"""Real-argument gamma, log-gamma and digamma in double precision.

Gamma uses a rational Lanczos approximation (13 terms, all-positive
coefficients, so the sum does not cancel) and the reflection formula
below 1/2. Digamma shifts the argument up
with the recurrence and finishes with the asymptotic Bernoulli series.
"""

import math

from .errors import DomainError, PoleError

__all__ = ["gamma", "lgamma", "digamma", "check_real"]

# rational Lanczos approximation, N=13, g=6.0246800407767296 (exactly representable);
# numerator is the exp(-g)-scaled sum, denominator is x(x+1)...(x+11). Highest degree first.
_LANCZOS_G = 6.024680040776729583740234375
_LANCZOS_GH = _LANCZOS_G - 0.5
_LANCZOS_NUM = (
    0.006061842346248906525783753964555936883222,
    0.5098416655656676188125178644804694509993,
    19.51992788247617482847860966235652136208,
    449.9445569063168119446858607650988409623,
    6955.999602515376140356310115515198987526,
    75999.29304014542649875303443598909137092,
    601859.6171681098786670226533699352302507,
    3481712.15498064590882071018964774556468,
    14605578.08768506808414169982791359218571,
    43338889.32467613834773723740590533316085,
    86363131.28813859145546927288977868422342,
    103794043.1163445451906271053616070238554,
    56906521.91347156388090791033559122686859,
)
_LANCZOS_DEN = (
    1.0, 66.0, 1925.0, 32670.0, 357423.0, 2637558.0, 13339535.0,
    45995730.0, 105258076.0, 150917976.0, 120543840.0, 39916800.0, 0.0,
)

# B_{2k} / (2k), k = 1..7
_DIGAMMA_ASYMP = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)
_DIGAMMA_SHIFT = 10.0

# positive root of digamma as hi + lo, and Taylor coefficients psi^(k)(x0)/k!
_DIGAMMA_ROOT_HI = 1.4616321449683622
_DIGAMMA_ROOT_LO = 9.549995429965697e-17
_DIGAMMA_ROOT_WINDOW = 0.05
_DIGAMMA_ROOT_TAYLOR = (
    0.9676722454476212,
    -0.4427631689835921,
    0.258499760955651,
    -0.16394270544240652,
    0.10782405069126237,
    -0.07219956125645471,
    0.04880428816414311,
    -0.03316112647484736,
    0.022597648232218104,
    -0.01542476590494896,
    0.010538791616612175,
)


def check_real(x, name="x"):
    """Coerce ``x`` to float, rejecting NaN and infinities."""
    try:
        x = float(x)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be a real number, got {x!r}") from exc
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x}")
    return x


def _check_pole(x):
    if x <= 0.0 and abs(x - round(x)) <= 1e-300:
        raise PoleError(f"pole at non-positive integer {x}")


def _lanczos_sum(x):
    # evaluate in 1/x above 1 so the leading powers stay bounded
    num = den = 0.0
    if x <= 1.0:
        for a, b in zip(_LANCZOS_NUM, _LANCZOS_DEN):
            num = num * x + a
            den = den * x + b
    else:
        z = 1.0 / x
        for a, b in zip(reversed(_LANCZOS_NUM), reversed(_LANCZOS_DEN)):
            num = num * z + a
            den = den * z + b
    return num / den


def gamma(x):
    """Gamma function for real ``x``.

    Positive integers up to 171 are returned exactly from the factorial.
    Raises :class:`~fracg.errors.PoleError` at 0, -1, -2, ...
    """
    x = check_real(x)
    _check_pole(x)
    if x == math.floor(x) and 0 < x <= 171:
        return float(math.factorial(int(x) - 1))
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    zgh = x + _LANCZOS_GH
    # rounding error of zgh, folded back in to first order
    zgh_err = x - (zgh - _LANCZOS_GH)
    e = x - 0.5
    # split the power so it cannot overflow before exp(-e) scales it down
    half = zgh ** (0.5 * e)
    return _lanczos_sum(x) * half * (half * math.exp(-e)) * (1.0 + zgh_err * e / zgh)


def lgamma(x):
    """Natural log of ``|gamma(x)|``."""
    x = check_real(x)
    _check_pole(x)
    if x == math.floor(x) and 0 < x <= 3:
        return 0.0 if x <= 2 else math.log(2.0)
    if x < 0.5:
        return math.log(math.pi / abs(math.sin(math.pi * x))) - lgamma(1.0 - x)
    zgh = x + _LANCZOS_GH
    return math.log(_lanczos_sum(x)) + (x - 0.5) * (math.log(zgh) - 1.0)


def digamma(x):
    """Logarithmic derivative of the gamma function for real ``x``."""
    x = check_real(x)
    _check_pole(x)
    if x < 0.5:
        # psi(1 - x) - psi(x) = pi cot(pi x)
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    dx = (x - _DIGAMMA_ROOT_HI) - _DIGAMMA_ROOT_LO
    if abs(dx) < _DIGAMMA_ROOT_WINDOW:
        # keeps relative accuracy where psi crosses zero
        acc = 0.0
        for c in reversed(_DIGAMMA_ROOT_TAYLOR):
            acc = acc * dx + c
        return acc * dx
    shift = 0.0
    while x < _DIGAMMA_SHIFT:
        shift -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    for c in reversed(_DIGAMMA_ASYMP):
        series = series * inv2 + c
    return shift + math.log(x) - 0.5 / x - series * inv2
