"""Fractional g-factor ``g(alpha) = 4 / ((1 + Gamma(alpha+1)) Gamma(alpha+1))`` and its inverse."""

import json
import math
import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .errors import BracketError, DomainError, FracgError, MaxIterError
from .specialfn import check_real, digamma, gamma

__all__ = [
    "LeptonRecord",
    "GFactorSolution",
    "ReportRow",
    "HierarchyReport",
    "g_frac",
    "g_frac_derivative",
    "invert_g",
    "hierarchy_report",
    "load_leptons",
    "load_golden",
    "DEFAULT_BRACKET",
    "DEFAULT_TOL",
]

DEFAULT_BRACKET = (0.9, 1.0)
DEFAULT_TOL = 1e-15
MAX_ITER = 200
NEWTON_SWITCH_WIDTH = 1e-3
LEPTON_ORDER = ("electron", "muon", "tau")
G_RANGE = (2.0, 2.01)


def _order(alpha):
    alpha = check_real(alpha, "alpha")
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"fractional order must satisfy 0 < alpha <= 1, got {alpha}")
    return alpha


def g_frac(alpha):
    alpha = _order(alpha)
    g1 = gamma(alpha + 1.0)
    return 4.0 / ((1.0 + g1) * g1)


def g_frac_derivative(alpha):
    """d g_frac / d alpha, using ``d Gamma(a+1)/da = Gamma(a+1) psi(a+1)``."""
    alpha = _order(alpha)
    g1 = gamma(alpha + 1.0)
    dg1 = g1 * digamma(alpha + 1.0)
    return -4.0 * (1.0 + 2.0 * g1) * dg1 / ((1.0 + g1) * g1) ** 2


@dataclass(frozen=True)
class GFactorSolution:
    alpha: float
    g_input: float
    residual: float
    iterations: int
    method: str
    trace: tuple = field(default=(), repr=False, compare=True)


def invert_g(g_target, bracket=DEFAULT_BRACKET, tol=DEFAULT_TOL, method="hybrid", max_iter=MAX_ITER):
    """Solve ``g_frac(alpha) = g_target`` for alpha inside ``bracket``.

    ``hybrid`` bisects until the bracket is narrower than 1e-3, then takes
    Newton steps, bisecting instead whenever a step would leave the bracket.
    ``trace`` records ``(alpha, g_frac(alpha) - g_target)`` per iteration.
    """
    g_target = check_real(g_target, "g")
    lo, hi = (_order(b) for b in bracket)
    if not lo < hi:
        raise DomainError(f"bracket must be increasing, got {bracket}")
    if method not in ("hybrid", "bisection", "newton"):
        raise DomainError(f"unknown method {method!r}")
    f_lo, f_hi = g_frac(lo) - g_target, g_frac(hi) - g_target
    for a, fa in ((lo, f_lo), (hi, f_hi)):
        if abs(fa) <= tol:
            return GFactorSolution(a, g_target, abs(fa), 0, method, ((a, fa),))
    if f_lo * f_hi > 0:
        raise BracketError(
            f"g={g_target!r} not bracketed: g_frac spans [{g_frac(hi)!r}, {g_frac(lo)!r}] on {bracket}"
        )

    trace = []
    seen = set()
    x = 0.5 * (lo + hi)
    newton = method == "newton"
    for it in range(1, max_iter + 1):
        fx = g_frac(x) - g_target
        trace.append((x, fx))
        if abs(fx) <= tol:
            return GFactorSolution(x, g_target, abs(fx), it, method, tuple(trace))
        if x in seen:
            break
        seen.add(x)
        if (fx > 0) == (f_lo > 0):
            lo, f_lo = x, fx
        else:
            hi = x
        if method == "hybrid" and hi - lo < NEWTON_SWITCH_WIDTH:
            newton = True
        nxt = None
        if newton:
            slope = g_frac_derivative(x)
            if slope != 0.0:
                nxt = x - fx / slope
                if not lo < nxt < hi:
                    nxt = None
        if nxt is None:
            nxt = 0.5 * (lo + hi)
        x = nxt

    # Stalled at the resolution of binary64: rounding noise in g_frac is a few
    # ulps, so the computed function is not monotone between adjacent floats.
    best = _scan_neighbours(x, g_target)
    trace.append(best)
    if abs(best[1]) <= tol:
        return GFactorSolution(best[0], g_target, abs(best[1]), len(trace), method, tuple(trace))
    raise MaxIterError(f"no root to tol={tol} for g={g_target!r} after {len(trace)} iterations")


def _scan_neighbours(x, g_target, width=64):
    best = (x, g_frac(x) - g_target)
    for direction in (-math.inf, math.inf):
        y = x
        for _ in range(width):
            y = math.nextafter(y, direction)
            if not 0.0 < y <= 1.0:
                break
            fy = g_frac(y) - g_target
            if abs(fy) < abs(best[1]):
                best = (y, fy)
    return best


@dataclass(frozen=True)
class LeptonRecord:
    name: str
    g_exp: Optional[float] = None
    g_qed: Optional[float] = None
    mean_life_s: object = "stable"
    sources: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.name not in LEPTON_ORDER:
            raise DomainError(f"unknown lepton {self.name!r}")
        if self.g_exp is None and self.g_qed is None:
            raise DomainError(f"{self.name}: need at least one of g_exp, g_qed")
        for g in (self.g_exp, self.g_qed):
            if g is not None and not G_RANGE[0] < g < G_RANGE[1]:
                raise DomainError(f"{self.name}: g={g} outside {G_RANGE}")
        if not (self.mean_life_s == "stable" or
                (isinstance(self.mean_life_s, (int, float)) and self.mean_life_s > 0)):
            raise DomainError(f"{self.name}: mean_life_s must be 'stable' or positive seconds")


@dataclass(frozen=True)
class ReportRow:
    lepton: str
    source: str
    g: float
    alpha: float
    residual: float
    iterations: int
    error: Optional[str] = None


@dataclass(frozen=True)
class HierarchyReport:
    rows: tuple
    hierarchy_holds: bool
    comparisons: dict

    def alpha(self, lepton, source):
        for r in self.rows:
            if r.lepton == lepton and r.source == source:
                return r.alpha
        raise KeyError((lepton, source))


def hierarchy_report(records, bracket=DEFAULT_BRACKET, tol=DEFAULT_TOL):
    """Invert every g value in ``records`` and check the ordering of the alphas.

    The hierarchy uses the experimental g where one exists and the QED value
    otherwise (the tau has no measured g). ``comparisons`` holds, per lepton
    with both values, whether ``alpha_qed < alpha_exp``.
    """
    records = list(records)
    if not records:
        raise DomainError("no lepton records")
    rows = []
    for rec in records:
        for source, g in (("exp", rec.g_exp), ("qed", rec.g_qed)):
            if g is None:
                continue
            try:
                sol = invert_g(g, bracket, tol)
                rows.append(ReportRow(rec.name, source, g, sol.alpha, sol.residual, sol.iterations))
            except FracgError as exc:
                rows.append(ReportRow(rec.name, source, g, math.nan, math.nan, 0, type(exc).__name__))
    rows.sort(key=lambda r: (-r.alpha if not math.isnan(r.alpha) else math.inf, r.lepton, r.source))

    best = {}
    for r in rows:
        if r.error is None and (r.source == "exp" or r.lepton not in best):
            best[r.lepton] = r.alpha
    present = [name for name in LEPTON_ORDER if name in best]
    holds = len(present) == len({r.lepton for r in rows}) and len(present) > 1 and all(
        best[a] > best[b] for a, b in zip(present, present[1:])
    )

    comparisons = {}
    for rec in records:
        ok = {r.source: r.alpha for r in rows if r.lepton == rec.name and r.error is None}
        if "exp" in ok and "qed" in ok:
            comparisons[rec.name] = {
                "alpha_exp": ok["exp"],
                "alpha_qed": ok["qed"],
                "qed_below_exp": ok["qed"] < ok["exp"],
            }
    return HierarchyReport(tuple(rows), holds, comparisons)


def _read_json(path):
    if path is None:
        path = os.environ.get("FRACG_DATA") or None
    if path is None:
        text = resources.files("fracg.data").joinpath("leptons.json").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return json.loads(text)


def load_leptons(path=None):
    """Read lepton records from a JSON data file (bundled defaults when ``path`` is None).

    ``FRACG_DATA`` is consulted when no path is given.
    """
    doc = _read_json(path)
    try:
        entries = doc["leptons"]
    except (KeyError, TypeError) as exc:
        raise DomainError("data file must be an object with a 'leptons' array") from exc
    return [
        LeptonRecord(
            name=e["name"],
            g_exp=e.get("g_exp"),
            g_qed=e.get("g_qed"),
            mean_life_s=e.get("mean_life_s", "stable"),
            sources=e.get("sources", {}),
        )
        for e in entries
    ]


def load_golden():
    """Published alpha values keyed by ``(lepton, source)`` as (g, alpha-string) pairs."""
    doc = json.loads(resources.files("fracg.data").joinpath("golden_alpha.json").read_text("utf-8"))
    return {(e["lepton"], e["source"]): (e["g"], e["alpha"]) for e in doc["entries"]}, doc
