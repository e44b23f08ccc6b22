"""Invariant suites run by ``fracg verify``.

Each suite returns a :class:`SuiteResult`; a suite that raises is reported
as failed rather than aborting the run.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import dirac, fraccalc, gfactor, spinalgebra
from .specialfn import digamma, gamma, lgamma

EPS = np.finfo(float).eps
ALPHA_SWEEP_SPIN = tuple(round(0.1 * i, 1) for i in range(1, 11))
ALPHA_SWEEP_DERIV = (0.2, 0.5, 0.8)
ALPHA_SWEEP_GORDON = (0.3, 0.5, 0.8, 1.0)
POWERS = (0.5, 1.0, 1.5, 2.0)
POINTS = (0.25, 0.5, 1.0)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    max_residual: float
    tolerance: float
    detail: str = ""


def _result(name, checks):
    """``checks`` is a list of (label, residual, tolerance)."""
    failed = [c for c in checks if not c[1] <= c[2]]

    def ratio(c):
        if c[2] > 0:
            return c[1] / c[2]
        return math.inf if c[1] > 0 else 0.0

    worst = max(checks, key=ratio)
    detail = "; ".join(f"{c[0]}: {c[1]:.3g} > {c[2]:.3g}" for c in failed) or worst[0]
    return SuiteResult(name, not failed, float(worst[1]), float(worst[2]), detail)


def suite_specialfn(rng, alphas=None):
    xs = rng.uniform(0.5, 20.0, 10_000)
    recur = max(abs(gamma(x + 1) - x * gamma(x)) / gamma(x + 1) for x in xs)
    ys = rng.uniform(0.0, 1.0, 2_000)
    ys = ys[(ys > 0.0) & (ys < 1.0)]
    refl = max(abs(gamma(y) * gamma(1 - y) * math.sin(math.pi * min(y, 1 - y)) / math.pi - 1) for y in ys)
    h = 1e-6
    zs = rng.uniform(0.5, 10.0, 500)
    fd = max(abs(digamma(z) - (lgamma(z + h) - lgamma(z - h)) / (2 * h)) for z in zs)
    return _result("specialfn", [
        ("gamma recurrence", recur, 1e-13),
        ("gamma reflection", refl, 1e-12),
        ("digamma vs d/dx lgamma", fd, 1e-7),
    ])


def _power(gm):
    return fraccalc.SampledFunction(lambda t: np.asarray(t) ** gm, 10.0, f"x^{gm}")


def suite_fraccalc(rng, alphas=None):
    alphas = ALPHA_SWEEP_DERIV if alphas is None else alphas
    closed = cross = const = 0.0
    for gm in POWERS:
        f = _power(gm)
        for a in alphas:
            for x in POINTS:
                ref = fraccalc.power_rule(gm, a, x)
                res = fraccalc.mrl_derivative(f, a, x)
                closed = max(closed, abs(res.rl_value - ref) / abs(ref))
                cross = max(cross, res.error_estimate / abs(res.rl_value))
    k = fraccalc.SampledFunction(lambda t: np.full_like(np.asarray(t, dtype=float), 7.0), 10.0, "7")
    for a in alphas:
        for x in POINTS:
            res = fraccalc.mrl_derivative(k, a, x)
            const = max(const, abs(res.gl_value), abs(res.rl_value))
    return _result("fraccalc", [
        ("integral form vs power rule (rel)", closed, 1e-5),
        ("sum form vs integral form (rel)", cross, 1e-4),
        ("constant annihilation", const, 1e-10),
    ])


def suite_spinalgebra(rng, alphas=None):
    alphas = ALPHA_SWEEP_SPIN if alphas is None else alphas
    comm = casimir = ladder = hel = 0.0
    for a in alphas:
        am = spinalgebra.build_spin_half(spinalgebra.EffectiveConstants(a))
        k = am.hbar_eff
        comm = max(comm, spinalgebra.verify_commutators(am).max_residual)
        casimir = max(casimir, np.max(np.abs(am.casimir - 0.75 * k * k * np.eye(2))))
        up, down = np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)
        ladder = max(ladder, np.max(np.abs(am.raising @ down - k * up)))
        dirs = rng.normal(size=(100, 3))
        for d in dirs / np.linalg.norm(dirs, axis=1, keepdims=True):
            ev = spinalgebra.helicity_projection(am, d).eigenvalues
            hel = max(hel, np.max(np.abs(ev - np.array([-k / 2, k / 2]))))
    return _result("spinalgebra", [
        ("commutators", comm, 1e-14),
        ("casimir = 3/4 hbar_eff^2", casimir, 1e-14),
        ("ladder action", ladder, 1e-13),
        ("helicity eigenvalues", hel, 1e-12),
    ])


def suite_dirac_algebra(rng, alphas=None):
    basis = dirac.build_gamma_basis()
    anti = max(
        np.max(np.abs(basis.big_sigma(m, n) + basis.big_sigma(n, m)))
        for m in range(4) for n in range(4)
    )
    prod = max(
        np.max(np.abs(basis[m] @ basis[n] - (dirac.METRIC[m, n] * np.eye(4) + basis.big_sigma(m, n))))
        for m in range(4) for n in range(4)
    )
    pauli = max(dirac.pauli_product_residual(*rng.uniform(-1, 1, (2, 3))) for _ in range(200))
    ps = np.linspace(0.0, 5.0, 201)
    mono = 0.0
    for a in alphas or (0.3, 0.5, 0.8, 1.0):
        e = np.array([dirac.dispersion_energy(p, 1.0, a) for p in ps])
        mono = max(mono, float(np.sum(np.diff(e) <= 0)))
    return _result("dirac_algebra", [
        ("clifford", basis.clifford_residual(), 1e-15),
        ("trace identities", dirac.trace_identity_residual(), 1e-15),
        ("Sigma antisymmetry", anti, 1e-15),
        ("gamma^mu gamma^nu = eta + Sigma", prod, 1e-15),
        ("pauli product identity", pauli, 1e-15),
        ("dispersion monotone in p", mono, 0.0),
    ])


def _random_wave(rng, m, a, c=1.0, hbar=1.0):
    seed = rng.normal(size=4) + 1j * rng.normal(size=4)
    return dirac.dirac_spinor(rng.normal(size=3), m, a, seed, c, hbar)


def suite_gordon(rng, alphas=None, pairs=200):
    alphas = ALPHA_SWEEP_GORDON if alphas is None else alphas
    m = 1.0
    closure = cont = 0.0
    for i in range(pairs):
        a = alphas[i % len(alphas)]
        w_out, w_in = _random_wave(rng, m, a), _random_wave(rng, m, a)
        closure = max(closure, dirac.gordon_decompose(w_out, w_in, m).closure_residual)
        cont = max(cont, abs(dirac.current_divergence(w_out, w_in)))
    classical = 0.0
    if 1.0 in alphas:
        for _ in range(20):
            w = _random_wave(rng, m, 1.0)
            cur = dirac.gordon_decompose(w, w, m)
            scalar = dirac.build_gamma_basis().bar(w.spinor) @ w.spinor
            classical = max(classical, np.max(np.abs(cur.total - w.k / m * scalar)))
    return _result("gordon", [
        ("total = convective + spin", closure, 1e-10),
        ("current continuity", cont, 1e-10),
        ("classical Gordon identity", classical, 1e-10),
    ])


def suite_gauge(rng, alphas=None):
    alphas = (0.3, 0.5, 0.8) if alphas is None else alphas
    resid = loop = 0.0
    for a in alphas:
        chi = fraccalc.SampledFunction(lambda t, a=a: np.asarray(t) ** a, 10.0, f"x^{a}")
        for x in (0.25, 0.5, 1.0, 2.0):
            resid = max(resid, dirac.gauge_phase_check(chi, 0.7, 1.0, 1.0, a, x))
            d = fraccalc.classical_derivative(chi, x) if a == 1.0 else fraccalc.mrl_derivative_rl(chi, a, x)
            loop = max(loop, abs(d / gamma(a + 1.0) - 1.0))
    return _result("gauge_phase", [
        ("chain-rule phase residual", resid, 1e-6),
        ("D^a x^a = Gamma(a+1)", loop, 1e-6),
    ])


def suite_pauli(rng, alphas=None):
    sample = rng.uniform(0.0, 1.0, 10_000) if alphas is None else np.asarray(alphas, dtype=float)
    ident = 0.0
    for a in sample:
        if a <= 0.0:
            continue
        g1 = gamma(a + 1.0)
        ident = max(ident, abs(gfactor.g_frac(a) * g1 * (1.0 + g1) / 4.0 - 1.0))
    red = dirac.pauli_reduction(1.0, 1.0)
    classical = abs(red.rest_shift) + abs(red.kinetic_denominator - 2.0) + abs(red.g_factor - 2.0)
    coupling = max(
        abs(dirac.pauli_reduction(a, 1.0).spin_coupling / gfactor.g_frac(a) - 1.0) for a in sample[:200] if a > 0
    )
    return _result("pauli", [
        ("g Gamma (1+Gamma) = 4 (rel)", ident, 8 * EPS),
        ("classical Pauli coefficients", classical, 0.0),
        ("spin coupling = g_frac (rel)", coupling, 8 * EPS),
    ])


def suite_gfactor_golden(rng, alphas=None, data=None):
    golden, doc = gfactor.load_golden()
    tol = doc["tolerance"]
    report = gfactor.hierarchy_report(gfactor.load_leptons(data))
    worst = 0.0
    for (lepton, source), (_, alpha_str) in golden.items():
        try:
            got = report.alpha(lepton, source)
        except KeyError:
            got = math.nan
        err = abs(got - float(alpha_str))
        worst = max(worst, err) if not math.isnan(err) else math.inf
    cmp_ok = (
        report.comparisons.get("electron", {}).get("qed_below_exp") is True
        and report.comparisons.get("muon", {}).get("qed_below_exp") is False
    )
    return _result("gfactor_golden", [
        ("published alpha values", worst, tol),
        ("hierarchy e > mu > tau", 0.0 if report.hierarchy_holds else 1.0, 0.0),
        ("QED/Exp orderings", 0.0 if cmp_ok else 1.0, 0.0),
    ])


def suite_gfactor_roundtrip(rng, alphas=None, samples=1000):
    rt = 0.0
    for a in rng.uniform(0.9, 1.0, samples):
        a = float(a)
        rt = max(rt, abs(gfactor.invert_g(gfactor.g_frac(a)).alpha - a))
    grid = np.linspace(0.9, 1.0, 10_000, endpoint=False)[1:]
    vals = np.array([gfactor.g_frac(a) for a in grid])
    nonmono = float(np.sum(np.diff(vals) >= 0))
    g = 2.00231930436146
    det = 0.0 if gfactor.invert_g(g) == gfactor.invert_g(g) else 1.0
    return _result("gfactor_roundtrip", [
        ("invert(g_frac(a)) = a", rt, 1e-12),
        ("g_frac strictly decreasing", nonmono, 0.0),
        ("solver determinism", det, 0.0),
    ])


SUITES = (
    ("specialfn", suite_specialfn),
    ("fraccalc", suite_fraccalc),
    ("spinalgebra", suite_spinalgebra),
    ("dirac_algebra", suite_dirac_algebra),
    ("gordon", suite_gordon),
    ("gauge_phase", suite_gauge),
    ("pauli", suite_pauli),
    ("gfactor_golden", suite_gfactor_golden),
    ("gfactor_roundtrip", suite_gfactor_roundtrip),
)


def run_all(seed=0, alpha=None, data=None):
    alphas = None if alpha is None else (alpha,)
    results = []
    for i, (name, fn) in enumerate(SUITES):
        # one stream per suite, so restricting or reordering suites keeps the others reproducible
        rng = np.random.default_rng([seed, i])
        kwargs = {"data": data} if name == "gfactor_golden" else {}
        try:
            results.append(fn(rng, alphas, **kwargs))
        except Exception as exc:  # reported, never fatal
            results.append(SuiteResult(name, False, math.inf, 0.0, f"{type(exc).__name__}: {exc}"))
    return results
