"""``fracg <gfactor|deriv|verify>`` command-line driver.

Exit codes: 0 success, 1 argument or domain error, 2 solver error
(no bracket, iteration limit), 3 a verification suite failed.
"""

import argparse
import math
import os
import sys
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import fraccalc, gfactor, report, verify
from .errors import BracketError, DomainError, FracgError, MaxIterError
from .specialfn import check_real

EXIT_OK, EXIT_USAGE, EXIT_SOLVER, EXIT_VERIFY = 0, 1, 2, 3

CATALOG = {
    "pow": "x^p (p >= 0)",
    "exp": "exp(p x)",
    "sin": "sin(p x)",
    "const": "constant p",
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    action: Optional[str] = None
    alpha: Optional[float] = None
    g: Optional[float] = None
    x: Optional[float] = None
    f: Optional[str] = None
    fmt: str = "human"
    data: Optional[str] = None
    tol: float = gfactor.DEFAULT_TOL
    bracket: tuple = gfactor.DEFAULT_BRACKET
    seed: int = 0
    nodes: Optional[int] = None
    h: Optional[float] = None

    def validate(self):
        """Check every override before any computation starts; raises DomainError."""
        if self.fmt not in report.FORMATS:
            raise DomainError(f"unknown format {self.fmt!r}")
        tol = check_real(self.tol, "tol")
        if tol <= 0:
            raise DomainError(f"tol must be positive, got {tol}")
        lo, hi = (fraccalc.check_order(b) for b in self.bracket)
        if not lo < hi:
            raise DomainError(f"bracket must be increasing, got {self.bracket}")
        if self.alpha is not None:
            fraccalc.check_order(self.alpha)
        if self.g is not None:
            check_real(self.g, "g")
        if self.x is not None and not check_real(self.x, "x") > 0:
            raise DomainError(f"x must be positive, got {self.x}")
        if self.nodes is not None and self.nodes < fraccalc.RL_MIN_NODES:
            raise DomainError(f"nodes must be at least {fraccalc.RL_MIN_NODES}")
        if self.h is not None and not check_real(self.h, "h") > 0:
            raise DomainError(f"h must be positive, got {self.h}")
        if self.f is not None:
            parse_function(self.f)
        if self.data is not None and not os.path.isfile(self.data):
            raise DomainError(f"data file not found: {self.data}")
        return self


def parse_function(text):
    """``kind:param`` from the closed catalog -> (SampledFunction, kind, param)."""
    kind, sep, raw = text.partition(":")
    if not sep or kind not in CATALOG:
        raise DomainError(f"unknown function {text!r}; choose from {', '.join(k + ':P' for k in CATALOG)}")
    try:
        p = check_real(float(raw), "function parameter")
    except ValueError as exc:
        raise DomainError(f"bad parameter in {text!r}: {exc}") from exc
    if kind == "pow":
        if p < 0:
            raise DomainError(f"pow exponent must be >= 0, got {p}")
        fn = lambda t: np.asarray(t, dtype=float) ** p  # noqa: E731
    elif kind == "exp":
        fn = lambda t: np.exp(p * np.asarray(t, dtype=float))  # noqa: E731
    elif kind == "sin":
        fn = lambda t: np.sin(p * np.asarray(t, dtype=float))  # noqa: E731
    else:
        fn = lambda t: np.full_like(np.asarray(t, dtype=float), p)  # noqa: E731
    return fraccalc.SampledFunction(fn, math.inf, text), kind, p


def closed_form(kind, p, alpha, x):
    if kind == "const" or (kind == "pow" and p == 0.0):
        return 0.0
    if kind == "pow":
        return fraccalc.power_rule(p, alpha, x)
    return None


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=report.FORMATS, default="human")
    common.add_argument("--data", help="lepton data file (default: $FRACG_DATA, then bundled)")
    common.add_argument("--tol", type=float, default=gfactor.DEFAULT_TOL)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"), default=gfactor.DEFAULT_BRACKET)

    parser = _Parser(prog="fracg", description="Fractional g-factor toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gf = sub.add_parser("gfactor", help="evaluate, invert or tabulate g_frac")
    gsub = gf.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ev = gsub.add_parser("eval", parents=[common], help="g_frac(alpha)")
    ev.add_argument("--alpha", type=float, required=True)
    inv = gsub.add_parser("invert", parents=[common], help="solve g_frac(alpha) = g")
    inv.add_argument("--g", type=float, required=True)
    gsub.add_parser("table", parents=[common], help="alpha for every lepton in the dataset")

    de = sub.add_parser("deriv", parents=[common], help="MRL derivative of a catalog function")
    de.add_argument("--f", required=True, help="one of " + ", ".join(f"{k}:P = {v}" for k, v in CATALOG.items()))
    de.add_argument("--alpha", type=float, required=True)
    de.add_argument("--x", type=float, required=True)
    de.add_argument("--nodes", type=int)
    de.add_argument("--h", type=float)

    ve = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    ve.add_argument("--alpha", type=float, help="restrict sweeps to one order")
    return parser


def config_from_args(ns):
    data = ns.data if ns.data is not None else (os.environ.get("FRACG_DATA") or None)
    return RunConfig(
        command=ns.command,
        action=getattr(ns, "action", None),
        alpha=getattr(ns, "alpha", None),
        g=getattr(ns, "g", None),
        x=getattr(ns, "x", None),
        f=getattr(ns, "f", None),
        fmt=ns.fmt,
        data=data,
        tol=ns.tol,
        bracket=tuple(ns.bracket),
        seed=ns.seed,
        nodes=getattr(ns, "nodes", None),
        h=getattr(ns, "h", None),
    )


def _config_echo(cfg):
    echo = asdict(cfg)
    echo["bracket"] = list(cfg.bracket)
    return echo


def cmd_gfactor(cfg, out):
    if cfg.action == "eval":
        value = gfactor.g_frac(cfg.alpha)
        if cfg.fmt == "human":
            out.write(repr(value) + "\n")
        else:
            out.write(report.render([{"alpha": cfg.alpha, "g": value}], cfg.fmt, _config_echo(cfg)))
        return EXIT_OK

    if cfg.action == "invert":
        sol = gfactor.invert_g(cfg.g, cfg.bracket, cfg.tol)
        row = {"g": sol.g_input, "alpha": sol.alpha, "residual": sol.residual,
               "iterations": sol.iterations, "method": sol.method}
        out.write(report.render([row], cfg.fmt, _config_echo(cfg)))
        return EXIT_OK

    records = gfactor.load_leptons(cfg.data)
    rep = gfactor.hierarchy_report(records, cfg.bracket, cfg.tol)
    rows = [asdict(r) for r in rep.rows]
    extra = {"hierarchy_holds": rep.hierarchy_holds}
    if cfg.fmt == "json":
        extra["comparisons"] = rep.comparisons
    else:
        for name, c in rep.comparisons.items():
            extra[f"{name} alpha_qed < alpha_exp"] = c["qed_below_exp"]
    out.write(report.render(rows, cfg.fmt, _config_echo(cfg), extra))
    return EXIT_SOLVER if any(r.error for r in rep.rows) else EXIT_OK


def cmd_deriv(cfg, out):
    fn, kind, p = parse_function(cfg.f)
    res = fraccalc.mrl_derivative(fn, cfg.alpha, cfg.x, h=cfg.h, nodes=cfg.nodes)
    exact = closed_form(kind, p, cfg.alpha, cfg.x)
    row = {
        "f": cfg.f,
        "alpha": cfg.alpha,
        "x": cfg.x,
        "value": res.value,
        "gl": res.gl_value,
        "rl": res.rl_value,
        "error_estimate": res.error_estimate,
        "grid_size": res.grid_size,
        "closed_form": exact,
        "deviation": None if exact is None else abs(res.value - exact),
    }
    out.write(report.render([row], cfg.fmt, _config_echo(cfg)))
    return EXIT_OK


def cmd_verify(cfg, out):
    results = verify.run_all(seed=cfg.seed, alpha=cfg.alpha, data=cfg.data)
    rows = [
        {"suite": r.name, "status": "PASS" if r.passed else "FAIL",
         "max_residual": r.max_residual, "tolerance": r.tolerance, "detail": r.detail}
        for r in results
    ]
    ok = all(r.passed for r in results)
    out.write(report.render(rows, cfg.fmt, _config_echo(cfg), {"all_passed": ok}))
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {"gfactor": cmd_gfactor, "deriv": cmd_deriv, "verify": cmd_verify}


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        ns = build_parser().parse_args(argv)
    except _UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    try:
        cfg = config_from_args(ns).validate()
        return COMMANDS[cfg.command](cfg, out)
    except (BracketError, MaxIterError) as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_SOLVER
    except (FracgError, ValueError, OSError) as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
