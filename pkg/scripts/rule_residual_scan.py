"""How far the fractional Leibniz and chain rules are from holding, over alpha and x.

The rules are approximations; this scan measures them rather than asserting them.

    python3 scripts/rule_residual_scan.py > residuals.csv
"""

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from fracg import fraccalc, report


@dataclass(frozen=True)
class ScanConfig:
    alphas: tuple = (0.2, 0.4, 0.6, 0.8, 0.95)
    xs: tuple = (0.25, 0.5, 1.0, 2.0)
    nodes: int = 20_000


def _fn(f, name):
    return fraccalc.SampledFunction(f, math.inf, name)


CASES = (
    ("leibniz", _fn(lambda t: np.asarray(t), "x"), _fn(lambda t: np.asarray(t), "x")),
    ("leibniz", _fn(np.sin, "sin"), _fn(np.exp, "exp")),
    ("chain_nondiff", _fn(lambda t: np.asarray(t) ** 2, "u^2"), _fn(lambda t: 2.0 * np.asarray(t), "2x")),
    ("chain_coarse", _fn(lambda t: np.asarray(t) ** 2, "u^2"), _fn(lambda t: np.asarray(t), "x")),
    ("chain_coarse", _fn(np.exp, "exp(u)"), _fn(lambda t: np.asarray(t) ** 1.5, "x^1.5")),
)


def run(cfg):
    rows = []
    for rule, f, g in CASES:
        for a in cfg.alphas:
            for x in cfg.xs:
                r = fraccalc.rule_residual(rule, f, g, a, x, nodes=cfg.nodes)
                rows.append({"rule": rule, "f": f.name, "g": g.name, "alpha": a, "x": x,
                             "lhs": r.lhs, "rhs": r.rhs, "residual": r.pointwise_residual,
                             "relative": r.relative_residual})
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=ScanConfig.nodes)
    args = ap.parse_args(argv)
    sys.stdout.write(report.to_csv(run(ScanConfig(nodes=args.nodes))))


if __name__ == "__main__":
    main()
