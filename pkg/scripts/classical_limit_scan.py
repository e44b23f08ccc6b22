"""Sum-form derivative of smooth test functions as alpha approaches 1 (plot-ready CSV).

    python3 scripts/classical_limit_scan.py [--x 0.8] > limit.csv
"""

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from fracg import fraccalc, report


@dataclass(frozen=True)
class LimitConfig:
    x: float = 0.8
    alphas: tuple = (0.5, 0.7, 0.9, 0.95, 0.99, 0.995, 0.999)


FUNCTIONS = {
    "exp": (np.exp, math.exp),
    "sin": (np.sin, math.cos),
    "x^2": (lambda t: np.asarray(t) ** 2, lambda t: 2 * t),
}


def run(cfg):
    rows = []
    for name, (f, df) in FUNCTIONS.items():
        fn = fraccalc.SampledFunction(f, math.inf, name)
        exact = df(cfg.x)
        for a in cfg.alphas:
            gl = fraccalc.mrl_derivative_gl(fn, a, cfg.x)
            rl = fraccalc.mrl_derivative_rl(fn, a, cfg.x)
            rows.append({"f": name, "alpha": a, "x": cfg.x, "gl": gl, "rl": rl,
                         "classical": exact, "gap": abs(gl - exact)})
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x", type=float, default=LimitConfig.x)
    args = ap.parse_args(argv)
    sys.stdout.write(report.to_csv(run(LimitConfig(x=args.x))))


if __name__ == "__main__":
    main()
