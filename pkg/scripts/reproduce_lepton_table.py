"""Invert every lepton g-factor and compare against the published alpha values.

    python3 scripts/reproduce_lepton_table.py [--data FILE] [--out table.csv]
"""

import argparse
import sys
from dataclasses import dataclass
from typing import Optional

from fracg import gfactor, report


@dataclass(frozen=True)
class TableConfig:
    data: Optional[str] = None
    tol: float = gfactor.DEFAULT_TOL
    bracket: tuple = gfactor.DEFAULT_BRACKET


def run(cfg):
    rep = gfactor.hierarchy_report(gfactor.load_leptons(cfg.data), cfg.bracket, cfg.tol)
    golden, _ = gfactor.load_golden()
    rows = []
    for r in rep.rows:
        published = golden.get((r.lepton, r.source), (None, None))[1]
        rows.append({
            "lepton": r.lepton,
            "source": r.source,
            "g": r.g,
            "alpha": r.alpha,
            "alpha_published": published,
            "abs_diff": None if published is None else abs(r.alpha - float(published)),
            "residual": r.residual,
        })
    return rows, rep


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--data")
    ap.add_argument("--out")
    args = ap.parse_args(argv)
    rows, rep = run(TableConfig(data=args.data))
    text = report.to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"hierarchy_holds={rep.hierarchy_holds}", file=sys.stderr)
    for name, c in rep.comparisons.items():
        print(f"{name}: alpha_qed < alpha_exp is {c['qed_below_exp']}", file=sys.stderr)


if __name__ == "__main__":
    main()
