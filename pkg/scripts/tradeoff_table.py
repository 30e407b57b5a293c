#!/usr/bin/env python3
"""Tabulate the order that minimizes each output metric along the curve.

Example:
    python scripts/tradeoff_table.py testdata/cost_tradeoff.json
"""

import argparse
import sys

from telescoper.cli import load_term
from telescoper.hyperexp import greek_params
from telescoper import bounds


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("term")
    ap.add_argument("--rcap", type=int, default=None)
    args = ap.parse_args()

    term = load_term(args.term)
    params = greek_params(term)
    curve = bounds.curve(params)
    print(f"minimal guaranteed order {curve.psi + 1}, "
          f"minimal guaranteed degree {curve.vartheta + 1}")
    tau = max(params.alpha, params.gamma, params.degx_c0, params.degy_c0, 1)
    print(f"{'metric':<10} {'r_opt':>6} {'d_opt':>6} {'value':>16} {'asymptotic r':>14}")
    for metric in bounds.METRICS:
        rep = bounds.optimize_metric(params, metric, args.rcap)
        hint = bounds.asymptotic_choice(tau, metric)
        print(f"{metric.lower():<10} {rep.r_opt:>6} {rep.d_opt:>6} "
              f"{str(rep.value):>16} {hint:>14}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
