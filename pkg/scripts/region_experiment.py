#!/usr/bin/env python3
"""Scan the feasible (order, degree) region of a term and compare it with
the predicted curve.

Example:
    python scripts/region_experiment.py testdata/uexpv.json --rmax 5 --dmax 60
"""

import argparse
import sys
import time

from telescoper.cli import load_term
from telescoper.hyperexp import greek_params
from telescoper.telescope import region_scan
from telescoper import bounds


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("term")
    ap.add_argument("--rmin", type=int, default=1)
    ap.add_argument("--rmax", type=int, required=True)
    ap.add_argument("--dmax", type=int, required=True)
    args = ap.parse_args()

    term = load_term(args.term)
    params = greek_params(term)
    curve = bounds.curve(params)
    phi = curve.effective_varphi
    print(f"curve: d > ({curve.vartheta}*r + {phi})/(r - {curve.psi}), "
          f"valid for r >= {curve.psi + 1}")
    t0 = time.time()
    report = region_scan(term, r_max=args.rmax, d_max=args.dmax, r_min=args.rmin)
    print(f"scan took {time.time() - t0:.1f}s")
    print("r  d_min  curve_prediction  gap")
    for r in sorted(report.boundary):
        pred = bounds.degree_for_order(curve, r) if r > curve.psi else None
        gap = "" if pred is None else str(report.boundary[r] - pred)
        print(f"{r:<2} {report.boundary[r]:<6} {pred if pred is not None else '-':<17} {gap}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
