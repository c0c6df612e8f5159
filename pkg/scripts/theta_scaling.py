"""Trace defect of the plain and gauged star products as a function of theta.

    python3 scripts/theta_scaling.py --fspec 1 --pairs 6 --seed 0
"""
from __future__ import annotations

import argparse
import math

import numpy as np

from ncqm.poisson import rotational_bivector
from ncqm.starprod import defect_slope, kontsevich_star, numeric_defect, star_prime, trace_defect
from ncqm.suites import MEASURES, gaussian_battery


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fspec", type=int, default=0)
    ap.add_argument("--measure", choices=sorted(MEASURES), default="1")
    ap.add_argument("--pairs", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    w = rotational_bivector(args.fspec)
    m = MEASURES[args.measure]()
    raw_B, gauged_B = kontsevich_star(w), star_prime(w, m)
    thetas = np.logspace(-4, -1, 7)
    battery = gaussian_battery(args.seed, 2 * args.pairs)
    print(f"s={args.fspec} mu={args.measure} seed={args.seed}")
    print("pair  " + "  ".join(f"{t:9.1e}" for t in thetas) + "   slope  gauged")
    for p in range(args.pairs):
        f, g = battery[2 * p], battery[2 * p + 1]
        raw = trace_defect(f, g, raw_B, m)
        gauged = trace_defect(f, g, gauged_B, m)
        vals = [numeric_defect(raw, float(t)) for t in thetas]
        slope = defect_slope(raw)
        status = "exact 0" if gauged.is_zero() else "NONZERO"
        cells = "  ".join(f"{v:9.2e}" for v in vals)
        print(f"{p:4d}  {cells}  {slope if math.isfinite(slope) else float('nan'):6.3f}  {status}")


if __name__ == "__main__":
    main()
