"""Uncertainty products against the nonlocality bound, plus the two <r^2> values.

    python3 scripts/nonlocality_sweep.py --nmax 4 --theta 1e-2
"""
from __future__ import annotations

import argparse

from ncqm.exact import as_fraction
from ncqm.hydrogen import (
    PhysicalParams,
    QuantumNumbers,
    printed_r2_formula,
    radial_expectation_exact,
    uncertainty_bound,
    uncertainty_product,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=4)
    ap.add_argument("--theta", type=float, default=1e-2)
    args = ap.parse_args()
    t2 = as_fraction(args.theta) ** 2
    for s in (0, 1):
        p = PhysicalParams(fspec=s)
        print(f"\nf = (r^2)^({s}/2)")
        print(f"{'n':>2} {'l':>2} {'m':>3} {'dx*dy':>12} {'bound':>12} {'<r^2>':>8} {'printed':>8}")
        for n in range(1, args.nmax + 1):
            for l in range(n):
                for m in range(0, l + 1):
                    q = QuantumNumbers(n, l, m)
                    prod = uncertainty_product(q, p)
                    bound = float(uncertainty_bound(q, p) * t2)
                    r2 = radial_expectation_exact(q, 2, p)
                    print(f"{n:2d} {l:2d} {m:3d} {prod:12.5g} {bound:12.5g} {str(r2):>8} "
                          f"{str(printed_r2_formula(n, l, p.a0)):>8}")


if __name__ == "__main__":
    main()
