"""Level shifts for f = 1 and f = r side by side, with the closed forms as a cross-check.

    python3 scripts/spectrum_table.py --nmax 5 --theta 1e-3
    python3 scripts/spectrum_table.py --nmax 4 --theta 1e-3 --physical
"""
from __future__ import annotations

import argparse

from ncqm.exact import as_fraction
from ncqm.hydrogen import (
    PhysicalParams,
    QuantumNumbers,
    delta_E_closed_f1,
    delta_E_closed_fr,
    delta_E_general,
    energy,
)

ALPHA = 0.0072973525693


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=5)
    ap.add_argument("--theta", type=float, default=1e-3)
    ap.add_argument("--physical", action="store_true", help="use e2 = alpha instead of 1")
    args = ap.parse_args()

    e2 = ALPHA if args.physical else 1.0
    p0, p1 = PhysicalParams(e2=e2, fspec=0), PhysicalParams(e2=e2, fspec=1)
    t2 = as_fraction(args.theta) ** 2
    print(f"e2={e2} theta={args.theta}")
    print(f"{'n':>2} {'l':>2} {'E_n':>14} {'dE(f=1)':>14} {'dE(f=r)':>14} {'ratio':>10}  closed forms")
    for n in range(1, args.nmax + 1):
        for l in range(n):
            q = QuantumNumbers(n, l)
            d0, d1 = delta_E_general(q, p0), delta_E_general(q, p1)
            ok0 = l == 0 or d0 == delta_E_closed_f1(q, p0)
            ok1 = d1 == delta_E_closed_fr(q, p1)
            ratio = f"{float(d1 / d0):10.3g}" if d0 else f"{'-':>10}"
            print(f"{n:2d} {l:2d} {float(energy(n, p0)):14.6e} {float(d0 * t2):14.6e} {float(d1 * t2):14.6e} "
                  f"{ratio}  {'ok' if ok0 and ok1 else 'MISMATCH'}")


if __name__ == "__main__":
    main()
