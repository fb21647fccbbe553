"""Secrecy capacity against destination distance and its zero crossing.

Prints the r_d at which the average secrecy capacity changes sign for each
eavesdropper radius, then writes the full curves as CSV.

    python scripts/fig3_crossing.py --rint 40 --k 5 --out fig3.csv
"""

import argparse
import sys

import numpy as np
from scipy import optimize

from secrecy_lab.capacity import average_secrecy_capacity
from secrecy_lab.channel import SystemParams
from secrecy_lab.cli import write_csv


def crossing(base: SystemParams) -> float:
    f = lambda r: average_secrecy_capacity(base.with_(r_d=r)).c_s
    return optimize.brentq(f, 0.5, base.r_max, xtol=1e-6)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rmax", default="10,15")
    ap.add_argument("--rint", type=float, default=40.0)
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--points", type=int, default=20)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)

    rows = []
    for r_max in (float(v) for v in args.rmax.split(",")):
        base = SystemParams(k=args.k, r_int=args.rint, r_max=r_max)
        root = crossing(base)
        print(f"r_max={r_max:g}: c_s = 0 at r_d={root:.4f} ({root / r_max:.3f} r_max)", file=sys.stderr)
        for r_d in np.linspace(1.0, 1.5 * r_max, args.points):
            rows.append([r_max, r_d, average_secrecy_capacity(base.with_(r_d=float(r_d))).c_s])
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="\n")
    with out:
        write_csv(out, ["r_max", "r_d", "c_s"], rows)


if __name__ == "__main__":
    main()
