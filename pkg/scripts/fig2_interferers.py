"""Secrecy capacity against the number of interferers, one curve per r_max.

    python scripts/fig2_interferers.py --out fig2.csv
"""

import argparse
import sys

from secrecy_lab.capacity import average_secrecy_capacity
from secrecy_lab.channel import SystemParams
from secrecy_lab.cli import write_csv


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmax", type=int, default=8)
    ap.add_argument("--rmax", default="10,15,20,25", help="comma-separated eavesdropper radii (m)")
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)

    rows = []
    for r_max in (float(v) for v in args.rmax.split(",")):
        for k in range(args.kmax + 1):
            res = average_secrecy_capacity(SystemParams(k=k, r_max=r_max))
            rows.append([r_max, k, res.c_d, res.c_e, res.c_s])
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="\n")
    with out:
        write_csv(out, ["r_max", "k", "c_d", "c_e", "c_s"], rows)


if __name__ == "__main__":
    main()
