"""Secrecy capacity against source power for several (k, R) settings.

    python scripts/fig4_source_power.py --out fig4.csv
"""

import argparse
import sys

import numpy as np

from secrecy_lab.capacity import average_secrecy_capacity
from secrecy_lab.channel import SystemParams
from secrecy_lab.cli import write_csv

SETTINGS = ((0, 20.0), (5, 20.0), (5, 40.0))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=11)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)

    rows = []
    for k, r_int in SETTINGS:
        for p_s in np.logspace(0.0, 2.0, args.points):
            res = average_secrecy_capacity(SystemParams(k=k, r_int=r_int, p_s=float(p_s)))
            rows.append([k, r_int, p_s, res.c_s])
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="\n")
    with out:
        write_csv(out, ["k", "r_int", "p_s", "c_s"], rows)


if __name__ == "__main__":
    main()
