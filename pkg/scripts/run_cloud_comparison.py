#!/usr/bin/env python3
"""Sample the four-hole disk, then compare the three planar metrics on it.

Produces points.csv, one barcode CSV + SVG per metric, stats.csv, and
stats.txt under --out.  Rerunning with the same arguments reproduces every
file byte for byte.
"""

import argparse
import sys

from ripsbars.cli import main as ripsbars


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="runs/cloud", help="output directory")
    ap.add_argument("--points", type=int, default=50)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument(
        "--keep-going",
        action="store_true",
        help="run the filtration past the connectivity threshold",
    )
    args = ap.parse_args(argv)

    code = ripsbars(
        ["cloud", "--out", args.out, "--points", str(args.points), "--seed", str(args.seed)]
    )
    if code != 0:
        return code
    compare = [
        "compare",
        "--input",
        f"{args.out}/points.csv",
        "--out",
        args.out,
        "--svg",
    ]
    if not args.keep_going:
        compare.append("--stop-on-connected")
    return ripsbars(compare)


if __name__ == "__main__":
    sys.exit(main())
