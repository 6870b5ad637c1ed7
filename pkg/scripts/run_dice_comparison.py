#!/usr/bin/env python3
"""Build the six-sided dice tournament and compare three distances on it.

Enumerates the 32-die space (sides sum to 21), extracts the non-transitive
subset under the chosen tie convention, writes the beating graph and the
similarity / Euclidean / foliation-symmetry distance matrices, then runs
the barcode pipeline on each matrix and prints a combined statistics table.

The strict convention (default here) yields the ten-die tournament whose
longest beating cycle has length 7.
"""

import argparse
import sys

from ripsbars.cli import main as ripsbars

DISTANCES = ("similarity", "euclidean", "foliation_symmetry")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="runs/dice", help="output directory")
    ap.add_argument("--tie-convention", choices=("strict", "majority"), default="strict")
    ap.add_argument("--svg", action="store_true", help="also render SVG barcodes")
    args = ap.parse_args(argv)

    code = ripsbars(
        ["dice", "--out", args.out, "--tie-convention", args.tie_convention]
    )
    if code != 0:
        return code

    barcodes = []
    for name in DISTANCES:
        persist = [
            "persist",
            "--input",
            f"{args.out}/dist_{name}.csv",
            "--out",
            args.out,
        ]
        if args.svg:
            persist.append("--svg")
        code = ripsbars(persist)
        if code != 0:
            return code
        label = name.replace("_", "-")
        barcodes.append(f"{args.out}/barcode_{label}.csv")

    return ripsbars(["stats", *barcodes, "--out", args.out])


if __name__ == "__main__":
    sys.exit(main())
