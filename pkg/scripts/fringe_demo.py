#!/usr/bin/env python3
"""Interference fringes of the named presets as CSV (vartheta,intensity)."""

import argparse
import math
import os

from emzi.sweeps import fringe_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", default="fringes")
    ap.add_argument("--points", type=int, default=64)
    ap.add_argument("--presets", nargs="+",
                    default=["ghz_fock", "ghz_superposed", "w_superposed",
                             "separable_fock"])
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)

    grid = [2 * math.pi * k / args.points for k in range(args.points)]
    for name in args.presets:
        rows = fringe_scan(name, grid)
        path = os.path.join(args.outdir, f"{name}.csv")
        with open(path, "w") as fh:
            fh.write("vartheta,intensity\n")
            for v, i in rows:
                fh.write(f"{v:.12g},{i:.12g}\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
