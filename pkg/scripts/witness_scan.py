"""Separability-witness reports across twist phases.

Usage: python3 scripts/witness_scan.py [out_dir]
"""

import pathlib
import sys

from ringcat.cli import main

out_dir = sys.argv[1] if len(sys.argv) > 1 else "out"

if __name__ == "__main__":
    pathlib.Path(out_dir).mkdir(parents=True, exist_ok=True)
    rc = 0
    for tag, phi in (("zero", "0"), ("crossing", "pi/3")):
        rc |= main(
            [
                "witness",
                "--atoms", "3",
                "--u-over-j", "0.5",
                "--phi", phi,
                "--restarts", "32",
                "--seed", "7",
                "--out", f"{out_dir}/witness_n3_{tag}.json",
            ]
        )
    sys.exit(rc)
