"""Trace of the three-stage adiabatic cat-preparation protocol.

Usage: python3 scripts/prepare_protocol.py [out_dir]
"""

import pathlib
import sys

from ringcat.cli import main

out_dir = sys.argv[1] if len(sys.argv) > 1 else "out"

if __name__ == "__main__":
    pathlib.Path(out_dir).mkdir(parents=True, exist_ok=True)
    sys.exit(
        main(
            [
                "ramp",
                "--atoms", "3",
                "--target-j-over-u", "2.0",
                "--stage-durations", "50,50,50",
                "--out", f"{out_dir}/protocol_n3.csv",
            ]
        )
    )
