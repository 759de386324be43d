"""Low-lying levels versus twist phase for the N=3 ring (anti-crossing scan).

Usage: python3 scripts/levels_scan.py [out_dir]
"""

import sys

from ringcat.cli import main

out_dir = sys.argv[1] if len(sys.argv) > 1 else "out"

if __name__ == "__main__":
    import pathlib

    pathlib.Path(out_dir).mkdir(parents=True, exist_ok=True)
    sys.exit(
        main(
            [
                "spectrum-scan",
                "--atoms", "3",
                "--u-over-j", "0.5",
                "--levels", "4",
                "--phi-grid", "0:2pi/3:241",
                "--out", f"{out_dir}/levels_n3.csv",
            ]
        )
    )
