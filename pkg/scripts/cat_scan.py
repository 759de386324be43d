"""Ground-state cat fidelity versus J/U at the crossing phase.

Usage: python3 scripts/cat_scan.py [out_dir] [atoms]
"""

import pathlib
import sys

from ringcat.cli import main

out_dir = sys.argv[1] if len(sys.argv) > 1 else "out"
atoms = sys.argv[2] if len(sys.argv) > 2 else "6"

if __name__ == "__main__":
    pathlib.Path(out_dir).mkdir(parents=True, exist_ok=True)
    sys.exit(
        main(
            [
                "cat-scan",
                "--atoms", atoms,
                "--j-over-u-grid", "0.01:100:25:log",
                "--phi", "pi/3",
                "--out", f"{out_dir}/cat_fidelity_n{atoms}.csv",
            ]
        )
    )
