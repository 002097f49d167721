#!/usr/bin/env python3
"""Export the CSV series behind the three standard figures into a directory.

Usage:
    python scripts/export_plot_data.py [OUT_DIR]
"""

import os
import sys

from cubeiso.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "plot_data"
    os.makedirs(out, exist_ok=True)
    rc = 0
    for figure in ("bounds", "failure", "envelopes"):
        rc |= main(["plot-data", "--figure", figure, "--out", f"{out}/{figure}.csv"])
    sys.exit(rc)
