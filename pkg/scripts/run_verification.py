#!/usr/bin/env python3
"""Run the full verification (claims + scalar checks), emit certificates,
and write a machine-readable summary.

Usage:
    python scripts/run_verification.py [OUT_DIR]
"""

import sys

from cubeiso.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "certificates"
    code = main([
        "verify-all",
        "--emit", out,
        "--summary-json", f"{out}/summary.json",
    ])
    sys.exit(code)
