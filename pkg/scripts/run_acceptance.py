#!/usr/bin/env python3
"""Run the acceptance suite on its own and keep the per-criterion lines.

Thin wrapper over pytest; exists so `python3 scripts/run_acceptance.py`
is the one-command gate (exit 0 iff every criterion passed within its
time budget).  Extra arguments are passed through to pytest.
"""

import pathlib
import subprocess
import sys

HERE = pathlib.Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    cmd = [
        sys.executable,
        "-m",
        "pytest",
        str(HERE / "tests" / "test_acceptance.py"),
        "-v",
        *sys.argv[1:],
    ]
    sys.exit(subprocess.call(cmd, cwd=HERE))
