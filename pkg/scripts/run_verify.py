#!/usr/bin/env python3
"""Run the seeded verification battery from the command line.

Thin wrapper over the library's `verify` subcommand, e.g.:

    python scripts/run_verify.py --suite all --n 5 --samples 25 --seed 1
"""

import sys

from grassmann.cli import main

if __name__ == "__main__":
    sys.exit(main(["verify"] + sys.argv[1:]))
