"""Rebuild G1-G4 and write each graph with its constraint report."""

import argparse
import sys
from pathlib import Path

from pebbling.cli import main as cli_main
from pebbling.reconstruct import NAMES


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=list(NAMES))
    ap.add_argument("--out", default="reconstructed")
    ap.add_argument("--cache", default=None)
    args = ap.parse_args()
    worst = 0
    for name in args.names:
        argv = ["reconstruct", name, "--out", str(Path(args.out))]
        if args.cache:
            argv += ["--cache", args.cache]
        worst = max(worst, cli_main(argv))
    return worst


if __name__ == "__main__":
    sys.exit(main())
