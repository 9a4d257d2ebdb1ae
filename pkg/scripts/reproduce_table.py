"""Print (p, c_g, c_r, 2^d, n, c_u, o) for a list of named graphs."""

import argparse

from pebbling.graph import parse_family
from pebbling.parameters import VALUE_KEYS, full_report

DEFAULT = ["complete:5", "complete_bipartite:2,3", "cycle:7"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("families", nargs="*", default=DEFAULT, help="e.g. cycle:7 fan:6 star:5")
    args = ap.parse_args()
    width = max(len(f) for f in args.families)
    print(f"{'graph':<{width}}  " + "  ".join(f"{k:>9}" for k in VALUE_KEYS) + "  greedy thrifty  w(G)")
    for fam in args.families:
        rep = full_report(parse_family(fam))
        cells = "  ".join(f"{v:>9}" for v in rep.row)
        print(f"{fam:<{width}}  {cells}  {rep.is_greedy!s:>6} {rep.is_thrifty!s:>7}  {rep.graph_weight}")


if __name__ == "__main__":
    main()
