"""Tally greedy / thrifty / c_r = 2^d regions over all connected graphs on n vertices."""

import argparse
from collections import Counter

from pebbling.graph import enumerate_graphs
from pebbling.parameters import Analysis, full_report
from pebbling.reconstruct import venn_region


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("n", type=int, nargs="+")
    args = ap.parse_args()
    for n in args.n:
        tally: Counter[str] = Counter()
        c_r_values: Counter[int] = Counter()
        for g in enumerate_graphs(n):
            a = Analysis(g)
            full_report(g, a)  # asserts every proven relation
            tally[venn_region(a)] += 1
            c_r_values[a.critical[0]] += 1
        print(f"n = {n}: {sum(tally.values())} graphs")
        for region, count in sorted(tally.items()):
            print(f"  {region:<40} {count}")
        print(f"  c_r values: {dict(sorted(c_r_values.items()))}")


if __name__ == "__main__":
    main()
