"""Structure constants of the sl2 coordinate ring on a box of canonical labels.

    python scripts/structure_table.py --max-power 2 --max-weight 2 > table.csv
"""

import argparse
import csv
import itertools
import sys

from qcoord.sl2 import canonical_labels, structure_constants


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-power", type=int, default=2)
    p.add_argument("--max-weight", type=int, default=2)
    p.add_argument("--coproduct", choices=["lower", "upper"], default="lower")
    args = p.parse_args()
    labels = canonical_labels(args.max_power, args.max_weight)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["b", "c", "a", "coefficient", "membership_lambda", "membership_mu"])
    rows = 0
    for b, c in itertools.product(labels, labels):
        entry = structure_constants(b, c, convention=args.coproduct)
        (l1, m1), (l2, m2) = entry.membership
        for a, poly in sorted(entry.entries.items()):
            w.writerow([b, c, a, poly, l1 + l2, m1 + m2])
            rows += 1
    print(f"# {len(labels) ** 2} pairs, {rows} nonzero coefficients", file=sys.stderr)


if __name__ == "__main__":
    main()
