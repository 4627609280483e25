"""Stabilized multiplicity table for the cells of a finite root datum.

    python scripts/multiplicity_table.py --type A2 --cutoff 3
"""

import argparse
import sys

from qcoord.cartan import preset
from qcoord.cells import dominant_weights_upto, multiplicity_table, to_csv


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--type", default="A2")
    p.add_argument("--cutoff", type=int, default=2, help="largest sum of xi(h_i)")
    p.add_argument("--theta-steps", type=int, default=3)
    args = p.parse_args()
    rd = preset(args.type)
    rows = multiplicity_table(rd, dominant_weights_upto(rd, args.cutoff), args.theta_steps)
    sys.stdout.write(to_csv(rows, header=f"type={args.type} cutoff={args.cutoff}"))
    bad = [r for r in rows if r.count != r.oracle]
    print(f"# {len(rows)} cells, {len(bad)} mismatches with Freudenthal", file=sys.stderr)


if __name__ == "__main__":
    main()
