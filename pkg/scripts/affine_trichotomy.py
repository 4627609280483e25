"""Classify B(lam) x B(-mu) for affine sl2 over a grid of level-0/1 weights.

    python scripts/affine_trichotomy.py --depth 6
"""

import argparse
import itertools

from qcoord.cartan import preset
from qcoord.filtration import affine_classify


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--max-coeff", type=int, default=1)
    args = p.parse_args()
    rd = preset("A1~")
    grid = [rd.weight(list(h)) for h in itertools.product(range(args.max_coeff + 1), repeat=2)]
    print("lambda,mu,level,case,witnesses,consistent")
    for lam, mu in itertools.product(grid, grid):
        v = affine_classify(rd, lam, mu, args.depth)
        print(f"\"{lam}\",\"{mu}\",{v.level},{v.case},{len(v.witnesses)},{v.consistent}")


if __name__ == "__main__":
    main()
