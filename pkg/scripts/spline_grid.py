"""Tabulate a spline T_X on a grid as CSV (empty cells lie on walls).

    python scripts/spline_grid.py "1,0;0,1;1,1" --box 0,3,0,3 --steps 6
"""
import argparse
import csv
import sys
from fractions import Fraction

from infdex.errors import OnWallError
from infdex.rational import parse_point
from infdex.spline import WeightList, build_spline, eval_spline_form


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("weights", help='weight vectors separated by ";"')
    ap.add_argument("--box", default=None, help="lo,hi per coordinate")
    ap.add_argument("--steps", type=int, default=10)
    args = ap.parse_args()
    X = WeightList([parse_point(w) for w in args.weights.split(";")])
    S = build_spline(X)
    n = X.dim
    if n > 2:
        sys.exit("only dimensions 1 and 2 are tabulated")
    box = parse_point(args.box) if args.box else (Fraction(-1), Fraction(4)) * n
    axes = [[box[2 * i] + (box[2 * i + 1] - box[2 * i]) * Fraction(k, args.steps) for k in range(args.steps + 1)]
            for i in range(n)]
    pts = [(x,) for x in axes[0]] if n == 1 else [(x, y) for x in axes[0] for y in axes[1]]
    out = csv.writer(sys.stdout)
    out.writerow([f"x{i}" for i in range(n)] + ["value"])
    for p in pts:
        try:
            v = eval_spline_form(S, p)
        except OnWallError:
            v = ""
        out.writerow([str(x) for x in p] + [str(v)])


if __name__ == "__main__":
    main()
