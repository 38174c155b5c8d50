"""Print finite-s pairings of the catalog models at s0, 2 s0, 4 s0 and s0/8.

    python scripts/stabilization_table.py --samples 50000 --seed 1
"""
import argparse
from fractions import Fraction

from infdex.models import CutoffSpec, Point, finite_s_pairing, stabilization_threshold
from infdex.testfn import PolyBump, PolyGaussian, QuadratureConfig
from infdex.verify import catalog_models


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cutoff", type=float, default=1.0)
    args = ap.parse_args()
    cfg = QuadratureConfig(samples=args.samples, seed=args.seed)
    cutoff = CutoffSpec(args.cutoff)
    print(f"{'model':<24}{'s0':>8}  {'factor':>6}  {'re':>14}{'im':>14}{'error':>11}")
    for label, model in catalog_models():
        if isinstance(model, Point):
            f = PolyGaussian(1, (Fraction(2, 5),))
        else:
            f = PolyBump(1, center=(Fraction(1, 5),) * model.dim)
        s0 = stabilization_threshold(model, f, cutoff)
        for factor in (0.125, 1, 2, 4):
            est = finite_s_pairing(model, f, factor * s0, cutoff, cfg=cfg)
            z = complex(est.value)
            print(f"{label:<24}{s0:>8.3f}  {factor:>6g}  {z.real:>14.6g}{z.imag:>14.6g}{est.error:>11.2e}")


if __name__ == "__main__":
    main()
