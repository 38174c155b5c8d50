"""Infinitesimal index of torus actions: exact splines, distribution calculus, oracles."""
from .distributions import (Distribution, ScalarPrefactor, convolve, delta0, eval_density, fourier_of_polynomial,
                            induce, infdex_induced, lebesgue, pair, pushforward, spline_distribution, tensor)
from .errors import InputError, PreconditionError
from .geometry import enumerate_chambers, enumerate_walls, interior_point, pointedness_check
from .models import (CircleCotangent, CotangentTorus, CutoffSpec, DiagonalModel, LinearTorus, Point, PlaneRotation,
                     ProductModel, brute_force_spline_pairing, expected_infdex, finite_s_pairing)
from .poly import MultiPoly, poly_interpolate
from .spline import WeightList, build_spline, eval_point_recursive, eval_spline_form, laplace_transform
from .testfn import PolyBump, PolyGaussian, QuadratureConfig, make_testfn

__version__ = "0.1.0"

__all__ = [
    "Distribution",
    "ScalarPrefactor",
    "convolve",
    "delta0",
    "eval_density",
    "fourier_of_polynomial",
    "induce",
    "infdex_induced",
    "lebesgue",
    "pair",
    "pushforward",
    "spline_distribution",
    "tensor",
    "InputError",
    "PreconditionError",
    "enumerate_chambers",
    "enumerate_walls",
    "interior_point",
    "pointedness_check",
    "CircleCotangent",
    "CotangentTorus",
    "CutoffSpec",
    "DiagonalModel",
    "LinearTorus",
    "Point",
    "PlaneRotation",
    "ProductModel",
    "brute_force_spline_pairing",
    "expected_infdex",
    "finite_s_pairing",
    "MultiPoly",
    "poly_interpolate",
    "WeightList",
    "build_spline",
    "eval_point_recursive",
    "eval_spline_form",
    "laplace_transform",
    "PolyBump",
    "PolyGaussian",
    "QuadratureConfig",
    "make_testfn",
]
