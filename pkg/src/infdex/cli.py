"""Command-line front end.

    infdex spline build|eval|laplace|grid
    infdex index compute|pair
    infdex dist tensor|convolve|push|induce
    infdex verify laplace|oracle|stabilize|cutoff|restriction|induction|all

JSON goes to stdout (or --out), diagnostics to stderr.  Exit 2 for
malformed input, 3 for a violated mathematical precondition, 1 for a
failed verification.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import rational as rq
from .distributions import (Distribution, convolve, eval_density_exact, induce, infdex_induced, pair,
                            pushforward, spline_distribution, tensor)
from .errors import InputError, OnWallError, PreconditionError
from .models import (CutoffSpec, expected_infdex, finite_s_pairing, model_from_json, model_poly,
                     stabilization_threshold)
from .spline import (SplineForm, WeightList, build_spline, eval_spline_form,
                     laplace_closed_form, laplace_transform)
from .testfn import QuadratureConfig, make_testfn
from .verify import DEFAULT_TOL, run_suite


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e.msg} at line {e.lineno}") from e


def _one_input(args, what: str = "input file"):
    if not args.inputs or len(args.inputs) != 1:
        raise InputError(f"expected exactly one --in {what}")
    return _load(args.inputs[0])


def _parse_map(text: str) -> list:
    """``"1,1;0,1"`` -> rows [[1, 1], [0, 1]]."""
    if not text:
        raise InputError("empty matrix")
    rows = [rq.parse_point(r) for r in text.split(";")]
    if len({len(r) for r in rows}) != 1:
        raise InputError("matrix rows have different lengths")
    return rows


def _spline_of(data) -> SplineForm:
    if isinstance(data, dict) and "chambers" in data:
        return SplineForm.from_json(data)
    return build_spline(WeightList.from_json(data))


def _distribution_of(data) -> Distribution:
    if isinstance(data, dict) and "terms" in data:
        return Distribution.from_json(data)
    if isinstance(data, dict) and "model" in data:
        model = model_from_json(data)
        return expected_infdex(model, model_poly(data, model))
    return spline_distribution(WeightList.from_json(data))


def _complex_json(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _emit(args, payload) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cfg(args) -> QuadratureConfig:
    if args.samples < 32:
        raise InputError("--samples must be at least 32")
    return QuadratureConfig(samples=args.samples, seed=args.seed)


# ---------------------------------------------------------------------------
# spline

def cmd_spline(args) -> int:
    if args.action == "build":
        X = WeightList.from_json(_one_input(args, "weight list"))
        _emit(args, build_spline(X, seed=args.seed).to_json())
        return 0
    data = _one_input(args)
    if args.action == "eval":
        S = _spline_of(data)
        pt = _point(args, S.weights.dim)
        value = eval_spline_form(S, pt)
        _emit(args, {"point": [rq.fraction_to_json(x) for x in pt], "value": rq.fraction_to_json(value)})
        return 0
    if args.action == "laplace":
        S = _spline_of(data)
        z = _point(args, S.weights.dim)
        value = laplace_transform(S, z)
        closed = laplace_closed_form(S.weights, z)
        _emit(args, {"z": [rq.fraction_to_json(x) for x in z], "value": rq.fraction_to_json(value),
                     "closedForm": rq.fraction_to_json(closed), "agrees": value == closed})
        return 0 if value == closed else 1
    if args.action == "grid":
        S = _spline_of(data)
        _grid(args, S)
        return 0
    raise InputError(f"unknown spline action {args.action}")


def _point(args, dim: int) -> rq.Vec:
    if not args.point:
        raise InputError("--point is required")
    pt = rq.parse_point(args.point)
    if len(pt) != dim:
        raise InputError(f"--point has {len(pt)} coordinates, expected {dim}")
    return pt


def _grid(args, S: SplineForm) -> None:
    n = S.weights.dim
    if n > 2:
        raise InputError("grid export supports dimensions 1 and 2")
    box = rq.parse_point(args.box) if args.box else (Fraction(-1), Fraction(5)) * n
    if len(box) != 2 * n:
        raise InputError(f"--box needs {2 * n} numbers: lo,hi per coordinate")
    steps = args.steps
    if steps < 1:
        raise InputError("--steps must be positive")
    axes = [[box[2 * i] + (box[2 * i + 1] - box[2 * i]) * Fraction(k, steps) for k in range(steps + 1)]
            for i in range(n)]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"x{i}" for i in range(n)] + ["value"])
    grid = [(x,) for x in axes[0]] if n == 1 else [(x, y) for x in axes[0] for y in axes[1]]
    for pt in grid:
        try:
            val = str(float(eval_spline_form(S, pt)))
        except OnWallError:
            val = ""
        w.writerow([str(float(x)) for x in pt] + [val])
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


# ---------------------------------------------------------------------------
# index

def cmd_index(args) -> int:
    if not args.model:
        raise InputError("--model is required")
    data = _load(args.model)
    model = model_from_json(data)
    P = model_poly(data, model)
    D = expected_infdex(model, P)
    if args.action == "compute":
        _emit(args, D.to_json())
        return 0
    if args.action == "pair":
        if not args.testfn:
            raise InputError("--testfn is required")
        f = make_testfn(_load(args.testfn))
        cfg = _cfg(args)
        cutoff = CutoffSpec(args.cutoff)
        s = args.s if args.s is not None else 2 * stabilization_threshold(model, f, cutoff)
        closed = pair(D, f, cfg)
        oracle = finite_s_pairing(model, f, s, cutoff, P, cfg)
        diff = abs(closed.value - oracle.value)
        ok = diff <= 3 * (closed.error + oracle.error) + 1e-12 * abs(closed.value)
        _emit(args, {"prefactor": D.prefactor.to_json(),
                     "closedForm": {**_complex_json(closed.value), "error": closed.error},
                     "finiteS": {**_complex_json(oracle.value), "error": oracle.error, "s": s,
                                 "cutoffRadius": cutoff.radius},
                     "agrees": ok})
        return 0 if ok else 1
    raise InputError(f"unknown index action {args.action}")


# ---------------------------------------------------------------------------
# dist

def cmd_dist(args) -> int:
    loaded = [_distribution_of(_load(p)) for p in (args.inputs or [])]
    if args.action in ("tensor", "convolve"):
        if len(loaded) != 2:
            raise InputError(f"{args.action} needs two --in files")
        op = tensor if args.action == "tensor" else convolve
        out = op(*loaded)
    elif args.action == "push":
        if len(loaded) != 1 or not args.map:
            raise InputError("push needs one --in file and --map")
        out = pushforward(loaded[0], _parse_map(args.map))
    elif args.action == "induce":
        if len(loaded) != 1 or not args.map or not args.splitting:
            raise InputError("induce needs one --in file, --map and --splitting")
        fn = infdex_induced if args.with_prefactor else induce
        out = fn(loaded[0], _parse_map(args.map), _parse_map(args.splitting))
    else:
        raise InputError(f"unknown dist action {args.action}")
    payload = out.to_json()
    if args.point:
        value = eval_density_exact(out, _point(args, out.dim))
        payload["density"] = {"point": args.point, "exact": value.to_json(), **_complex_json(complex(value))}
    _emit(args, payload)
    return 0


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    results = run_suite(args.action, seed=args.seed, samples=args.samples, tol=args.tol)
    for r in results:
        print(r.line(), file=sys.stderr)
    _emit(args, {"suite": args.action, "seed": args.seed, "samples": args.samples, "tol": args.tol,
                 "passed": all(r.passed for r in results), "checks": [r.to_json() for r in results]})
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="inputs", action="append", metavar="FILE", help="input JSON (repeatable)")
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    common.add_argument("--point", metavar="P", help='rational point "p/q,..."')
    common.add_argument("--testfn", metavar="FILE", help="test function JSON")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100_000)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)

    parser = argparse.ArgumentParser(prog="infdex", description="Infinitesimal index calculus for torus actions.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spline", parents=[common], help="multivariate splines")
    sp.add_argument("action", choices=["build", "eval", "laplace", "grid"])
    sp.add_argument("--box", help='grid box "lo0,hi0[,lo1,hi1]"')
    sp.add_argument("--steps", type=int, default=20)
    sp.set_defaults(func=cmd_spline)

    ip = sub.add_parser("index", parents=[common], help="catalog model indices")
    ip.add_argument("action", choices=["compute", "pair"])
    ip.add_argument("--model", metavar="FILE")
    ip.add_argument("--s", type=float, help="finite s for the oracle (default: twice the stabilization threshold)")
    ip.add_argument("--cutoff", type=float, default=1.0, help="cutoff radius R0")
    ip.set_defaults(func=cmd_index)

    dp = sub.add_parser("dist", parents=[common], help="distribution calculus")
    dp.add_argument("action", choices=["tensor", "convolve", "push", "induce"])
    dp.add_argument("--map", help='linear map rows "a,b;c,d"')
    dp.add_argument("--splitting", help="right inverse of --map, rows")
    dp.add_argument("--with-prefactor", action="store_true", help="induce: include i^(n-k)")
    dp.set_defaults(func=cmd_dist)

    vp = sub.add_parser("verify", parents=[common], help="verification suites")
    vp.add_argument("action", choices=["laplace", "oracle", "stabilize", "cutoff", "restriction", "induction", "all"])
    vp.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (InputError, KeyError, TypeError) as e:
        print(f"error: malformed input: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
