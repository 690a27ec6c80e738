"""Command-line entry point: ``anchorpack generate|pack|analyze|bound|ratio-experiment|render``.

Exit codes: 0 success, 1 lemma-check failure, 2 usage or parse error,
3 oracle size guard.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from anchorpack.analysis import analyze_instance
from anchorpack.bounds import (
    DomainError,
    BoundParams,
    lower_bound_integral,
    lower_bound_simple,
    optimize_bound,
)
from anchorpack.geometry import Instance, InstanceError
from anchorpack.instances import (
    FormatError,
    ShapeError,
    constructed_solution,
    gen_adversarial,
    gen_diagonal,
    gen_nested_staircases,
    gen_random,
    hyperbolic_staircase,
    parse_instance,
    parse_packing,
    serialize_instance,
    serialize_packing,
)
from anchorpack.packing import (
    OracleTooLarge,
    brute_force_optimal,
    greedy_packing,
    tile_packing,
    validate_packing,
)
from anchorpack.render import LAYERS, RenderOptions, render_svg

EXIT_OK, EXIT_LEMMA, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

# Parameters of the simple bound, with lambda < alpha.
DEFAULT_BETA, DEFAULT_LAMBDA, DEFAULT_ALPHA = 11.31, 0.4456, 0.7696


class UsageError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get("ANCHORPACK_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"ANCHORPACK_SEED must be an integer, got {raw!r}") from None


def _read_instance(path: str) -> Instance:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return parse_instance(text)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _params(args) -> BoundParams:
    return BoundParams(args.beta, args.lam, args.alpha)


def _pack(inst: Instance, algo: str):
    if algo == "greedy":
        return greedy_packing(inst)
    if algo == "tilepack":
        return tile_packing(inst)
    return brute_force_optimal(inst)[0]


# --- commands ---------------------------------------------------------------

def cmd_generate(args) -> int:
    kind = args.kind
    if kind == "adversarial":
        inst = gen_adversarial(args.n, args.eps)
    elif kind == "diagonal":
        inst = gen_diagonal(args.n)
    elif kind == "random":
        seed = default_seed() if args.seed is None else args.seed
        inst = gen_random(args.n, seed, args.dist)
    elif kind == "staircase":
        inst = hyperbolic_staircase(args.m, args.ratio)
    else:
        inst = gen_nested_staircases(args.depth, args.m, args.ratio, mirrored=args.mirrored)
    _write(args.out, serialize_instance(inst))
    if args.out not in (None, "-"):
        print(inst.n)
    return EXIT_OK


def cmd_pack(args) -> int:
    inst = _read_instance(args.input)
    pk = _pack(inst, args.algo)
    if args.out is not None:
        _write(args.out, serialize_packing(pk))
    print(f"{pk.area:.6f}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    params = _params(args)
    inst = _read_instance(args.input)
    report = analyze_instance(inst, params)
    lines = report.lines() if args.verbose else [r.line() for r in report.failures()]
    for ln in lines:
        print(ln)
    n_fail = len(report.failures())
    print(f"beta_tiles={len(report.beta_tiles)} checks={len(report.results)} failures={n_fail}")
    return EXIT_OK if report.passed else EXIT_LEMMA


def cmd_bound(args) -> int:
    if args.optimize:
        res = optimize_bound(args.mode)
        p = res.params
        print(f"{res.value:.6f}")
        print(f"beta={p.beta:.6f} lambda={p.lam:.6f} alpha={p.alpha:.6f}")
        return EXIT_OK
    if args.mode == "simple":
        res = lower_bound_simple(_params(args))
    else:
        beta0 = args.beta if args.beta0 is None else args.beta0
        res = lower_bound_integral(beta0, args.lam, args.alpha)
    print(f"{res.value:.6f}")
    return EXIT_OK


@dataclass(frozen=True)
class RatioRow:
    n: int
    eps: float
    greedy_area: float
    constructed_area: float
    residual: float

    @property
    def ratio(self) -> float:
        return self.greedy_area / self.constructed_area


def ratio_experiment(n: int, eps: float, validate: bool = True) -> RatioRow:
    """Greedy against the constructed packing on S_{n,eps}."""
    inst = gen_adversarial(n, eps)
    greedy = greedy_packing(inst)
    built = constructed_solution(inst)
    if validate:
        for name, pk in (("greedy", greedy), ("constructed", built)):
            bad = validate_packing(inst, pk)
            if bad:
                raise AssertionError(f"{name} packing invalid: {bad[:3]}")
    return RatioRow(n, eps, greedy.area, built.area, (1.0 - 2.0 * eps) ** (2 * n))


def cmd_ratio_experiment(args) -> int:
    t0 = time.perf_counter()
    row = ratio_experiment(args.n, args.eps)
    print("n eps greedy_area constructed_area ratio residual")
    print(
        f"{row.n} {row.eps:g} {row.greedy_area:.6f} {row.constructed_area:.6f} "
        f"{row.ratio:.6f} {row.residual:.6f}"
    )
    if args.timing:
        print(f"elapsed {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return EXIT_OK


def cmd_render(args) -> int:
    inst = _read_instance(args.input)
    layers = frozenset(args.layers.split(",")) if args.layers else None
    opts = RenderOptions(width_px=args.width, out_path=args.out, **({"layers": layers} if layers else {}))
    if args.packing is not None:
        try:
            pk = parse_packing(Path(args.packing).read_text())
        except OSError as e:
            raise UsageError(f"cannot read {args.packing}: {e.strerror}") from None
    else:
        pk = _pack(inst, args.algo)
    report = None
    if opts.layers & {"tips", "parallelograms", "triangles"}:
        report = analyze_instance(inst, _params(args))
    svg = render_svg(inst, pk, opts, report=report, lam_alpha=(args.lam, args.alpha))
    if args.out is None:
        sys.stdout.write(svg)
    return EXIT_OK


# --- parser -----------------------------------------------------------------

def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--beta", type=float, default=DEFAULT_BETA)
    p.add_argument("--lambda", dest="lam", type=float, default=DEFAULT_LAMBDA)
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="anchorpack", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write an instance file")
    g.add_argument("--kind", choices=["adversarial", "diagonal", "random", "staircase", "nested"], required=True)
    g.add_argument("--n", type=int, default=1)
    g.add_argument("--eps", type=float, default=0.1)
    g.add_argument("--seed", type=int, default=None, help="defaults to $ANCHORPACK_SEED or 0")
    g.add_argument("--dist", choices=["uniform", "clustered"], default="uniform")
    g.add_argument("--m", type=int, default=13, help="staircase steps")
    g.add_argument("--ratio", type=float, default=10.0, help="staircase step ratio")
    g.add_argument("--depth", type=int, default=3, help="nesting depth")
    g.add_argument("--mirrored", action="store_true")
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_generate)

    p = sub.add_parser("pack", help="pack an instance and print the covered area")
    p.add_argument("input")
    p.add_argument("--algo", choices=["greedy", "tilepack", "optimal"], default="greedy")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_pack)

    a = sub.add_parser("analyze", help="run the beta-tile checks on the tiling")
    a.add_argument("input")
    _add_params(a)
    a.add_argument("-v", "--verbose", action="store_true", help="print passing checks too")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bound", help="evaluate or optimize the lower bound")
    b.add_argument("--mode", choices=["simple", "integral"], default="integral")
    _add_params(b)
    b.add_argument("--beta0", type=float, default=None)
    b.add_argument("--optimize", action="store_true")
    b.set_defaults(func=cmd_bound)

    r = sub.add_parser("ratio-experiment", help="greedy against the constructed packing on S_{n,eps}")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--eps", type=float, required=True)
    r.add_argument("--timing", action="store_true")
    r.set_defaults(func=cmd_ratio_experiment)

    v = sub.add_parser("render", help="draw an instance as SVG")
    v.add_argument("input")
    v.add_argument("--packing", default=None, help="packing file; otherwise computed with --algo")
    v.add_argument("--algo", choices=["greedy", "tilepack", "optimal"], default="tilepack")
    v.add_argument("--layers", default=None, help=f"comma-separated subset of {','.join(LAYERS)}")
    v.add_argument("--width", type=int, default=600)
    _add_params(v)
    v.add_argument("--out", default=None)
    v.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except OracleTooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, FormatError, ShapeError, DomainError, InstanceError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
