"""Command-line front end.

Exit codes: 0 success, 2 rejected input (bad file, parse error, invalid
polyline), 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import traceback
from pathlib import Path

import numpy as np

from polycross.bootstrap import bootstrap_ensemble
from polycross.geometry import Polyline, PolylineError
from polycross.io import (
    Dataset,
    ParseError,
    RunReport,
    add_noise,
    gen_signal,
    parse_csv,
    read_csv,
    render_svg,
    write_csv,
    write_report,
)
from polycross.oracle import TooLargeError, bruteforce_optimal
from polycross.solver import SolverConfig, simplify

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT = 0, 1, 2


class InputRejected(Exception):
    pass


def _load(path: str) -> Dataset:
    if path == "-":
        return parse_csv(sys.stdin.read(), "<stdin>")
    return read_csv(path)


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_simplify(args) -> int:
    d = _load(args.input)
    try:
        cfg = SolverConfig(max_span=args.max_span, mode=args.mode)
    except ValueError as e:
        raise InputRejected(str(e)) from None
    t0 = time.perf_counter()
    P = Polyline.from_points(d.xy, mode=args.mode)
    Q = simplify(P, cfg)
    elapsed = time.perf_counter() - t0
    report = RunReport(
        n=len(d), kind=P.kind.value, indices=list(Q.indices), chi=Q.chi, size=Q.size,
        end_label=Q.end_label, mode=args.mode, max_span=args.max_span, seconds=round(elapsed, 6),
        input_indices=P.raw_indices(Q.indices), points=P.xy[list(Q.indices)].tolist(),
    )
    if args.json:
        sys.stdout.write(write_report(report, "json"))
    elif args.csv:
        sys.stdout.write(write_report(report, "csv"))
    else:
        print(f"n={len(d)} kind={P.kind.value} size={Q.size} chi={Q.chi}")
        print("indices:", " ".join(map(str, report.input_indices)))
    if args.svg:
        Path(args.svg).write_text(render_svg(P.raw, P.xy[list(Q.indices)], title="simplification"))
    return EXIT_OK


def cmd_bootstrap(args) -> int:
    d = _load(args.input)
    try:
        lo, hi = (float(v) for v in args.percentiles.split(","))
    except ValueError:
        raise InputRejected(f"--percentiles needs two numbers like 5,95, got {args.percentiles!r}") from None
    if not 0 < lo <= hi <= 100:
        raise InputRejected(f"--percentiles must satisfy 0 < low <= high <= 100, got {args.percentiles!r}")
    if args.iterations < 1:
        raise InputRejected("--iterations must be at least 1")
    P = Polyline.from_points(d.xy, mode="monotone")
    s = bootstrap_ensemble(P, args.iterations, args.seed, (lo, hi), workers=args.workers)
    if args.json:
        sys.stdout.write(json.dumps(s.to_dict(), indent=2, sort_keys=True) + "\n")
    else:
        print(f"n={len(d)} iterations={s.iterations} seed={s.seed} base size={s.base.size} chi={s.base.chi}")
        print("x,median,low,high")
        for row in zip(s.x.tolist(), s.median_curve.tolist(), s.low_curve.tolist(), s.high_curve.tolist()):
            print(",".join(map(repr, row)))
    if args.svg:
        Q = P.xy[list(s.base.indices)]
        env = (s.x, s.median_curve, s.low_curve, s.high_curve)
        Path(args.svg).write_text(render_svg(P.raw, Q, env, title="bootstrap"))
    return EXIT_OK


def cmd_gen(args) -> int:
    d = gen_signal(args.n)
    if args.noise != "none":
        d = add_noise(d, args.noise, args.seed)
    _emit(write_csv(d), args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    d = _load(args.input)
    P = Polyline.from_points(d.xy)
    try:
        chi, k, w = bruteforce_optimal(P, cap=args.cap)
    except TooLargeError as e:
        raise InputRejected(str(e)) from None
    out = {"chi": chi, "size": k, "indices": P.raw_indices(w.indices), "merged_indices": list(w.indices)}
    sys.stdout.write(json.dumps(out, sort_keys=True) + "\n")
    return EXIT_OK


def _bench_instance(mode: str, n: int, rng) -> np.ndarray:
    if mode == "monotone":
        x = np.linspace(-10.0, 10.0, n)
        return np.column_stack([x, x * x + 10.0 * np.sin(x) + rng.standard_normal(n)])
    # points sorted by angle around the origin give a simple, non-monotone path
    ang = np.sort(rng.uniform(0.0, 2.0 * np.pi * 0.99, n))
    r = rng.uniform(1.0, 10.0, n)
    return np.column_stack([r * np.cos(ang), r * np.sin(ang)])


def cmd_bench(args) -> int:
    rng = np.random.default_rng(args.seed)
    sizes = [int(v) for v in args.sizes.split(",")]
    print(f"{'n':>7} {'seconds':>9} {'ratio':>7}")
    prev = None
    for n in sizes:
        P = Polyline.from_points(_bench_instance(args.mode, n, rng), mode=args.mode)
        t0 = time.perf_counter()
        simplify(P, SolverConfig(mode=args.mode))
        dt = time.perf_counter() - t0
        ratio = f"{dt / prev:7.2f}" if prev else f"{'':>7}"
        print(f"{n:>7} {dt:9.3f} {ratio}")
        prev = dt
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polycross", description="Crossing-maximal polyline simplification.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simplify", help="simplify a polyline read from CSV")
    s.add_argument("--input", default="-", help="CSV path, or - for stdin")
    s.add_argument("--mode", choices=("auto", "monotone", "simple"), default="auto")
    s.add_argument("--max-span", type=int, default=None, metavar="M")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="print a JSON report")
    fmt.add_argument("--csv", action="store_true", help="print the kept vertices as CSV")
    s.add_argument("--svg", metavar="PATH")
    s.set_defaults(func=cmd_simplify)

    b = sub.add_parser("bootstrap", help="residual bootstrap envelope (monotone data)")
    b.add_argument("--input", default="-")
    b.add_argument("--iterations", type=int, default=90)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--percentiles", default="5,95")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--json", action="store_true")
    b.add_argument("--svg", metavar="PATH")
    b.set_defaults(func=cmd_bootstrap)

    g = sub.add_parser("gen", help="write a synthetic signal as CSV")
    g.add_argument("--signal", choices=("parabola-sine",), default="parabola-sine")
    g.add_argument("--n", type=int, default=101)
    g.add_argument("--noise", choices=("none", "normal", "heavy"), default="none")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output", "-o", metavar="PATH")
    g.set_defaults(func=cmd_gen)

    o = sub.add_parser("oracle", help="exhaustive optimum for small inputs")
    o.add_argument("--input", default="-")
    o.add_argument("--cap", type=int, default=14)
    o.set_defaults(func=cmd_oracle)

    m = sub.add_parser("bench", help="doubling-size timing table")
    m.add_argument("--mode", choices=("monotone", "simple"), default="monotone")
    m.add_argument("--sizes", default="250,500,1000,2000")
    m.add_argument("--seed", type=int, default=0)
    m.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PolylineError, ParseError, FileNotFoundError, IsADirectoryError, InputRejected) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
