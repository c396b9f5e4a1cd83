"""Command-line front end: decomposition runs, the class-expression
evaluator, Gaussian binomials, and the verification corpus.

Exit codes: 0 success, 1 verification failure, 2 invalid arguments or parse
errors, 3 resource-bound refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .chowprod import GeometrySpec
from .expr import EvalError, Evaluator, ParseError, format_value, parse
from .gflin import PrimeField, is_prime
from .motives import decompose, poincare_grassmannian
from .schur import Box, RingSpec
from .verifycases import run_cases

RESOURCE_BOUND = 32  # largest p^n accepted without --force


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return max(1, args.threads)
    env = os.environ.get("MOTIVE_THREADS")
    if env and env.isdigit():
        return max(1, int(env))
    return 1


def _make_spec(p: int, n: int, m: int) -> GeometrySpec:
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if not 0 <= m < n:
        raise ValueError(f"need 0 <= m < n, got m={m}, n={n}")
    return GeometrySpec(p, n, m)


def cmd_decompose(args) -> int:
    try:
        spec = _make_spec(args.p, args.n, args.m)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.p**args.n > RESOURCE_BOUND and not args.force:
        print(
            f"error: p^n = {args.p ** args.n} exceeds the resource bound "
            f"{RESOURCE_BOUND}; pass --force to run anyway",
            file=sys.stderr,
        )
        return 3
    t0 = time.perf_counter()
    report = decompose(spec, k_max=args.kmax, threads=_threads(args))
    elapsed_ms = round((time.perf_counter() - t0) * 1000.0, 1)
    if args.json:
        payload = {
            "p": spec.p,
            "n": spec.n,
            "m": spec.m,
            "dim_x": spec.d,
            "dim_y": spec.dim_y,
            "shift_range": spec.shift_range,
            "multiplicities": report.multiplicities,
            "residual": list(report.residual.coeffs),
            "diagnostics": report.diagnostics,
            "elapsed_ms": elapsed_ms,
        }
        print(json.dumps(payload))
    else:
        print(
            f"p={spec.p} n={spec.n} m={spec.m} "
            f"dim_x={spec.d} dim_y={spec.dim_y} shift_range={spec.shift_range}"
        )
        print("multiplicities: " + " ".join(map(str, report.multiplicities)))
        print(f"residual: {report.residual}")
        print(f"residual rank: {report.residual_rank}")
        print(
            "diagnostics: "
            + " ".join(
                f"{k}={'true' if v else 'false'}"
                for k, v in report.diagnostics.items()
            )
        )
    return 0


def cmd_eval(args) -> int:
    try:
        if args.grassmann:
            k, n, p = args.grassmann
            if not is_prime(p):
                raise ValueError(f"p = {p} is not prime")
            if not 0 < k <= n:
                raise ValueError(f"need 0 < k <= n, got k={k}, n={n}")
            evaluator = Evaluator(ring=RingSpec(PrimeField(p), Box(k, n - k)))
        elif args.p is not None and args.n is not None and args.m is not None:
            evaluator = Evaluator(geometry=_make_spec(args.p, args.n, args.m))
        else:
            raise ValueError("provide either --grassmann K N P or --p/--n/--m")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        tree = parse(args.expression)
        value = evaluator.eval(tree)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (EvalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(format_value(value))
    return 0


def cmd_verify(args) -> int:
    try:
        results = run_cases(args.case if args.case else None)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    if args.json:
        payload = [
            {
                "id": r.id,
                "passed": r.passed,
                "elapsed_ms": round(r.elapsed_ms, 1),
                "detail": r.detail,
            }
            for r in results
        ]
        print(json.dumps(payload))
    else:
        width = max(len(r.id) for r in results)
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            line = f"{r.id:<{width}}  {status}  {r.elapsed_ms:9.1f} ms"
            if r.detail:
                line += f"  {r.detail}"
            print(line)
        total = sum(1 for r in results if r.passed)
        print(f"{total}/{len(results)} cases passed")
    return 0 if all(r.passed for r in results) else 1


def cmd_poincare(args) -> int:
    try:
        poly = poincare_grassmannian(args.k, args.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(poly)
    print("coefficients: " + " ".join(map(str, poly.coeffs)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motchow",
        description="Motivic decompositions of generalized Severi-Brauer "
        "varieties via rational Chow cycles mod p.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="compute a complete decomposition table")
    d.add_argument("--p", type=int, required=True, help="prime")
    d.add_argument("--n", type=int, required=True, help="degree exponent")
    d.add_argument("--m", type=int, required=True, help="ideal exponent")
    d.add_argument("--kmax", type=int, default=None,
                   help="largest shift computed directly (default: half range)")
    d.add_argument("--json", action="store_true", help="machine-readable output")
    d.add_argument("--force", action="store_true",
                   help="ignore the p^n resource bound")
    d.add_argument("--threads", type=int, default=None, help="worker-thread cap")
    d.set_defaults(func=cmd_decompose)

    e = sub.add_parser("eval", help="evaluate a class expression")
    e.add_argument("--p", type=int, help="prime (product-ring mode)")
    e.add_argument("--n", type=int, help="degree exponent (product-ring mode)")
    e.add_argument("--m", type=int, help="ideal exponent (product-ring mode)")
    e.add_argument("--grassmann", type=int, nargs=3, metavar=("K", "N", "P"),
                   help="Grassmannian mode: G(K, N) over F_P")
    e.add_argument("expression", help="expression to evaluate")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="run the embedded verification corpus")
    v.add_argument("--case", action="append", help="run only this case id")
    v.add_argument("--json", action="store_true", help="machine-readable output")
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("poincare", help="print a Gaussian binomial [N choose K]_t")
    q.add_argument("k", type=int)
    q.add_argument("n", type=int)
    q.set_defaults(func=cmd_poincare)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
