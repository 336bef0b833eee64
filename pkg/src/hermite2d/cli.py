"""Command-line front end.

Exit codes: 0 all checks pass, 1 an identity failed (or a value came out
non-real), 2 usage or configuration error.

    hermite2d coeffs --m 2 --n 1 --g "0,1;1,0"
    hermite2d matrix --L 1 --kind real-basis
    hermite2d det --N 2 --s 0 --z "1/2+1/3i"
    hermite2d verify all --jobs 1
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from .determinants import HankelSpec, oracle_delta, positivity_check
from .exact import ExactScalar, NotRealError, ScalarParseError, as_scalar
from .hermite import (
    GMatrix,
    complex_hermite_operator,
    deformation_matrix,
    deformed_rodrigues,
    deformed_sum,
    deformed_via_matrix,
    gf_table,
    real_basis_matrix,
    sandwich_route,
)
from .suites import SUITES, RunConfig, default_jobs, run_suite

ENV_MAX_DEGREE = "HERMITE2D_MAX_DEGREE"


class UsageError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def _parse_g(text: str | None) -> GMatrix:
    if text is None:
        return GMatrix.identity()
    try:
        return GMatrix.parse(text)
    except ScalarParseError as exc:
        raise UsageError(f"--g: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_scalar(flag: str, text: str) -> ExactScalar:
    try:
        return as_scalar(text)
    except ScalarParseError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _parse_point(text: str) -> tuple[Fraction, Fraction]:
    z = _parse_scalar("--z", text)
    if z.has_radical():
        raise UsageError(f"--z: point {text!r} must be a Gaussian rational (no √2 part)")
    u = z.unit
    return u.re, u.im


def _nonneg(flag: str, value: int) -> int:
    if value < 0:
        raise UsageError(f"{flag} must be >= 0, got {value}")
    return value


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---- commands -----------------------------------------------------------


def cmd_coeffs(args) -> int:
    m, n = _nonneg("--m", args.m), _nonneg("--n", args.n)
    g = _parse_g(args.g)
    poly = deformed_sum(g, m, n)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "n", "exp_z1", "exp_z2", "coeff"])
        for e, c in poly.sorted_terms():
            w.writerow([m, n, e[0], e[1], str(c)])
        _emit(buf.getvalue(), args.output)
    elif args.format == "pretty":
        _emit(f"H^({g})_{{{m},{n}}} = {poly}\n", args.output)
    else:
        obj = {"m": m, "n": n, "g": g.to_json_obj(), **poly.to_json_obj()}
        _emit(_dumps(obj) + "\n", args.output)
    return 0


def cmd_eval(args) -> int:
    m, n = _nonneg("--m", args.m), _nonneg("--n", args.n)
    g = _parse_g(args.g)
    if args.z is not None:
        z = _parse_scalar("--z", args.z)
        z1, z2 = z, z.conjugate()
    elif args.z1 is not None and args.z2 is not None:
        z1, z2 = _parse_scalar("--z1", args.z1), _parse_scalar("--z2", args.z2)
    else:
        raise UsageError("eval needs --z, or both --z1 and --z2")
    poly = deformed_sum(g, m, n)
    value = poly.evaluate({"z1": z1, "z2": z2})
    obj = {"m": m, "n": n, "g": g.to_json_obj(), "z1": str(z1), "z2": str(z2), "value": str(value)}
    if args.float:
        c = value.to_complex()
        obj["float"] = [c.real, c.imag]
    _emit(_dumps(obj) + "\n", args.output)
    return 0


def cmd_matrix(args) -> int:
    L = _nonneg("--L", args.L)
    if args.kind == "deformation":
        if args.g is None:
            raise UsageError("--g is required for --kind deformation")
        M = deformation_matrix(_parse_g(args.g), L)
    else:
        if args.g is not None:
            raise UsageError("--g is not accepted for --kind real-basis")
        M = real_basis_matrix(L)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "k", "entry"])
        for r, row in enumerate(M.entries):
            for k, c in enumerate(row):
                w.writerow([r, k, str(c)])
        _emit(buf.getvalue(), args.output)
    elif args.format == "pretty":
        width = max(len(str(c)) for row in M.entries for c in row)
        lines = ["  ".join(str(c).rjust(width) for c in row) for row in M.entries]
        _emit(f"{M.kind}, L={L}\n" + "\n".join(lines) + "\n", args.output)
    else:
        _emit(_dumps(M.to_json_obj()) + "\n", args.output)
    return 0


def cmd_det(args) -> int:
    N = args.N
    if N < 1:
        raise UsageError(f"--N must be >= 1, got {N}")
    s = _nonneg("--s", args.s)
    g = _parse_g(args.g)
    if not g.is_hermitian_pair():
        raise UsageError(f"--g {g} violates g12 = conj(g21), g22 = conj(g11)")
    if args.oracle and (N > 2 or s > 1):
        raise UsageError(f"--oracle needs N <= 2 and s <= 1, got N={N}, s={s}")
    x0, y0 = _parse_point(args.z)
    spec = HankelSpec(g, N, s, x0, y0)
    try:
        value, positive = positivity_check(spec)
    except NotRealError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    obj = {
        "N": N,
        "s": s,
        "z": str(spec.z),
        "g": g.to_json_obj(),
        "delta": str(value.coeff),
        "pi_power": value.pi_power,
        "positive": positive,
    }
    if args.oracle:
        obj["oracle_match"] = oracle_delta(spec) == value
    _emit(_dumps(obj) + "\n", args.output)
    return 0 if positive and obj.get("oracle_match", True) else 1


def _max_degree(flag: int | None) -> int | None:
    if flag is not None:
        return flag
    env = os.environ.get(ENV_MAX_DEGREE)
    if env is None or env == "":
        return None
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{ENV_MAX_DEGREE}={env!r} is not an integer") from None


def cmd_verify(args) -> int:
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    md = _max_degree(args.max_degree)
    if md is not None and md < 0:
        raise UsageError(f"max degree must be >= 0, got {md}")
    g_set = None
    if args.g:
        g_set = tuple((f"g{k}", _parse_g(text)) for k, text in enumerate(args.g))
    points = tuple(_parse_point(p) for p in args.point) if args.point else None
    try:
        cfg = RunConfig(
            max_degree=md,
            points=points,
            det_N=args.N,
            det_s=args.s,
            jobs=args.jobs if args.jobs is not None else default_jobs(),
            **({"g_set": g_set} if g_set else {}),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    start = time.perf_counter()
    lines, passed, failed = run_suite(suites, cfg)
    elapsed = time.perf_counter() - start
    _emit("".join(line + "\n" for line in lines), args.output)
    summary = {"suites": suites, "cases": len(lines), "passed": passed, "failed": failed, "wall_time_s": round(elapsed, 3)}
    print(_dumps(summary), file=sys.stderr)
    return 0 if failed == 0 else 1


def cmd_bench(args) -> int:
    m, n = _nonneg("--m", args.m), _nonneg("--n", args.n)
    g = _parse_g(args.g)
    routes = {
        "sum": lambda: deformed_sum.__wrapped__(g, m, n),
        "rodrigues": lambda: deformed_rodrigues(g, m, n),
        "sandwich": lambda: sandwich_route(g, m, n),
        "matrix": lambda: deformed_via_matrix(g, m, m + n),
        "generating-function": lambda: gf_table(g, m + n)[(m, n)],
    }
    if g == GMatrix.identity():
        routes["creation-operator"] = lambda: complex_hermite_operator(m, n)
    timings = {}
    for name, fn in routes.items():
        best = float("inf")
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        timings[name] = round(best, 6)
    _emit(_dumps({"m": m, "n": n, "g": g.to_json_obj(), "best_seconds": timings}) + "\n", args.output)
    return 0


# ---- parser -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hermite2d", description="Exact deformed complex Hermite polynomials.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt: bool = True):
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        if fmt:
            sp.add_argument("--format", choices=("json", "csv", "pretty"), default="json")

    sp = sub.add_parser("coeffs", help="coefficients of H^(g)_{m,n}")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--g", help='deformation matrix "a,b;c,d" (default identity)')
    common(sp)
    sp.set_defaults(func=cmd_coeffs)

    sp = sub.add_parser("eval", help="exact value of H^(g)_{m,n} at a point")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--g")
    sp.add_argument("--z", help="evaluate on the diagonal z1 = z, z2 = conj z")
    sp.add_argument("--z1")
    sp.add_argument("--z2")
    sp.add_argument("--float", action="store_true", help="also report the double-precision value")
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("matrix", help="deformation matrix M(g,L) or real-basis matrix M(L)")
    sp.add_argument("--L", type=int, required=True)
    sp.add_argument("--kind", choices=("deformation", "real-basis"), required=True)
    sp.add_argument("--g")
    common(sp)
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("det", help="Hankel determinant and its sign")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--s", type=int, default=0)
    sp.add_argument("--z", default="0", help='point "x0+y0i"')
    sp.add_argument("--g")
    sp.add_argument("--oracle", action="store_true", help="also compare with the integral formula (N, s <= 2, 1)")
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_det)

    sp = sub.add_parser("verify", help="run a verification suite, JSON lines on stdout")
    sp.add_argument("suite", choices=SUITES + ("all",))
    sp.add_argument("--max-degree", type=int, default=None,
                    help=f"index bound for every suite (env {ENV_MAX_DEGREE}); default per suite")
    sp.add_argument("--N", type=int, default=4, help="largest determinant size")
    sp.add_argument("--s", type=int, default=2, help="largest determinant index shift")
    sp.add_argument("--g", action="append", help="replace the test matrix set (repeatable)")
    sp.add_argument("--point", action="append", help="replace the evaluation points (repeatable)")
    sp.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPU count)")
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="time each construction route")
    sp.add_argument("--m", type=int, default=4)
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--g")
    sp.add_argument("--repeat", type=int, default=3)
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hermite2d {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
