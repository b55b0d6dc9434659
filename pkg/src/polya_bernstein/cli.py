"""Command-line front end.

Subcommands::

  pmf       probabilities of the urn law (special or explicit a, b, c)
  root      sign change of phi_{n,k} by bisection
  xstar     mode of p_{n,k}(x) for each k
  sweep     x,value table of p_{n,k}(x), phi_{n,k}(x) or R_n(f, x)
  operator  x,value table of R_n(f, x) (or the classical Bernstein operator)
  verify    theorem1 | theorem2 | theorem3 | lemma1 | lemma2 suites, JSON report
  sample    Monte Carlo histogram with chi-square goodness of fit

Exit codes: 0 success / all checks pass, 1 a check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from . import inequalities, operators, sampler, shape, urn
from .errors import PolyaError
from .scalar import DOUBLE, MODES, RATIONAL, format_scalar, jsonable, parse_scalar

EXIT_OK, EXIT_VIOLATION, EXIT_INVALID = 0, 1, 2

FN_HELP = ("identity | square | exp[:RATE] | inv:Q | step:J | affine:SLOPE,INTERCEPT | "
           "const:VALUE")


class UsageError(PolyaError):
    pass


def _emit(out, header: Sequence[str], rows, fmt: str, extra: dict | None = None) -> None:
    if fmt == "json":
        payload = dict(extra or {})
        payload["rows"] = [{h: _json_cell(v) for h, v in zip(header, row)} for row in rows]
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    out.write(buf.getvalue())


def _csv_cell(v):
    if isinstance(v, (int, str)) and not isinstance(v, bool):
        return v
    return format_scalar(v)


def _json_cell(v):
    if isinstance(v, str):
        return v
    return jsonable(v)


def _mode_for(texts: Sequence[str], requested: str | None) -> str:
    if requested:
        return requested
    return RATIONAL if any("/" in t for t in texts) else DOUBLE


def _parse_fn(spec: str, n: int) -> operators.SampledFunction:
    name, _, arg = spec.partition(":")
    try:
        if name == "identity":
            return operators.identity()
        if name == "square":
            return operators.square()
        if name == "exp":
            return operators.exponential(float(parse_scalar(arg)) if arg else 1.0)
        if name == "inv":
            return operators.inverse_linear(float(parse_scalar(arg)))
        if name == "step":
            return operators.step(int(arg), n)
        if name == "affine":
            slope, intercept = arg.split(",")
            return operators.affine(parse_scalar(slope, RATIONAL),
                                    parse_scalar(intercept, RATIONAL))
        if name == "const":
            return operators.constant(parse_scalar(arg, RATIONAL))
    except ValueError as exc:
        raise UsageError(f"bad function spec {spec!r}: {exc}") from exc
    raise UsageError(f"unknown function {spec!r}; expected {FN_HELP}")


# --- commands -----------------------------------------------------------------

def cmd_pmf(args, out) -> int:
    explicit = [args.a, args.b, args.c]
    if any(v is not None for v in explicit):
        if args.x is not None or any(v is None for v in explicit):
            raise UsageError("give either --x or all of --a, --b, --c")
        mode = _mode_for(explicit, args.mode)
        a, b, c = (parse_scalar(v, mode) for v in explicit)
        params = urn.UrnParams(args.n, a, b, c)
        ks = [args.k] if args.k is not None else range(args.n + 1)
        rows = [(k, urn.pmf_general(params, k)) for k in ks]
    else:
        if args.x is None:
            raise UsageError("--x (or --a, --b, --c) is required")
        mode = _mode_for([args.x], args.mode)
        x = parse_scalar(args.x, mode)
        ks = [args.k] if args.k is not None else range(args.n + 1)
        rows = [(k, urn.pmf_special(args.n, x, k)) for k in ks]
    _emit(out, ("k", "p"), rows, args.format, {"n": args.n, "mode": mode})
    return EXIT_OK


def cmd_root(args, out) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    ks = [args.k] if args.k is not None else range(args.n)
    rows = []
    for k in ks:
        r = shape.locate_root(args.n, k, args.tol)
        rows.append((k, r.x_root, r.bracket_lo, r.bracket_hi, r.residual))
    _emit(out, ("k", "x_root", "bracket_lo", "bracket_hi", "residual"), rows, args.format,
          {"n": args.n, "tolerance": args.tol})
    return EXIT_OK


def cmd_xstar(args, out) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    ks = [args.k] if args.k is not None else range(args.n + 1)
    rows = [(k, shape.x_star(args.n, k, args.tol)) for k in ks]
    _emit(out, ("k", "x_star"), rows, args.format, {"n": args.n})
    return EXIT_OK


def _grid(points: int, mode: str, sup=Fraction(1), closed=True):
    if points < 2:
        raise UsageError("--points must be at least 2")
    m = points - 1 if closed else points
    if mode == RATIONAL:
        return [sup * Fraction(i, m) for i in range(points)]
    return [float(sup) * i / m for i in range(points)]


def cmd_sweep(args, out) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    mode = args.mode or DOUBLE
    if args.fn is not None:
        if args.k is not None or args.quantity != "pmf":
            raise UsageError("--fn cannot be combined with --k or --quantity")
        f = _parse_fn(args.fn, args.n)
        evaluate = operators.bernstein_eval if getattr(args, "classical", False) else operators.rn_eval
        rows = [(x, evaluate(args.n, f, x)) for x in _grid(args.points, mode)]
    elif args.k is None:
        raise UsageError("one of --k or --fn is required")
    elif args.quantity == "phi":
        sup = shape.domain_sup(args.n, args.k)
        rows = [(x, shape.phi(args.n, args.k, x))
                for x in _grid(args.points, mode, sup, closed=False)]
    else:
        rows = [(x, urn.pmf_special(args.n, x, args.k)) for x in _grid(args.points, mode)]
    _emit(out, ("x", "value"), rows, args.format, {"n": args.n, "mode": mode})
    return EXIT_OK


def cmd_operator(args, out) -> int:
    args.k = None
    args.quantity = "pmf"
    return cmd_sweep(args, out)


SUITE_DEFAULTS = {
    "theorem1": {"n_max": 10, "grid": 2001},
    "theorem2": {"n_max": 10, "grid": 201},
    "theorem3": {"n_max": 10, "grid": 1001},
    "lemma1": {"n_max": 20, "trials": 10_000, "seed": 42},
    "lemma2": {"n_max": 200},
}


def cmd_verify(args, out) -> int:
    d = SUITE_DEFAULTS[args.suite]
    n_max = args.n_max if args.n_max is not None else d["n_max"]
    grid = args.grid if args.grid is not None else d.get("grid")
    tol = args.tol
    minimum_n = 1 if args.suite == "lemma2" else 2
    if n_max < minimum_n:
        raise UsageError(f"--n-max must be at least {minimum_n} for {args.suite}")
    if grid is not None and grid < 3:
        raise UsageError("--grid must be at least 3")
    if args.suite == "theorem1":
        report = shape.verify_theorem1(n_max, grid, tol)
    elif args.suite == "theorem2":
        report = operators.verify_theorem2_range(n_max, grid, tol)
    elif args.suite == "theorem3":
        report = operators.verify_theorem3_family(n_max, grid, tol)
    elif args.suite == "lemma1":
        trials = args.trials if args.trials is not None else d["trials"]
        seed = args.seed if args.seed is not None else d["seed"]
        if trials < 1:
            raise UsageError("--trials must be positive")
        report = inequalities.verify_lemma1(trials, seed, n_max)
    else:
        report = inequalities.verify_lemma2(n_max, tol)
    if args.no_timing:
        report.elapsed_ms = None
    out.write(json.dumps(report.to_dict(), indent=2) + "\n")
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_sample(args, out) -> int:
    # Decimal and fraction syntax are both exact rationals here, so impossible
    # outcomes are identified exactly.
    x = parse_scalar(args.x, RATIONAL)
    params = urn.UrnParams.special(args.n, x)
    config = sampler.SampleConfig(params, args.trials, args.seed)
    emp = sampler.empirical_pmf(config, workers=args.workers)
    exact = urn.pmf_vector(args.n, x)
    gof = sampler.gof_chi_square(emp, exact, args.level)
    payload = {
        "params": {"n": args.n, "x": format_scalar(x), "trials": args.trials,
                   "seed": args.seed, "level": args.level},
        "empirical": list(emp.counts),
        "exact": [format_scalar(p) for p in exact.probs],
        "chi_square": {"statistic": gof.statistic, "dof": gof.dof, "quantile": gof.quantile},
        "pass": gof.passed,
    }
    out.write(json.dumps(payload, indent=2) + "\n")
    print(f"sample: {'PASS' if gof.passed else 'FAIL'} (chi2={gof.statistic:.4g}, "
          f"dof={gof.dof}, q={gof.quantile:.4g})", file=sys.stderr)
    return EXIT_OK if gof.passed else EXIT_VIOLATION


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polya-bernstein",
        description="Polya urn law with negative replacement and the operator R_n.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__.split("Subcommands::", 1)[1])
    parser.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mode=True):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        if mode:
            p.add_argument("--mode", choices=MODES, default=None,
                           help="arithmetic; fraction syntax implies rational")

    p = sub.add_parser("pmf", help="urn probabilities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x")
    p.add_argument("--k", type=int)
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--c")
    common(p)
    p.set_defaults(func=cmd_pmf)

    p = sub.add_parser("root", help="root of phi_{n,k}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--tol", type=float, default=shape.DEFAULT_ROOT_TOL)
    common(p, mode=False)
    p.set_defaults(func=cmd_root)

    p = sub.add_parser("xstar", help="mode of p_{n,k}(x)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--tol", type=float, default=shape.DEFAULT_ROOT_TOL)
    common(p, mode=False)
    p.set_defaults(func=cmd_xstar)

    for name, func in (("sweep", cmd_sweep), ("operator", cmd_operator)):
        p = sub.add_parser(name, help="x,value table for plotting")
        p.add_argument("--n", type=int, required=True)
        if name == "sweep":
            p.add_argument("--k", type=int)
            p.add_argument("--quantity", choices=("pmf", "phi"), default="pmf")
            p.add_argument("--fn", help=FN_HELP)
        else:
            p.add_argument("--fn", required=True, help=FN_HELP)
            p.add_argument("--classical", action="store_true",
                           help="classical Bernstein operator instead of R_n")
        p.add_argument("--points", type=int, default=101)
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=tuple(SUITE_DEFAULTS))
    p.add_argument("--n-max", type=int)
    p.add_argument("--grid", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--no-timing", action="store_true",
                   help="report elapsed_ms as null so output is byte-reproducible")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="Monte Carlo check of the urn law")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=sampler.DEFAULT_SEED)
    p.add_argument("--level", type=float, default=0.999)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sample)
    return parser


_NUMERIC_OPTS = {"--x", "--a", "--b", "--c"}
_NEGATIVE = re.compile(r"^-(\d+(\.\d*)?|\.\d+)(/\d+)?([eE][-+]?\d+)?$")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--c -1/6`` into ``--c=-1/6``; argparse would read ``-1/6`` as a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _NUMERIC_OPTS and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    out = open(args.output, "w", encoding="utf-8", newline="\n") if args.output else sys.stdout
    try:
        return args.func(args, out)
    except (PolyaError, ValueError, ZeroDivisionError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
