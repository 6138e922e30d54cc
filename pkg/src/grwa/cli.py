"""Command-line interface: ``grwa spectrum | sweep | compare``.

Exit codes: 0 success, 2 usage error, 3 exact solver did not converge,
4 output could not be written.
"""

import argparse
import csv
import io
import json
import math
import sys

from .analysis import SweepSpec, error_summary, run_sweep, spectrum
from .approximations import ApproxMethod
from .exact import ConvergenceError, ConvergencePolicy
from .model import ModelParams

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONVERGENCE = 3
EXIT_IO = 4

METHOD_NAMES = [m.value for m in ApproxMethod]

SPECTRUM_FIELDS = ["rank", "branch", "N", "energy", "energy_over_omega0"]
SWEEP_FIELDS = ["g", "method", "rank", "branch", "N", "energy_over_omega0"]
COMPARE_FIELDS = ["method", "rank", "max_abs_error_over_omega0", "argmax_g"]


def _real(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _method_list(text):
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = [n for n in names if n not in METHOD_NAMES]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"unknown method(s) {', '.join(bad) or '(none)'}; choose from {','.join(METHOD_NAMES)}"
        )
    return names


def _add_common(p):
    p.add_argument("--omega0", type=_real, required=True, help="oscillator frequency")
    p.add_argument("--Omega", type=_real, required=True, help="two-level splitting")
    p.add_argument("--nmax", type=_positive_int, default=100,
                   help="first Fock truncation of the exact solver; doubled twice (default 100)")
    p.add_argument("--tol", type=_real, default=1e-8,
                   help="exact-solver convergence tolerance in units of omega0 (default 1e-8)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def _add_sweep_args(p):
    _add_common(p)
    p.add_argument("--gmin", type=_real, required=True, help="smallest lambda/omega0")
    p.add_argument("--gmax", type=_real, required=True, help="largest lambda/omega0")
    p.add_argument("--steps", type=int, required=True, help="grid points including endpoints (>= 2)")
    p.add_argument("--methods", type=_method_list, required=True,
                   help=f"comma-separated subset of {','.join(METHOD_NAMES)}")
    p.add_argument("--levels", type=_positive_int, default=6)
    p.add_argument("--out", help="output file (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="grwa",
        description="Energy levels of the single-mode spin-boson model: exact, RWA, adiabatic, GRWA.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="levels of one method at one parameter point")
    _add_common(p)
    p.add_argument("--lambda", dest="lam", type=_real, required=True, help="coupling strength")
    p.add_argument("--method", choices=METHOD_NAMES, required=True)
    p.add_argument("--levels", type=_positive_int, default=6)

    p = sub.add_parser("sweep", help="levels over a grid of lambda/omega0")
    _add_sweep_args(p)

    p = sub.add_parser("compare", help="max error of each method against a reference over a sweep")
    _add_sweep_args(p)
    p.add_argument("--reference", choices=METHOD_NAMES, default="exact")
    return parser


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render(fields, rows, spec_dict, fmt):
    """Serialize row dicts as CSV (header, LF endings) or as JSON {spec, rows}."""
    if fmt == "json":
        return json.dumps({"spec": spec_dict, "rows": rows}, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_fmt(row[f]) for f in fields])
    return buf.getvalue()


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _policy(args):
    return ConvergencePolicy.doubling(args.nmax, tol=args.tol)


def _spec(args, parser):
    methods = list(args.methods)
    if args.command == "compare" and args.reference not in methods:
        methods.append(args.reference)
    try:
        return SweepSpec(args.omega0, args.Omega, args.gmin, args.gmax, args.steps,
                         tuple(methods), args.levels, _policy(args))
    except ValueError as exc:
        parser.error(str(exc))


def cmd_spectrum(args, parser):
    try:
        params = ModelParams(args.omega0, args.Omega, args.lam)
        policy = _policy(args)
    except ValueError as exc:
        parser.error(str(exc))
    result = spectrum(params, args.method, args.levels, policy)
    rows = [
        {"rank": r, "branch": lv.branch, "N": lv.N, "energy": lv.energy,
         "energy_over_omega0": lv.energy / params.omega0}
        for r, lv in enumerate(result.levels)
    ]
    spec_dict = {"omega0": params.omega0, "Omega": params.Omega, "lambda": params.lam,
                 "method": args.method, "levels": args.levels}
    if result.report is not None:
        spec_dict["convergence"] = result.report.to_dict()
    _emit(render(SPECTRUM_FIELDS, rows, spec_dict, args.format), None)


def cmd_sweep(args, parser):
    spec = _spec(args, parser)
    table = run_sweep(spec)
    rows = [
        {"g": r.g, "method": r.method.value, "rank": r.rank, "branch": r.branch, "N": r.N,
         "energy_over_omega0": r.energy_over_omega0}
        for r in table.rows
    ]
    _emit(render(SWEEP_FIELDS, rows, spec.to_dict(), args.format), args.out)


def cmd_compare(args, parser):
    spec = _spec(args, parser)
    summary = error_summary(run_sweep(spec), args.reference)
    wanted = set(args.methods)
    rows = [
        {"method": r.method.value, "rank": r.rank,
         "max_abs_error_over_omega0": r.max_abs_error_over_omega0, "argmax_g": r.argmax_g}
        for r in summary.rows if r.method.value in wanted
    ]
    spec_dict = dict(spec.to_dict(), reference=args.reference)
    _emit(render(COMPARE_FIELDS, rows, spec_dict, args.format), args.out)


COMMANDS = {"spectrum": cmd_spectrum, "sweep": cmd_sweep, "compare": cmd_compare}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        COMMANDS[args.command](args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"grwa: error: {exc}\n")
        return EXIT_USAGE
    except ConvergenceError as exc:
        payload = {"error": str(exc)}
        if exc.report is not None:
            payload["report"] = exc.report.to_dict()
        sys.stderr.write(json.dumps(payload) + "\n")
        return EXIT_CONVERGENCE
    except OSError as exc:
        sys.stderr.write(f"grwa: cannot write output: {exc}\n")
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
