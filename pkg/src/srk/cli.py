"""``srk`` command line: evaluate maps, run boundary checkers, write radial sweeps.

Exit status is 0 when every verdict passes, 1 when a checker fails or raises,
and 2 for usage, parse and validation errors.  ``SRK_SEED`` in the
environment overrides ``--seed``.
"""

import argparse
import os
import sys

from .boundary import (LimitConfig, boundary_schwarz_report, burns_krantz_report,
                       halfspace_jc_report, hopf_report, jc_ball_report, julia_report,
                       lindelof_check, radial_sweep, sample_ball, write_sweep_csv)
from .boundary.report import BoundaryReport
from .errors import ParseError, SrkError, ValidationError
from .fnspec import load_function_spec
from .quaternion import ONE, Quaternion, format_quaternion, parse_quaternion

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

THEOREMS = ("julia", "hopf", "schwarz-boundary", "lindelof", "jc-ball", "jc-halfspace", "burns-krantz")


class _UsageError(Exception):
    pass


def _quaternion_arg(text):
    try:
        return parse_quaternion(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser():
    parser = argparse.ArgumentParser(prog="srk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a map at one point")
    p.add_argument("--fn", required=True, help="function spec file (JSON)")
    p.add_argument("--at", required=True, type=_quaternion_arg, help="point as [w,x,y,z]")

    p = sub.add_parser("report", help="run a boundary checker and print its report")
    p.add_argument("theorem", choices=THEOREMS)
    p.add_argument("--fn", required=True)
    p.add_argument("--xi", type=_quaternion_arg, default=None, help="boundary point as [w,x,y,z]")
    p.add_argument("--gamma", type=float, default=0.5, help="cone aperture for jc-halfspace")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("sweep", help="write the radial sweep toward xi as CSV")
    p.add_argument("--fn", required=True)
    p.add_argument("--xi", required=True, type=_quaternion_arg)
    p.add_argument("--out", required=True, help="CSV path, or - for stdout")
    return parser


def _seed(args):
    env = os.environ.get("SRK_SEED", "").strip()
    if env:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"SRK_SEED must be an integer, got {env!r}") from None
    return args.seed


def _load(path):
    try:
        return load_function_spec(path)
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None


def _run_report(f, args, seed, cfg):
    xi = args.xi
    theorem = args.theorem
    if theorem == "julia":
        return julia_report(f, xi or ONE, cfg, seed=seed)
    if theorem == "hopf":
        return hopf_report(f, cfg)
    if theorem == "schwarz-boundary":
        return boundary_schwarz_report(f, xi or ONE, cfg)
    if theorem == "lindelof":
        rep = lindelof_check(f, sample_ball(cfg.spot_samples, seed), cfg)
        rep.seed = seed
        return rep
    if theorem == "jc-ball":
        return jc_ball_report(f, xi or ONE, cfg, seed=seed)
    if theorem == "jc-halfspace":
        return halfspace_jc_report(f, args.gamma, cfg, seed=seed)
    return burns_krantz_report(f, xi or Quaternion(-1.0), cfg, seed=seed)


def cmd_eval(args, out):
    f = _load(args.fn)
    out.write(format_quaternion(f(args.at)) + "\n")
    return EXIT_PASS


def cmd_report(args, out):
    f = _load(args.fn)
    seed = _seed(args)
    cfg = LimitConfig()
    try:
        rep = _run_report(f, args, seed, cfg)
    except (ParseError, ValidationError):
        raise
    except SrkError as exc:
        params = {"xi": args.xi} if args.xi is not None else {}
        rep = BoundaryReport(args.theorem, params=params, seed=seed, config=cfg.as_dict(),
                             error=f"{type(exc).__name__}: {exc}")
    out.write(rep.to_text())
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_sweep(args, out):
    f = _load(args.fn)
    try:
        rows = radial_sweep(f, args.xi)
    except SrkError as exc:
        sys.stderr.write(f"srk: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL
    if args.out == "-":
        write_sweep_csv(rows, out)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_sweep_csv(rows, fh)
    return EXIT_PASS


COMMANDS = {"eval": cmd_eval, "report": cmd_report, "sweep": cmd_sweep}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        return COMMANDS[args.command](args, out)
    except (_UsageError, ParseError, ValidationError) as exc:
        sys.stderr.write(f"srk: {exc}\n")
        return EXIT_USAGE
    except SrkError as exc:
        sys.stderr.write(f"srk: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
