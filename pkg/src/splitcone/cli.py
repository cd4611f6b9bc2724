"""Command-line driver: run named verification suites and emit reports.

Exit codes: 0 all checks passed, 1 verification failure, 2 usage or
configuration error, 3 internal numerical non-convergence.
"""

from __future__ import annotations

import argparse
import sys
import time

from .quadrature import QuadratureError
from .report import VerificationReport, emit_report
from .suites import SUITE_NAMES, SuiteConfig, build_suite

EXIT_OK = 0
EXIT_VERIFICATION_FAILURE = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _parse_float_list(text):
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a float list: {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def build_parser():
    p = argparse.ArgumentParser(
        prog="verify",
        description="Run numerical verification suites for the light-cone "
        "kernel toolkit.",
    )
    p.add_argument("suite", choices=SUITE_NAMES + ("all",),
                   help="which suite to run")
    p.add_argument("--rho", type=_parse_float_list, default=None,
                   metavar="LIST", help="comma-separated spectral parameters")
    p.add_argument("--R", type=_parse_float_list, default=None,
                   metavar="LIST", help="comma-separated radii")
    p.add_argument("--eps-parity", choices=("0", "1", "both"), default="both")
    p.add_argument("--tol", type=float, default=None,
                   help="scale every tolerance by TOL (e.g. 1e-6 forces fails)")
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--panel-budget", type=int, default=None,
                   help="override the quadrature panel budget (diagnostics)")
    p.add_argument("--no-wall-time", action="store_true",
                   help="write wall_ms as 0 for byte-stable reports")
    return p


def run(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    checks = build_suite(cfg)
    wall = (time.perf_counter() - t0) * 1e3
    echo = {
        "suite": cfg.suite,
        "rho_list": list(cfg.rho_list),
        "R_list": list(cfg.R_list),
        "eps_parity": cfg.eps_parity,
        "tol_scale": cfg.tol_scale,
        "seed": cfg.seed,
        "workers": cfg.workers,
    }
    return VerificationReport(suite=cfg.suite, config_echo=echo, checks=checks,
                              wall_ms=wall)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    kwargs = dict(
        suite=args.suite,
        eps_parity=args.eps_parity,
        seed=args.seed,
        workers=max(1, args.workers),
        output_format=args.format,
        out_path=args.out,
        panel_budget=args.panel_budget,
        include_wall_time=not args.no_wall_time,
    )
    if args.rho is not None:
        kwargs["rho_list"] = args.rho
    if args.R is not None:
        kwargs["R_list"] = args.R
    if args.tol is not None:
        if args.tol <= 0:
            print("error: --tol must be positive", file=sys.stderr)
            return EXIT_USAGE
        kwargs["tol_scale"] = args.tol
    try:
        cfg = SuiteConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        print(f"error: bad configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if 0.0 in cfg.rho_list:
        print("error: rho = 0 is excluded", file=sys.stderr)
        return EXIT_USAGE
    try:
        rep = run(cfg)
    except QuadratureError as exc:
        print(f"error: numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = emit_report(rep, cfg.output_format, cfg.out_path,
                          include_wall_time=cfg.include_wall_time)
    if cfg.out_path is None:
        sys.stdout.write(payload)
    return EXIT_OK if rep.all_passed else EXIT_VERIFICATION_FAILURE


if __name__ == "__main__":
    sys.exit(main())
