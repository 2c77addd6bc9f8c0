"""Command-line front end; every command writes CSV with a '#' configuration header.

Exit codes: 0 success, 2 usage or invalid parameters, 3 resource limits,
4 zero-table coverage or table data errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import numpy as np

from .bounds import (BoundConstants, C0_VINOGRADOV_KOROBOV, DensityExponent, EnvelopeName,
                     all_envelopes, envelope, envelopes_csv, sup_over_sigma)
from .errors import (CoverageError, DomainError, PreconditionError, ResourceError,
                     ZeroTableError)
from .explicit import compare
from .phase_sum import DEFAULT_MAX_WIDTH, SumParams, direct_sum
from .sieve import DEFAULT_SEGMENT, chebyshev_psi, psi_mass
from .zeros import ZEROS_ENV, count_up_to, default_zeros_path, load_zeros, rvm_estimate, rvm_residual_max

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_COVERAGE = 0, 2, 3, 4
OUT_OF_RANGE = "out-of-range"


class UsageError(Exception):
    pass


def _version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "unknown"


def parse_real(text: str) -> float:
    """Decimal, scientific notation, or an exact fraction such as '1/3'."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def parse_int(text: str) -> int:
    v = parse_real(text)
    if v != int(v):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(v)


def parse_real_list(text: str) -> list[float]:
    """Comma list, or 'lo..hi:n' for n log-spaced points."""
    text = text.strip()
    if not text:
        return []
    if ".." in text:
        span, _, count = text.partition(":")
        lo, hi = (parse_real(s) for s in span.split(".."))
        n = parse_int(count) if count else 2
        if n < 1 or lo <= 0 or hi < lo:
            raise argparse.ArgumentTypeError(f"bad grid {text!r}")
        return [lo] if n == 1 else [float(v) for v in np.geomspace(lo, hi, n)]
    return [parse_real(s) for s in text.split(",")]


def parse_int_list(text: str) -> list[int]:
    """Comma list, or 'lo..hi' for an inclusive range."""
    text = text.strip()
    if ".." in text:
        lo, hi = (parse_int(s) for s in text.split(".."))
        return list(range(lo, hi + 1))
    return [parse_int(s) for s in text.split(",")]


@dataclass
class RunConfig:
    """Validated options of one invocation, echoed into the CSV header."""

    command: str
    options: dict = field(default_factory=dict)

    def header(self) -> str:
        lines = [f"# mangoldt-twists {_version()} command={self.command}"]
        lines += [f"# {k}={v}" for k, v in sorted(self.options.items())]
        return "\n".join(lines) + "\n"


def _csv(rows: list[list], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _r(v: float) -> str:
    return repr(float(v))


def _sum_params(args, alpha=None) -> SumParams:
    return SumParams(args.x, args.k, args.alpha if alpha is None else alpha, args.theta,
                     degenerate=getattr(args, "degenerate_ok", False))


def _constants(args) -> BoundConstants:
    c0 = C0_VINOGRADOV_KOROBOV if args.preset == "vk" else args.c0
    return BoundConstants(c0=c0, epsilon=args.epsilon, ren_log_power=args.ren_log_power,
                          small_theta_log_power=args.small_theta_log_power,
                          density_log_power=args.density_log_power)


def _zeros_path(args) -> Path:
    path = args.zeros or default_zeros_path()
    if path is None:
        raise UsageError(f"no zero table: pass --zeros or set {ZEROS_ENV}")
    if not Path(path).is_file():
        raise UsageError(f"zero table {path} not found")
    return Path(path)


def cmd_sum(args) -> tuple[RunConfig, str]:
    if args.alpha == 0.0 and not args.degenerate_ok:
        raise UsageError("--alpha 0 requires --degenerate-ok (alpha must be nonzero)")
    p = _sum_params(args)
    s = direct_sum(p, segment_size=args.segment_size, workers=args.threads, max_width=args.max_width)
    mass = psi_mass(p.x, args.segment_size, args.threads)
    cfg = RunConfig("sum", _echo(args, "x", "k", "alpha", "theta", "degenerate_ok", "threads",
                                 "segment_size", "max_width"))
    body = _csv([[_r(p.x), str(p.k), _r(p.alpha), _r(p.theta), _r(s.real), _r(s.imag), _r(abs(s)),
                  _r(mass)]], ["x", "k", "alpha", "theta", "re", "im", "abs", "psi_mass"])
    return cfg, body


def cmd_explicit(args) -> tuple[RunConfig, str]:
    p = _sum_params(args)
    path = _zeros_path(args)
    zeros = load_zeros(path)
    cfg = RunConfig("explicit", _echo(args, "x", "k", "alpha", "theta", "T", "threads"))
    cfg.options["zeros"] = str(path)
    cfg.options["zeros_count"] = len(zeros)
    cfg.options["zeros_digits"] = zeros.source_digits
    for T in args.T:
        if T > zeros.max_ordinate:
            raise CoverageError(f"T={T} exceeds table coverage: max ordinate {zeros.max_ordinate}")
    report = compare(p, zeros, args.T, workers=args.threads)
    return cfg, report.to_csv()


def cmd_sweep(args) -> tuple[RunConfig, str]:
    consts = _constants(args)
    names = list(EnvelopeName)
    cols = ["x", "k", "theta", "abs_S", "psi_mass"] + [n.value for n in names] + ["ratio_theorem_1_1"]
    rows = []
    for x in args.x_grid:
        for k in args.k_grid:
            p = SumParams(x, k, args.alpha, args.theta)
            s = direct_sum(p, workers=args.threads, max_width=args.max_width)
            envs = all_envelopes(p, consts)
            env_cells = [OUT_OF_RANGE if envs[n] is None else _r(envs[n].value) for n in names]
            t11 = envs[EnvelopeName.THEOREM_1_1]
            ratio = OUT_OF_RANGE if t11 is None else _r(abs(s) / t11.value)
            rows.append([_r(x), str(k), _r(args.theta), _r(abs(s)), _r(psi_mass(x, workers=args.threads))]
                        + env_cells + [ratio])
    cfg = RunConfig("sweep", _echo(args, "x_grid", "k_grid", "theta", "alpha", "threads", "max_width"))
    cfg.options.update({f"const_{k}": v for k, v in vars(consts).items()})
    return cfg, _csv(rows, cols)


def cmd_bounds(args) -> tuple[RunConfig, str]:
    consts = _constants(args)
    p = SumParams(args.x, args.k, args.alpha, args.theta)
    cfg = RunConfig("bounds", _echo(args, "x", "k", "alpha", "theta", "all", "name"))
    cfg.options.update({f"const_{k}": v for k, v in vars(consts).items()})
    s_star, sup_val = sup_over_sigma(p, DensityExponent.HUXLEY, consts.c0)
    cfg.options["sup_sigma_star"] = repr(s_star)
    cfg.options["sup_value"] = repr(sup_val)
    if args.all or not args.name:
        rows = []
        for n, e in all_envelopes(p, consts).items():
            rows.append(e.as_csv_row() if e is not None else
                        [n.value, _r(p.x), str(p.k), _r(p.theta), _r(consts.c0), _r(consts.epsilon),
                         OUT_OF_RANGE])
        return cfg, _csv(rows, ["name", "x", "k", "theta", "c0", "epsilon", "value"])
    return cfg, envelopes_csv([envelope(n, p, consts) for n in args.name])


def cmd_zeros_info(args) -> tuple[RunConfig, str]:
    path = _zeros_path(args)
    z = load_zeros(path)
    resid, where = rvm_residual_max(z, args.t_min)
    cfg = RunConfig("zeros-info", {"zeros": str(path), "t_min": args.t_min})
    cols = ["count", "first", "max_ordinate", "source_digits", "max_rvm_residual", "residual_at"]
    rows = [[str(len(z)), _r(z.gammas[0]), _r(z.max_ordinate), str(z.source_digits), _r(resid),
             _r(where)]]
    body = _csv(rows, cols)
    if args.T:
        body += _csv([[_r(T), str(count_up_to(z, T)), _r(rvm_estimate(T))] for T in args.T],
                     ["T", "N", "rvm_estimate"])
    return cfg, body


def cmd_psi(args) -> tuple[RunConfig, str]:
    v = chebyshev_psi(args.x, args.segment_size, args.threads)
    cfg = RunConfig("psi", _echo(args, "x", "segment_size", "threads"))
    return cfg, _csv([[_r(args.x), _r(v)]], ["x", "psi"])


def _echo(args, *names) -> dict:
    out = {n: getattr(args, n, None) for n in names}
    if "theta" in out:
        out["theta"] = args.theta_text
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mangoldt-twists", description=__doc__.splitlines()[0])
    ap.add_argument("--out", help="write CSV here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, threads=True):
        if threads:
            p.add_argument("--threads", type=parse_int, default=1)
        p.add_argument("--out", default=argparse.SUPPRESS, help="write CSV here instead of stdout")

    def sum_flags(p, alpha_required=True):
        p.add_argument("--x", type=parse_real, required=True)
        p.add_argument("--k", type=parse_int, required=True)
        p.add_argument("--alpha", type=parse_real, required=alpha_required, default=1.0)
        p.add_argument("--theta", required=True, help="decimal or exact fraction, e.g. 1/3")

    def const_flags(p):
        p.add_argument("--c0", type=parse_real, default=BoundConstants.c0)
        p.add_argument("--preset", choices=["default", "vk"], default="default",
                       help="vk: c0 = 1/57.54 (Vinogradov-Korobov)")
        p.add_argument("--epsilon", type=parse_real, default=BoundConstants.epsilon)
        p.add_argument("--ren-log-power", type=parse_real, default=BoundConstants.ren_log_power)
        p.add_argument("--small-theta-log-power", type=parse_real,
                       default=BoundConstants.small_theta_log_power)
        p.add_argument("--density-log-power", type=parse_real, default=BoundConstants.density_log_power)

    p = sub.add_parser("sum", help="direct evaluation of S(k, x, theta)")
    sum_flags(p)
    p.add_argument("--degenerate-ok", action="store_true", help="allow alpha = 0")
    p.add_argument("--segment-size", type=parse_int, default=DEFAULT_SEGMENT)
    p.add_argument("--max-width", type=parse_int, default=DEFAULT_MAX_WIDTH)
    common(p)
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("explicit", help="direct sum against the zero-sum approximation")
    sum_flags(p)
    p.add_argument("--zeros", help=f"zero table (default: ${ZEROS_ENV})")
    p.add_argument("--T", type=parse_real_list, default=[], help="comma-separated heights")
    common(p)
    p.set_defaults(func=cmd_explicit)

    p = sub.add_parser("sweep", help="|S| against every envelope on a grid")
    p.add_argument("--x-grid", type=parse_real_list, required=True, help="'1e4,1e5' or '1e4..1e6:3'")
    p.add_argument("--k-grid", type=parse_int_list, required=True, help="'1,2' or '1..4'")
    p.add_argument("--theta", required=True, help="decimal or exact fraction, e.g. 1/3")
    p.add_argument("--alpha", type=parse_real, default=1.0)
    p.add_argument("--max-width", type=parse_int, default=DEFAULT_MAX_WIDTH)
    const_flags(p)
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bounds", help="evaluate bound envelopes")
    sum_flags(p, alpha_required=False)
    p.add_argument("--all", action="store_true", help="every envelope (default)")
    p.add_argument("--name", action="append", choices=[n.value for n in EnvelopeName])
    const_flags(p)
    common(p, threads=False)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("zeros-info", help="summary and N(T) check of a zero table")
    p.add_argument("--zeros", help=f"zero table (default: ${ZEROS_ENV})")
    p.add_argument("--t-min", type=parse_real, default=20.0)
    p.add_argument("--T", type=parse_real_list, default=[])
    common(p, threads=False)
    p.set_defaults(func=cmd_zeros_info)

    p = sub.add_parser("psi", help="Chebyshev psi(x)")
    p.add_argument("--x", type=parse_real, required=True)
    p.add_argument("--segment-size", type=parse_int, default=DEFAULT_SEGMENT)
    common(p)
    p.set_defaults(func=cmd_psi)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if hasattr(args, "theta"):
            args.theta_text = args.theta
            try:
                args.theta = parse_real(args.theta)
            except argparse.ArgumentTypeError as exc:
                raise UsageError(str(exc)) from None
        if getattr(args, "threads", 1) < 1:
            raise UsageError("--threads must be >= 1")
        cfg, body = args.func(args)
    except (UsageError, DomainError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (CoverageError, ZeroTableError) as exc:
        print(f"zero table: {exc}", file=sys.stderr)
        return EXIT_COVERAGE
    text = cfg.header() + body
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
