"""Command-line front end: ``segproc simulate | density | verify``.

Exit codes: 0 success, 1 runtime error, 2 usage error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

import numpy as np

from . import density, stats
from .rng import GENERATOR_NAME, RngStream, worker_count
from .suites import SUITE_NAMES, Runner, SuiteConfig
from .svg import scatter_svg

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, EXIT_FAILED = 0, 1, 2, 3

U64_MAX = (1 << 64) - 1


def _u64(text):
    value = int(text)
    if not 0 <= value <= U64_MAX:
        raise argparse.ArgumentTypeError(f"{text} is not a 64-bit unsigned integer")
    return value


def _positive(text):
    value = _u64(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} must be >= 1")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"{text} must be > 0")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="segproc", description="Diminishing segment process toolkit")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_u64, default=0)
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "svg"), default="csv")

    p = sub.add_parser("simulate", parents=[common], help="run the direct process")
    p.add_argument("--n-steps", type=_positive, default=10)
    p.add_argument("--replications", type=_positive, default=1)
    p.add_argument("--trajectory", action="store_true", help="emit every step, not only the final state")

    p = sub.add_parser("density", parents=[common], help="exact E S_n table")
    p.add_argument("--max-n", type=_positive, default=70)
    p.add_argument("--tol", type=_positive_float, default=1e-10)
    p.add_argument("--max-order", type=_positive, default=density.DEFAULT_MAX_ORDER,
                   help="ceiling on the truncation order")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=SUITE_NAMES + ("all",), default="all")
    p.add_argument("--samples", type=_positive, help="override the suite sample size")
    p.add_argument("--n-steps", type=_positive, help="override the direct-process step count")
    return parser


def _header(args) -> str:
    config = {k: v for k, v in sorted(vars(args).items()) if k != "out"}
    return (f"# seed={args.seed}\n"
            f"# config={json.dumps(config, sort_keys=True)}\n"
            f"# generator={GENERATOR_NAME}\n")


def _csv(header_row, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header_row) + "\n")
    for row in rows:
        buf.write(",".join(_cell(v) for v in row) + "\n")
    return buf.getvalue()


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _emit(text, out):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_simulate(args) -> int:
    from .core import simulate_direct

    if args.format != "csv":
        raise _UsageError("simulate only writes csv")
    rng = RngStream(args.seed, 0)
    lo, hi = simulate_direct(args.n_steps, args.replications, rng, trajectory=args.trajectory)
    rows = []
    if args.trajectory:
        for rep in range(args.replications):
            for n in range(args.n_steps + 1):
                a, b = lo[n, rep], hi[n, rep]
                rows.append((rep, n, 0.5 * (a + b), 0.5 * (b - a)))
    else:
        for rep in range(args.replications):
            rows.append((rep, args.n_steps, 0.5 * (lo[rep] + hi[rep]), 0.5 * (hi[rep] - lo[rep])))
    _emit(_header(args) + _csv(("replication", "n", "centre", "radius"), rows), args.out)
    return EXIT_OK


def cmd_density(args) -> int:
    table = density.density_table(args.max_n, args.tol, max_order=args.max_order)
    if args.format == "svg":
        svg = scatter_svg([r.n for r in table], [float(r.figure_value) for r in table],
                          title="n (1/2 - E S_n)", xlabel="n", ylabel="n (1/2 - E S_n)", ref_y=0.25)
        comment = _header(args).replace("--", "- -").rstrip("\n").replace("\n", " ")
        _emit(svg.replace("\n", f"\n<!-- {comment} -->\n", 1), args.out)
        return EXIT_OK
    rows = [(r.n, float(r.es), float(r.figure_value), float(r.tail_bound)) for r in table]
    _emit(_header(args) + _csv(("n", "es_n", "figure_value", "tail_bound"), rows), args.out)
    return EXIT_OK


def _suite_config(args) -> SuiteConfig:
    base = SuiteConfig()
    changes = {}
    if args.n_steps is not None:
        changes["radius_n_steps"] = args.n_steps
    if args.samples is not None:
        size_field = {
            "radius-exp": ["radius_replications"],
            "radius-moments": ["radius_replications"],
            "center-arcsine": ["center_samples"],
            "method-equivalence": ["center_samples", "radius_replications"],
            "fixed-point": ["fixed_point_samples"],
            "gem-identity": ["gem_samples"],
            "domination": ["domination_samples"],
            "maxuniform-exact": ["maxconv_points"],
            "all": ["radius_replications", "center_samples", "fixed_point_samples",
                    "gem_samples", "domination_samples"],
        }[args.suite]
        changes.update({f: args.samples for f in size_field})
    return SuiteConfig(**{**base.__dict__, **changes})


def cmd_verify(args) -> int:
    if args.format != "csv":
        raise _UsageError("verify only writes csv")
    reports = Runner(args.seed, _suite_config(args)).run(args.suite)
    rows = [(r.suite, r.check, r.sample_size, float(r.statistic), float(r.threshold),
             "pass" if r.expect_pass else "fail", "pass" if r.passed else "fail",
             "ok" if r.ok else "MISMATCH") for r in reports]
    _emit(_header(args) + _csv(("suite", "check", "sample_size", "statistic", "threshold",
                                "expected", "outcome", "status"), rows), args.out)
    print(format_table(reports), file=sys.stderr)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED


def format_table(reports) -> str:
    lines = [f"{'suite':<20} {'check':<30} {'N':>8} {'statistic':>12} {'threshold':>10} "
             f"{'expect':>6} {'status':>8} {'time[s]':>8}"]
    for r in reports:
        lines.append(f"{r.suite:<20} {r.check:<30} {r.sample_size:>8} {r.statistic:>12.4g} "
                     f"{r.threshold:>10.4g} {'pass' if r.expect_pass else 'fail':>6} "
                     f"{'ok' if r.ok else 'MISMATCH':>8} {r.runtime:>8.2f}")
    return "\n".join(lines)


class _UsageError(Exception):
    pass


COMMANDS = {"simulate": cmd_simulate, "density": cmd_density, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        worker_count()
        return COMMANDS[args.subcommand](args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"segproc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RuntimeError, ValueError, OSError) as exc:
        print(f"segproc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
