"""Command-line front end for single runs and grid sweeps.

Exit codes: 0 success, 1 usage error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import shlex
import sys

from .partitioning import SCHEMES
from .simulate import SimConfig, emit_csv, run, summarize
from .workload import ZipfConfig


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="streampart",
        description="Simulate stream partitioning schemes on a keyed stream.",
    )
    parser.add_argument("--scheme", choices=SCHEMES, help="partitioning scheme")
    parser.add_argument("--workers", type=int, default=10, metavar="N")
    parser.add_argument("--sources", type=int, default=5, metavar="S")
    parser.add_argument("--zipf-z", type=float, default=None, metavar="Z",
                        help="zipf exponent for the synthetic workload")
    parser.add_argument("--keys", type=int, default=None, metavar="K",
                        help="number of distinct keys (synthetic workload)")
    parser.add_argument("--messages", type=int, default=None, metavar="M",
                        help="stream length (synthetic workload)")
    parser.add_argument("--input", default=None, metavar="PATH",
                        help="read keys from a file, one per line "
                             "(mutually exclusive with the zipf flags)")
    parser.add_argument("--theta", type=float, default=None, metavar="F",
                        help="head frequency threshold (default 1/(5n))")
    parser.add_argument("--epsilon", type=float, default=1e-4, metavar="F",
                        help="imbalance tolerance for the dc solver")
    parser.add_argument("--seed", type=int, default=42, metavar="U64")
    parser.add_argument("--report-every", type=int, default=10_000, metavar="N")
    parser.add_argument("--out", default=None, metavar="PATH",
                        help="write the measurement series as CSV")
    parser.add_argument("--sweep", default=None, metavar="FILE",
                        help="run one config per line of FILE; each line is "
                             "a set of these flags")
    return parser


def _config_from_args(args: argparse.Namespace) -> SimConfig:
    if args.scheme is None:
        raise UsageError("--scheme is required")
    zipf_flags = (args.zipf_z, args.keys, args.messages)
    if args.input is not None:
        if any(flag is not None for flag in zipf_flags):
            raise UsageError("--input is mutually exclusive with --zipf-z/--keys/--messages")
        workload: ZipfConfig | str = args.input
    else:
        workload = ZipfConfig(
            z=args.zipf_z if args.zipf_z is not None else 1.0,
            num_keys=args.keys if args.keys is not None else 10_000,
            num_messages=args.messages if args.messages is not None else 1_000_000,
            seed=args.seed,
        )
    try:
        return SimConfig(
            scheme=args.scheme,
            n=args.workers,
            s=args.sources,
            workload=workload,
            theta=args.theta,
            epsilon=args.epsilon,
            seed=args.seed,
            report_every=args.report_every,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _run_one(config: SimConfig, out: str | None) -> None:
    result = run(config)
    if out is not None:
        emit_csv(result, out)
    print(summarize(result))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.sweep is not None:
        if args.out is not None:
            print("error: use per-line --out inside the sweep file", file=sys.stderr)
            return 1
        try:
            with open(args.sweep, encoding="utf-8") as handle:
                lines = handle.readlines()
        except OSError as exc:
            print(f"error: cannot read sweep file: {exc}", file=sys.stderr)
            return 2
        status = 0
        for lineno, line in enumerate(lines, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                sub = parser.parse_args(shlex.split(line))
                if sub.sweep is not None:
                    raise UsageError("nested --sweep is not allowed")
                _run_one(_config_from_args(sub), sub.out)
            except UsageError as exc:
                print(f"error: sweep line {lineno}: {exc}", file=sys.stderr)
                status = status or 1
            except OSError as exc:
                print(f"error: sweep line {lineno}: {exc}", file=sys.stderr)
                status = status or 2
        return status

    try:
        _run_one(_config_from_args(args), args.out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def entrypoint() -> None:
    sys.exit(main())
