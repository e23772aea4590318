"""Command-line front end: run named verification suites, emit reports.

Exit codes: 0 all laws pass, 1 at least one law fails, 2 usage error.
Default truncations can be overridden with the environment variables
QSLN_DEPTH and QSLN_HBAR_ORDER.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from .report import SuiteReport
from .suites import SUITES, SuiteConfig, run_suite


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsln",
        description="Exact verification suites for the quantum sl_n "
                    "minor calculus.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--n", type=int, default=3,
                   help="rank parameter, 2..4 (default 3)")
    v.add_argument("--depth", type=int,
                   default=_env_int("QSLN_DEPTH", 6),
                   help="Laurent truncation depth (default 6)")
    v.add_argument("--hbar-order", type=int,
                   default=_env_int("QSLN_HBAR_ORDER", 6),
                   help="hbar truncation order (default 6)")
    v.add_argument("--rep", choices=("defining", "tensor2"),
                   default="defining",
                   help="representation for spectrum-based suites")
    v.add_argument("--format", dest="fmt", choices=("text", "json"),
                   default="text")
    v.add_argument("--seed", type=int, default=0,
                   help="seed for randomized law instances")
    v.add_argument("--corrupt-t", action="store_true",
                   help=argparse.SUPPRESS)  # test hook
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = SuiteConfig(suite=args.suite, n=args.n,
                      laurent_depth=args.depth,
                      hbar_order=args.hbar_order,
                      rep=args.rep, fmt=args.fmt, seed=args.seed,
                      corrupt_t=args.corrupt_t)
    try:
        cfg.validate()
    except ValueError as exc:
        parser.error(str(exc))  # exits with code 2
    report = run_suite(cfg)
    if cfg.fmt == "json":
        print(report.to_json())
    else:
        print(report.to_text())
    return 0 if report.verdict == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
