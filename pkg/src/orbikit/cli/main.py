"""Command-line entry point: ``orbikit run <scenario> [options]``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..errors import ParseError
from .report import emit
from .runner import RunOptions, run
from .scenario import parse_scenario

EXIT_OK, EXIT_TASK_FAILED, EXIT_PARSE_ERROR = 0, 1, 2


def _coeffs(text: str) -> str:
    t = text.strip().lower().replace(" ", "")
    if t in ("integers", "z"):
        return "integers"
    if t.startswith("mod") and t[3:].isdigit() and int(t[3:]) >= 2:
        return f"mod {int(t[3:])}"
    raise argparse.ArgumentTypeError("coefficients are 'integers' or 'mod p'")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbikit", description="Borel-construction orbispace computations.")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run a scenario file")
    r.add_argument("file", help="scenario file (YAML)")
    r.add_argument("--truncation", type=int, help="override the scenario truncation N")
    r.add_argument("--max-cosets", type=int, default=None, help="coset enumeration bound (default 10000)")
    r.add_argument("--coeffs", type=_coeffs, default=None, help="default coefficients: integers or 'mod p'")
    r.add_argument("--format", choices=("text", "structured"), default="text")
    r.add_argument("--refine", type=int, default=None, help="barycentric refinement levels")
    r.add_argument("--out", help="write the report here instead of standard output")
    r.add_argument("--timing", action="store_true", help="include per-task timings (not reproducible)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"orbikit: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    try:
        scenario = parse_scenario(text)
    except ParseError as exc:
        print(f"orbikit: {args.file}: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    if args.truncation is not None and args.truncation < 2:
        print("orbikit: --truncation must be >= 2", file=sys.stderr)
        return EXIT_PARSE_ERROR
    opts = RunOptions(
        truncation=args.truncation,
        coefficients=args.coeffs,
        refine=args.refine,
        timing=args.timing,
    )
    if args.max_cosets is not None:
        opts.max_cosets = args.max_cosets
    report = run(scenario, opts)
    data = emit(report, args.format)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT_OK if report.ok else EXIT_TASK_FAILED


if __name__ == "__main__":
    sys.exit(main())
