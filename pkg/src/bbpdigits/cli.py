"""Command-line entry point.

Exit status:

    0  success (confident output, all checks matched)
    2  usage or validation error, including a failing base-5 condition
    3  output produced but at least one window is unconfident
    4  mismatch against the oracle
    5  mismatch reproduced by design (flawed base-5 variant)
    6  oracle precision refusal
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from . import bbp, oracle, report
from .base5 import ConditionError, base5_extract_exact, base5_extract_flawed, flaw_experiment
from .digits import DigitWindow
from .gaussian import b_sequence

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNCONFIDENT = 3
EXIT_MISMATCH = 4
EXIT_FLAW_BY_DESIGN = 5
EXIT_PRECISION = 6

CACHE_ENV = "BBPDIGITS_ORACLE_CACHE"
BASES = {"log2": (2,), "pi": (16, 5)}
DEFAULT_GRIDS = {2: (0, 10, 100, 1000), 16: (0, 10, 100, 1000), 5: (10, 30, 60)}


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--oracle-cache", default=os.environ.get(CACHE_ENV),
                        help=f"oracle cache file (default ${CACHE_ENV})")

    window = argparse.ArgumentParser(add_help=False)
    window.add_argument("--constant", choices=sorted(BASES), default="pi")
    window.add_argument("--base", type=int, default=None)
    window.add_argument("--guard", type=_positive, default=None, help="override guard digits")
    window.add_argument("--workers", type=_positive, default=None)
    window.add_argument("--method", choices=("direct", "split"), default=None,
                        help="log 2 recipe")
    window.add_argument("--variant", choices=("flawed", "exact"), default=None,
                        help="base-5 pi procedure")

    parser = argparse.ArgumentParser(prog="bbpdigits", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", parents=[common, window], help="extract a digit window")
    p.add_argument("--pos", type=_nonneg, required=True, help="offset d; digits start at d+1")
    p.add_argument("--count", type=_positive, required=True, help="number of digits r")

    p = sub.add_parser("verify", parents=[common, window], help="compare extractors with the oracle")
    p.add_argument("--grid", default=None, help="comma-separated offsets d")
    p.add_argument("--count", type=_positive, default=16)

    p = sub.add_parser("flaw-report", parents=[common], help="base-5 flaw experiment")
    p.add_argument("--pos", type=_nonneg, required=True)
    p.add_argument("--count", type=_positive, required=True)
    p.add_argument("--guard", type=_positive, default=None)
    p.add_argument("--figure", default=None, help="write a PNG of the validity frontier")

    p = sub.add_parser("bn-table", parents=[common], help="b_n table with bound check")
    p.add_argument("--count", type=_nonneg, default=20, help="largest n (<= 10000)")
    p.add_argument("--figure", default=None, help="write a PNG of |b_n|/5^n")
    return parser


def _resolve(args) -> Tuple[str, int]:
    base = args.base if args.base is not None else BASES[args.constant][0]
    if base not in BASES[args.constant]:
        raise UsageError(f"constant {args.constant} supports bases {BASES[args.constant]}, not {base}")
    if args.method and args.constant != "log2":
        raise UsageError("--method applies to log2 only")
    if args.variant and base != 5:
        raise UsageError("--variant applies to base-5 pi only")
    return args.constant, base


def _windows(constant: str, base: int, d: int, r: int, args) -> List[Tuple[str, str, DigitWindow]]:
    """``[(label, oracle constant, window), ...]`` for one extraction."""
    kw = {"guard": args.guard, "workers": args.workers}
    if constant == "log2":
        methods = [args.method] if args.method else (["direct", "split"] if args.command == "verify" else ["direct"])
        fn = {"direct": bbp.log2_extract_direct, "split": bbp.log2_extract_split}
        return [(m, "log2", fn[m](d, r, **kw)) for m in methods]
    if base == 16:
        return [("bbp16", "pi", bbp.pi_hex_extract(d, r, **kw))]
    variant = args.variant or "exact"
    fn = base5_extract_flawed if variant == "flawed" else base5_extract_exact
    re_w, im_w = fn(d, r, **kw)
    return [(f"{variant}-im", "pi", im_w), (f"{variant}-re", "2log2", re_w)]


def cmd_extract(args, out) -> int:
    constant, base = _resolve(args)
    rows = _windows(constant, base, args.pos, args.count, args)
    named = [(label, w) for label, _, w in rows]
    if base == 5:
        named = [(label.split("-")[-1].capitalize(), w) for label, w in named]
    render = report.windows_structured if args.format == "structured" else report.windows_text
    out.write(render(named))
    return EXIT_OK if all(w.confident for _, w in named) else EXIT_UNCONFIDENT


def cmd_verify(args, out) -> int:
    constant, base = _resolve(args)
    grid = [int(x) for x in args.grid.split(",")] if args.grid else DEFAULT_GRIDS[base]
    rows: List[Dict[str, object]] = []
    for d in grid:
        for label, name, w in _windows(constant, base, d, args.count, args):
            truth = oracle.oracle_window(name, base, d, args.count)
            rows.append({
                "constant": name, "method": label, "base": base, "d": d, "r": args.count,
                "digits": w.digit_string(), "oracle": truth.digit_string(),
                "match": w.digits == truth.digits, "confident": w.confident,
            })
    render = report.verify_structured if args.format == "structured" else report.verify_text
    out.write(render(rows))
    if not all(r["match"] for r in rows):
        return EXIT_FLAW_BY_DESIGN if args.variant == "flawed" else EXIT_MISMATCH
    return EXIT_OK if all(r["confident"] for r in rows) else EXIT_UNCONFIDENT


def cmd_flaw_report(args, out) -> int:
    rep = flaw_experiment(args.pos, args.count, guard=args.guard)
    render = report.flaw_report_structured if args.format == "structured" else report.flaw_report_text
    out.write(render(rep))
    if args.figure:
        from .plotting import plot_flaw_frontier

        plot_flaw_frontier(rep, args.figure)
    exact_ok = rep.exact_im_window.digits == rep.oracle_im_window.digits
    return EXIT_OK if rep.frontier_consistent and exact_ok else EXIT_MISMATCH


def cmd_bn_table(args, out) -> int:
    if args.count > 10_000:
        raise UsageError("bn-table supports N <= 10000")
    seq = b_sequence(args.count)
    render = report.bn_table_structured if args.format == "structured" else report.bn_table_text
    out.write(render(seq))
    if args.figure:
        from .plotting import plot_bn_ratio

        plot_bn_ratio(seq, args.figure)
    return EXIT_OK if all(ok for *_, ok in report.bn_rows(seq)) else EXIT_MISMATCH


COMMANDS = {
    "extract": cmd_extract,
    "verify": cmd_verify,
    "flaw-report": cmd_flaw_report,
    "bn-table": cmd_bn_table,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    oracle.use_cache(args.oracle_cache)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ConditionError, ValueError) as exc:
        if isinstance(exc, oracle.PrecisionError):
            print(f"bbpdigits: oracle precision refused: {exc}", file=sys.stderr)
            return EXIT_PRECISION
        print(f"bbpdigits: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        oracle.use_cache(None)


if __name__ == "__main__":
    sys.exit(main())
