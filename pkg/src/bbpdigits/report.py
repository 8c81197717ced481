"""Text and structured renderings of windows, flaw reports and b_n tables.

Structured output is line oriented.  The first line is a schema header::

    schema kind=<flaw-report|windows|verify|bn-table> version=1

and every following line is ``<record-type> key=value ...`` with a fixed
key order per record type.  ``none`` stands for a missing value, booleans
are ``0``/``1`` and rationals are written ``p/q``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .base5 import FlawReport, ForensicRecord
from .digits import DigitWindow, parse_digit_string
from .gaussian import BnSequence

SCHEMA_VERSION = 1

TERM_FIELDS = ("n", "k", "m", "eq3_valid", "claimed_re", "claimed_im", "exact_re", "exact_im")
WINDOW_ORDER = (
    ("flawed_re", "re_window"),
    ("flawed_im", "im_window"),
    ("exact_re", "exact_re_window"),
    ("exact_im", "exact_im_window"),
    ("oracle_re", "oracle_re_window"),
    ("oracle_im", "oracle_im_window"),
)


class SchemaError(ValueError):
    pass


def _fmt(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "1" if value else "0"
    return str(value)


def _line(kind: str, pairs: Iterable[Tuple[str, object]]) -> str:
    return " ".join([kind] + [f"{k}={_fmt(v)}" for k, v in pairs])


def header(kind: str) -> str:
    return _line("schema", [("kind", kind), ("version", SCHEMA_VERSION)])


def window_line(name: str, w: DigitWindow) -> str:
    return _line("window", [
        ("name", name), ("base", w.base), ("start", w.start),
        ("digits", w.digit_string()), ("confident", w.confident),
    ])


def parse_line(line: str) -> Tuple[str, Dict[str, str]]:
    kind, *rest = line.split()
    fields = {}
    for item in rest:
        key, sep, value = item.partition("=")
        if not sep:
            raise SchemaError(f"malformed field {item!r}")
        fields[key] = value
    return kind, fields


def _opt_int(text: str) -> Optional[int]:
    return None if text == "none" else int(text)


def parse_window(fields: Dict[str, str]) -> DigitWindow:
    base = int(fields["base"])
    return DigitWindow(
        base, int(fields["start"]), parse_digit_string(fields["digits"], base),
        fields["confident"] == "1",
    )


def _check_header(lines: List[str], kind: str) -> None:
    if not lines:
        raise SchemaError("empty document")
    tag, fields = parse_line(lines[0])
    if tag != "schema" or fields.get("kind") != kind:
        raise SchemaError(f"expected a {kind} document")
    if int(fields.get("version", -1)) != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema version {fields.get('version')}")


# -- flaw report -------------------------------------------------------------

def term_values(t: ForensicRecord) -> Tuple:
    return tuple(getattr(t, f) for f in TERM_FIELDS)


def flaw_report_structured(rep: FlawReport) -> str:
    lines = [header("flaw-report"), _line("report", [
        ("d", rep.d), ("r", rep.r), ("condition_ok", rep.condition_ok),
        ("first_mismatch_re", rep.first_mismatch_re),
        ("first_mismatch_im", rep.first_mismatch_im),
        ("frontier_consistent", rep.frontier_consistent),
        ("invalid_terms", len(rep.invalid_terms)),
    ])]
    lines += [window_line(name, getattr(rep, attr)) for name, attr in WINDOW_ORDER]
    lines += [_line("term", zip(TERM_FIELDS, term_values(t))) for t in rep.term_forensics]
    return "\n".join(lines) + "\n"


def parse_flaw_report(text: str) -> FlawReport:
    lines = [l for l in text.splitlines() if l.strip()]
    _check_header(lines, "flaw-report")
    head: Dict[str, str] = {}
    windows: Dict[str, DigitWindow] = {}
    terms: List[ForensicRecord] = []
    for line in lines[1:]:
        kind, f = parse_line(line)
        if kind == "report":
            head = f
        elif kind == "window":
            windows[f["name"]] = parse_window(f)
        elif kind == "term":
            terms.append(ForensicRecord(
                int(f["n"]), int(f["k"]), int(f["m"]), f["eq3_valid"] == "1",
                *(Fraction(f[key]) for key in TERM_FIELDS[4:]),
            ))
        else:
            raise SchemaError(f"unknown record type {kind!r}")
    return FlawReport(
        int(head["d"]), int(head["r"]), head["condition_ok"] == "1",
        *(windows[name] for name, _ in WINDOW_ORDER),
        _opt_int(head["first_mismatch_re"]), _opt_int(head["first_mismatch_im"]),
        tuple(terms),
    )


def flaw_report_text(rep: FlawReport) -> str:
    out = [
        f"Base-5 flaw experiment at d={rep.d}, r={rep.r}",
        f"  condition 5^d >= 2d+4r-1: {'holds' if rep.condition_ok else 'fails'}",
        f"  Im (pi)  flawed {rep.im_window.render()}",
        f"           exact  {rep.exact_im_window.render()}",
        f"           oracle {rep.oracle_im_window.render()}",
        f"  Re (2 log 2) flawed {rep.re_window.render()}",
        f"               exact  {rep.exact_re_window.render()}",
        f"               oracle {rep.oracle_re_window.render()}",
        f"  first mismatch (Im): {_fmt(rep.first_mismatch_im)}   (Re): {_fmt(rep.first_mismatch_re)}",
        f"  shortcut wrong on {len(rep.invalid_terms)} of {len(rep.term_forensics)} terms; "
        f"validity matches 2n+1 <= d-k on every term: {'yes' if rep.frontier_consistent else 'NO'}",
        "",
        "  " + "  ".join(f"{f:>12}" for f in TERM_FIELDS),
    ]
    for t in rep.term_forensics:
        out.append("  " + "  ".join(f"{_fmt(v):>12}" for v in term_values(t)))
    return "\n".join(out) + "\n"


def parse_text_table(text: str) -> List[Tuple[str, ...]]:
    """Forensic rows from :func:`flaw_report_text`, as strings."""
    lines = text.splitlines()
    start = next(i for i, l in enumerate(lines) if l.split()[:3] == list(TERM_FIELDS[:3]))
    return [tuple(l.split()) for l in lines[start + 1:] if l.strip()]


# -- bn table ----------------------------------------------------------------

def bn_rows(seq: BnSequence) -> List[Tuple[int, int, Fraction, bool]]:
    rows = []
    for n, b in enumerate(seq):
        ratio = Fraction(abs(b), 5**n)
        rows.append((n, b, ratio, ratio < 2))
    return rows


def bn_table_text(seq: BnSequence) -> str:
    out = [f"{'n':>6}  {'b_n':>24}  {'|b_n|/5^n':>10}"]
    for n, b, ratio, ok in bn_rows(seq):
        shown = str(b) if len(str(b)) <= 24 else f"{float(b):.6e}"
        out.append(f"{n:>6}  {shown:>24}  {float(ratio):>10.6f}{'' if ok else '  BOUND VIOLATED'}")
    return "\n".join(out) + "\n"


def bn_table_structured(seq: BnSequence) -> str:
    lines = [header("bn-table")]
    for n, b, ratio, ok in bn_rows(seq):
        lines.append(_line("row", [("n", n), ("b", b), ("ratio", f"{float(ratio):.9f}"), ("ok", ok)]))
    return "\n".join(lines) + "\n"


# -- windows / verify ----------------------------------------------------------

def windows_structured(named: Sequence[Tuple[str, DigitWindow]]) -> str:
    return "\n".join([header("windows")] + [window_line(n, w) for n, w in named]) + "\n"


def windows_text(named: Sequence[Tuple[str, DigitWindow]]) -> str:
    if len(named) == 1:
        return named[0][1].render() + "\n"
    return "".join(f"{name} {w.render()}\n" for name, w in named)


VERIFY_FIELDS = ("constant", "method", "base", "d", "r", "digits", "oracle", "match", "confident")


def verify_structured(rows: Sequence[Dict[str, object]]) -> str:
    lines = [header("verify")]
    lines += [_line("check", [(k, row[k]) for k in VERIFY_FIELDS]) for row in rows]
    return "\n".join(lines) + "\n"


def verify_text(rows: Sequence[Dict[str, object]]) -> str:
    out = [f"{'constant':<10}{'method':<12}{'base':>5}{'d':>8}{'r':>5}  result"]
    for row in rows:
        verdict = "match" if row["match"] else f"MISMATCH (oracle {row['oracle']})"
        flag = "" if row["confident"] else " [unconfident]"
        out.append(
            f"{row['constant']:<10}{row['method']:<12}{row['base']:>5}{row['d']:>8}{row['r']:>5}"
            f"  {row['digits']}  {verdict}{flag}"
        )
    matched = sum(bool(r["match"]) for r in rows)
    out.append(f"{len(rows)} windows tested, {matched} match, {len(rows) - matched} mismatch")
    return "\n".join(out) + "\n"
