"""Classical BBP digit extraction.

* log 2 in base 2, from ``log 2 = sum 1/(n 2^n)``, by two recipes: the
  direct one (modular head plus a tail summed until negligible) and the
  split one (modular head, ``2r`` explicit reciprocals, tail dropped on the
  strength of ``2^-2r / (d+2r+1)``).
* pi in base 16 from ``pi = sum 16^-k (4/(8k+1) - 2/(8k+4) - 1/(8k+5) - 1/(8k+6))``.

Every extractor returns the digits ``d+1 .. d+r`` after the radix point.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Callable, Optional, Sequence

from .digits import (
    DigitWindow,
    FixedFraction,
    emit_digits,
    frac_from_ratio,
    frac_neg,
    frac_sum,
    guard_digits,
)
from .gaussian import int_pow_mod

MAX_DIGITS = 10_000
PI_HEX_TERMS = ((4, 1), (-2, 4), (-1, 5), (-1, 6))


class Constant(enum.Enum):
    LOG2_BASE2 = "log2"
    PI_BASE16 = "pi16"
    PI_BASE5_FLAWED = "pi5"


@dataclass(frozen=True)
class ExtractionJob:
    constant: Constant
    d: int
    r: int

    def __post_init__(self) -> None:
        if self.d < 0:
            raise ValueError(f"offset d must be >= 0, got {self.d}")
        if not 1 <= self.r <= MAX_DIGITS:
            raise ValueError(f"digit count r must be in [1, {MAX_DIGITS}], got {self.r}")


TermFn = Callable[[int], FixedFraction]


def _chunk_sum(term: TermFn, indices: range, base: int, precision: int) -> FixedFraction:
    return frac_sum(map(term, indices), base, precision)


def accumulate(
    term: TermFn, indices: range, base: int, precision: int, workers: Optional[int] = None
) -> FixedFraction:
    """Sum ``term(n)`` over ``indices``; with ``workers > 1`` chunks go to a process pool.

    Integer accumulation mod ``base**precision`` makes the result independent
    of the schedule.
    """
    if not workers or workers <= 1 or len(indices) < 2 * workers:
        return _chunk_sum(term, indices, base, precision)
    step = -(-len(indices) // (4 * workers))
    chunks = [indices[i:i + step] for i in range(0, len(indices), step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(
            _chunk_sum, [term] * len(chunks), chunks,
            [base] * len(chunks), [precision] * len(chunks),
        )
        return frac_sum(list(parts), base, precision)


def _with_retry(run: Callable[[int], DigitWindow], guard: int) -> DigitWindow:
    window = run(guard)
    if not window.confident:
        window = run(2 * guard)
    return window


# -- log 2, base 2 -----------------------------------------------------------

def _log2_head(n: int, d: int, p: int) -> FixedFraction:
    return frac_from_ratio(int_pow_mod(2, d - n, n), n, 2, p)


def _log2_reciprocal(n: int, d: int, p: int) -> FixedFraction:
    # 2^(d-n)/n for n > d
    return frac_from_ratio(1, n << (n - d), 2, p)


def tail_bound_log2(d: int, r: int) -> Fraction:
    """Bound on ``sum_{n > d+2r} 2^(d-n)/n``."""
    return Fraction(1, 4**r * (d + 2 * r + 1))


def _log2_tail_end(d: int, p: int) -> int:
    # first n > d whose term 1/(n 2^(n-d)) drops below 2^-(p+2)
    n = d + 1
    while n << (n - d) <= 1 << (p + 2):
        n += 1
    return n


def log2_extract_direct(d: int, r: int, guard: Optional[int] = None,
                        workers: Optional[int] = None) -> DigitWindow:
    ExtractionJob(Constant.LOG2_BASE2, d, r)

    def run(g: int) -> DigitWindow:
        p = r + g
        end = _log2_tail_end(d, p)
        acc = accumulate(partial(_log2_head, d=d, p=p), range(1, d + 1), 2, p, workers)
        acc = acc + frac_sum(
            (_log2_reciprocal(n, d, p) for n in range(d + 1, end)), 2, p
        )
        return emit_digits(acc, r, start=d + 1, error=end)

    if guard is None:
        guard = guard_digits(2, d + r + guard_digits(2, d + r) + 3)
    return _with_retry(run, guard)


def log2_extract_split(d: int, r: int, guard: Optional[int] = None,
                       workers: Optional[int] = None) -> DigitWindow:
    ExtractionJob(Constant.LOG2_BASE2, d, r)
    terms = d + 2 * r

    def run(g: int) -> DigitWindow:
        p = r + g
        acc = accumulate(partial(_log2_head, d=d, p=p), range(1, d + 1), 2, p, workers)
        acc = acc + frac_sum(
            (_log2_reciprocal(n, d, p) for n in range(d + 1, terms + 1)), 2, p
        )
        tail = tail_bound_log2(d, r) * 2**p
        error = terms + -(-tail.numerator // tail.denominator)
        return emit_digits(acc, r, start=d + 1, error=error)

    if guard is None:
        guard = guard_digits(2, terms)
    return _with_retry(run, guard)


# -- pi, base 16 -------------------------------------------------------------

def _pi_hex_head(k: int, d: int, p: int) -> FixedFraction:
    acc = FixedFraction(16, p)
    for coeff, j in PI_HEX_TERMS:
        m = 8 * k + j
        c = abs(coeff) * int_pow_mod(16, d - k, m) % m
        term = frac_from_ratio(c, m, 16, p)
        acc = acc + (term if coeff > 0 else frac_neg(term))
    return acc


def _pi_hex_tail(k: int, d: int, p: int) -> FixedFraction:
    acc = FixedFraction(16, p)
    scale = 16 ** (k - d)
    for coeff, j in PI_HEX_TERMS:
        term = frac_from_ratio(abs(coeff), (8 * k + j) * scale, 16, p)
        acc = acc + (term if coeff > 0 else frac_neg(term))
    return acc


def pi_hex_extract(d: int, r: int, guard: Optional[int] = None,
                   workers: Optional[int] = None) -> DigitWindow:
    ExtractionJob(Constant.PI_BASE16, d, r)

    def run(g: int) -> DigitWindow:
        p = r + g
        # beyond k = d+p+2 all remaining terms together stay below one ulp
        end = d + p + 3
        acc = accumulate(partial(_pi_hex_head, d=d, p=p), range(0, d + 1), 16, p, workers)
        acc = acc + frac_sum((_pi_hex_tail(k, d, p) for k in range(d + 1, end)), 16, p)
        return emit_digits(acc, r, start=d + 1, error=4 * end + 1)

    if guard is None:
        guard = guard_digits(16, 4 * (d + r + guard_digits(16, 4 * (d + r)) + 3))
    return _with_retry(run, guard)


def extract(job: ExtractionJob, **kwargs) -> DigitWindow | Sequence[DigitWindow]:
    """Dispatch a job; the base-5 job returns ``(re_window, im_window)``."""
    if job.constant is Constant.LOG2_BASE2:
        return log2_extract_direct(job.d, job.r, **kwargs)
    if job.constant is Constant.PI_BASE16:
        return pi_hex_extract(job.d, job.r, **kwargs)
    from .base5 import base5_extract_flawed

    return base5_extract_flawed(job.d, job.r, **kwargs)
