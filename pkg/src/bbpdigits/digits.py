"""Fixed-point mod-1 accumulation and digit emission in an arbitrary base.

A :class:`FixedFraction` is an integer numerator over the implicit
denominator ``base**precision``.  All arithmetic wraps modulo 1, so sums of
fractional parts can be reduced in any order or tree shape and give the
same numerator.
"""

from __future__ import annotations

import string
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Tuple

DIGIT_CHARS = string.digits + string.ascii_lowercase
SAFETY_DIGITS = 4


@dataclass(frozen=True)
class FixedFraction:
    base: int
    precision: int
    numerator: int = 0

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        if self.precision < 1:
            raise ValueError(f"precision must be positive, got {self.precision}")
        if not 0 <= self.numerator < self.modulus:
            raise ValueError("numerator out of range [0, base**precision)")

    @property
    def modulus(self) -> int:
        return self.base**self.precision

    @property
    def spec(self) -> Tuple[int, int]:
        return (self.base, self.precision)

    def __add__(self, other: FixedFraction) -> FixedFraction:
        return frac_add(self, other)

    def __neg__(self) -> FixedFraction:
        return frac_neg(self)


@dataclass(frozen=True)
class DigitWindow:
    base: int
    start: int
    digits: Tuple[int, ...]
    confident: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "digits", tuple(self.digits))
        if any(not 0 <= x < self.base for x in self.digits):
            raise ValueError(f"digit out of range for base {self.base}")

    def digit_string(self) -> str:
        if self.base > len(DIGIT_CHARS):
            return ",".join(map(str, self.digits))
        return "".join(DIGIT_CHARS[x] for x in self.digits)

    def render(self) -> str:
        flag = "confident" if self.confident else "unconfident"
        return f"{self.start}: {self.digit_string()} [{flag}]"

    def __str__(self) -> str:
        return self.render()


def parse_digit_string(text: str, base: int) -> Tuple[int, ...]:
    if base > len(DIGIT_CHARS):
        return tuple(int(x) for x in text.split(",") if x)
    return tuple(DIGIT_CHARS.index(ch) for ch in text.lower())


def guard_digits(base: int, terms: int) -> int:
    """``ceil(log_base(terms)) + 4``, computed without floating point."""
    e, power = 0, 1
    while power < max(terms, 1):
        power *= base
        e += 1
    return e + SAFETY_DIGITS


def frac_from_ratio(c: int, m: int, base: int, precision: int) -> FixedFraction:
    """``floor(c * base**precision / m)`` as a fraction; requires ``0 <= c < m``."""
    if m <= 0:
        raise ValueError(f"denominator must be positive, got {m}")
    if not 0 <= c < m:
        raise ValueError(f"need 0 <= c < m, got c={c}, m={m}")
    return FixedFraction(base, precision, c * base**precision // m)


def frac_add(a: FixedFraction, b: FixedFraction) -> FixedFraction:
    if a.spec != b.spec:
        raise ValueError(f"accumulator mismatch: {a.spec} vs {b.spec}")
    return FixedFraction(a.base, a.precision, (a.numerator + b.numerator) % a.modulus)


def frac_neg(a: FixedFraction) -> FixedFraction:
    """Complement ``base**precision - x`` (mod 1), for subtracted terms."""
    return FixedFraction(a.base, a.precision, (-a.numerator) % a.modulus)


def frac_sum(fracs: Iterable[FixedFraction], base: int, precision: int) -> FixedFraction:
    """Sequential left fold starting from zero."""
    return reduce(frac_add, fracs, FixedFraction(base, precision))


def parallel_frac_sum(
    fracs: Sequence[FixedFraction], base: int, precision: int, workers: int = 4,
    chunk: int = 64,
) -> FixedFraction:
    """Chunked reduction on a thread pool; identical to :func:`frac_sum`."""
    chunks = [fracs[i:i + chunk] for i in range(0, len(fracs), chunk)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda c: frac_sum(c, base, precision), chunks))
    return frac_sum(parts, base, precision)


def emit_digits(
    a: FixedFraction, r: int, start: int = 1, error: int = 0
) -> DigitWindow:
    """First ``r`` base-B digits of ``a``; the rest of the precision is guard.

    The window is flagged unconfident when the guard digits are all ``B-1``
    or all ``0``, or when an accumulated error of ``error`` units in the last
    place could carry into or borrow from the reported digits.
    """
    if r < 1:
        raise ValueError("digit count must be positive")
    if r > a.precision:
        raise ValueError(f"cannot emit {r} digits from precision {a.precision}")
    g = a.precision - r
    scale = a.base**g
    head, guard = divmod(a.numerator, scale)
    digits = []
    for _ in range(r):
        head, x = divmod(head, a.base)
        digits.append(x)
    digits.reverse()
    hazard = guard == 0 or guard == scale - 1
    hazard = hazard or guard + error >= scale or guard - error < 0
    return DigitWindow(a.base, start, tuple(digits), confident=not hazard)
