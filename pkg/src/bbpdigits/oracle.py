"""Independent high-precision ground truth for pi and log 2.

Nothing here reuses the extractor arithmetic.  Each constant is computed by
two unrelated series in scaled-integer arithmetic:

* pi: Machin's ``pi/4 = 4 atan(1/5) - atan(1/239)``, and the recurrence
  series ``pi = 16/5 * sum b_n / ((2n+1) 25^n)`` with ``b_n`` generated inline.
* log 2: ``sum 1/(n 2^n)``, and ``2 atanh(1/3)``.

Results are decimal: ``numerator / 10**digits`` with ``numerator`` the exact
floor of the constant times ``10**digits`` (so the error is below one unit).

On-disk cache format (UTF-8 text)::

    # bbpdigits oracle cache v1
    <name> <digits> <decimal digit string of the numerator>
    ...
    sha256 <hex digest of every preceding line, newline-terminated>
"""

from __future__ import annotations

import hashlib
import os
import tempfile
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from .digits import DigitWindow

MAX_DIGITS = 100_000
_LOG2_10 = Fraction(3321928094887363, 10**15)  # > log2(10)


class PrecisionError(ValueError):
    """Requested precision exceeds the cap, or the value is too coarse."""


@dataclass(frozen=True)
class HighPrecisionValue:
    """``x`` with ``|x - numerator / radix**exponent| <= error / radix**exponent``."""

    numerator: int
    exponent: int
    error: int = 2
    radix: int = 10

    @classmethod
    def exact(cls, value: Fraction | int, radix: int = 2) -> HighPrecisionValue:
        value = Fraction(value)
        exponent, den = 0, value.denominator
        while den % radix == 0:
            den //= radix
            exponent += 1
        if den != 1:
            raise ValueError(f"{value} is not exact in radix {radix}")
        return cls(value.numerator * radix**exponent // value.denominator, exponent, 0, radix)

    def scaled(self, k: int) -> HighPrecisionValue:
        return HighPrecisionValue(self.numerator * k, self.exponent, self.error * abs(k), self.radix)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.radix**self.exponent)

    def error_bound(self) -> Fraction:
        return Fraction(self.error, self.radix**self.exponent)

    def truncate(self, digits: int) -> HighPrecisionValue:
        """Drop to ``digits`` places; assumes the numerator is an exact floor."""
        if digits > self.exponent:
            raise PrecisionError("cannot truncate to more digits than available")
        shift = self.radix ** (self.exponent - digits)
        return HighPrecisionValue(self.numerator // shift, digits, 1 if self.error else 0, self.radix)

    def decimal_string(self) -> str:
        whole, frac = divmod(self.numerator, self.radix**self.exponent)
        if self.radix != 10:
            raise ValueError("decimal rendering needs radix 10")
        return f"{whole}.{frac:0{self.exponent}d}" if self.exponent else str(whole)


# -- scaled-integer series ---------------------------------------------------

def _atan_inv(x: int, one: int) -> Tuple[int, int]:
    """``atan(1/x) * one`` and the number of truncated divisions."""
    total = power = one // x
    x2 = x * x
    n, sign, ops = 1, 1, 1
    while power:
        power //= x2
        n += 2
        sign = -sign
        total += sign * (power // n)
        ops += 2
    return total, ops


def _atanh_inv(x: int, one: int) -> Tuple[int, int]:
    total = power = one // x
    x2 = x * x
    n, ops = 1, 1
    while power:
        power //= x2
        n += 2
        total += power // n
        ops += 2
    return total, ops


def _pi_machin(bits: int) -> Tuple[int, int]:
    one = 1 << bits
    a, ea = _atan_inv(5, one)
    b, eb = _atan_inv(239, one)
    return 4 * (4 * a - b), 4 * (4 * ea + eb) + 4


def _pi_bn_series(bits: int) -> Tuple[int, int]:
    one = 1 << bits
    total, n, ops = 0, 0, 0
    b_prev, b_cur = None, 1
    pow25 = 1
    while True:
        term = b_cur * one // ((2 * n + 1) * pow25)
        # |b_n| < 2 * 5^n, so the remaining terms sum to below 5^-n
        total += term
        ops += 1
        if 5**n > one:
            break
        n += 1
        pow25 *= 25
        b_prev, b_cur = b_cur, (-1 if n == 1 else -6 * b_cur - 25 * b_prev)
    return 16 * total // 5, 16 * (ops + 2) // 5 + 2


def _log2_series(bits: int) -> Tuple[int, int]:
    one = 1 << bits
    total = sum((one >> n) // n for n in range(1, bits + 1))
    return total, bits + 2


def _log2_atanh(bits: int) -> Tuple[int, int]:
    t, ops = _atanh_inv(3, 1 << bits)
    return 2 * t, 2 * ops + 2


_ROUTES: Dict[str, Dict[str, Callable[[int], Tuple[int, int]]]] = {
    "pi": {"machin": _pi_machin, "bn_series": _pi_bn_series},
    "log2": {"series": _log2_series, "atanh": _log2_atanh},
}


def _decimal_floor(route: Callable[[int], Tuple[int, int]], digits: int) -> int:
    """Exact ``floor(x * 10**digits)`` from a binary route, raising guard as needed."""
    if digits > MAX_DIGITS:
        raise PrecisionError(f"precision {digits} exceeds cap {MAX_DIGITS}")
    guard = 64
    while True:
        bits = int(digits * _LOG2_10) + guard
        value, err = route(bits)
        scale = 10**digits
        lo = (value - err) * scale >> bits
        hi = (value + err) * scale >> bits
        if lo == hi:
            return lo
        guard *= 2


@lru_cache(maxsize=64)
def _constant(name: str, route: str, digits: int) -> int:
    return _decimal_floor(_ROUTES[name][route], digits)


def pi_highprec(digits: int, route: str = "machin") -> HighPrecisionValue:
    return _from_cache_or(name="pi", route=route, digits=digits)


def log2_highprec(digits: int, route: str = "series") -> HighPrecisionValue:
    return _from_cache_or(name="log2", route=route, digits=digits)


_DEFAULT_ROUTE = {"pi": "machin", "log2": "series"}


def _from_cache_or(name: str, route: str, digits: int) -> HighPrecisionValue:
    cache = _active_cache if route == _DEFAULT_ROUTE[name] else None
    if cache is not None:
        hit = cache.get(name, digits)
        if hit is not None:
            return hit
    value = HighPrecisionValue(_constant(name, route, digits), digits, 1)
    if cache is not None:
        cache.put(name, value)
    return value


def constant_highprec(name: str, digits: int) -> HighPrecisionValue:
    """``pi``, ``log2``, or ``2log2`` (the real part of the base-5 series)."""
    if name == "pi":
        return pi_highprec(digits)
    if name == "log2":
        return log2_highprec(digits)
    if name == "2log2":
        return log2_highprec(digits).scaled(2)
    raise KeyError(f"unknown constant {name!r}")


# -- digit conversion --------------------------------------------------------

def to_base_digits(x: HighPrecisionValue, base: int, d: int, r: int) -> DigitWindow:
    """Digits ``1..r`` of ``{base**d * x}``, or :class:`PrecisionError`.

    Refuses when the error bound is not below ``base**-(d+r+2)``, or when
    the uncertainty interval straddles a digit boundary.
    """
    if base < 2 or d < 0 or r < 1:
        raise ValueError("need base >= 2, d >= 0, r >= 1")
    den = x.radix**x.exponent
    if x.error * base ** (d + r + 2) >= den:
        raise PrecisionError(
            f"error bound too loose for base {base} window at d={d}, r={r}"
        )
    scale = base ** (d + r)
    lo = (x.numerator - x.error) * scale // den
    hi = (x.numerator + x.error) * scale // den
    if lo != hi:
        raise PrecisionError(f"window at d={d}, r={r} sits on a digit boundary")
    window = lo % base**r
    out: List[int] = []
    for _ in range(r):
        window, digit = divmod(window, base)
        out.append(digit)
    return DigitWindow(base, d + 1, tuple(reversed(out)), True)


def digits_needed(base: int, d: int, r: int, margin: int = 12) -> int:
    """Decimal places sufficient for a base-``base`` window at ``(d, r)``."""
    bits = (d + r + 2) * (base.bit_length())
    return int(bits / _LOG2_10) + 1 + margin


def oracle_window(name: str, base: int, d: int, r: int) -> DigitWindow:
    """True digits of a named constant, raising precision until servable."""
    margin = 12
    while True:
        x = constant_highprec(name, digits_needed(base, d, r, margin))
        try:
            return to_base_digits(x, base, d, r)
        except PrecisionError:
            if margin > 4096:
                raise
            margin *= 2


# -- exact rational helpers for the series identities ------------------------

def xi_partial_sum(N: int) -> Tuple[Fraction, Fraction]:
    """Exact ``8 * sum_{n<N} (1-2i)^-(2n+1) / (2n+1)`` as ``(re, im)``.

    Uses ``(1-2i)^-1 = (1+2i)/5`` with its own complex multiplication.
    """
    re, im = Fraction(0), Fraction(0)
    pr, pi_ = 1, 2  # (1+2i)^1
    sq_r, sq_i = -3, 4  # (1+2i)^2
    for n in range(N):
        den = (2 * n + 1) * 5 ** (2 * n + 1)
        re += Fraction(8 * pr, den)
        im += Fraction(8 * pi_, den)
        pr, pi_ = pr * sq_r - pi_ * sq_i, pr * sq_i + pi_ * sq_r
    return re, im


def xi_tail_bound(N: int) -> Fraction:
    """Bound on the omitted part after ``N`` terms, ``2 sqrt5 5^-N / (2N+1)``, sqrt5 < 9/4."""
    return Fraction(2 * 9, 4 * 5**N * (2 * N + 1))


def bn_partial_sum(N: int) -> Fraction:
    """Exact ``sum_{n<=N} b_n / ((2n+1) 25^n)``, ``b_n`` generated here."""
    total = Fraction(0)
    b_prev, b_cur = 0, 1
    for n in range(N + 1):
        if n == 1:
            b_prev, b_cur = b_cur, -1
        elif n >= 2:
            b_prev, b_cur = b_cur, -6 * b_cur - 25 * b_prev
        total += Fraction(b_cur, (2 * n + 1) * 25**n)
    return total


def bn_tail_bound(N: int) -> Fraction:
    """``sum_{n>N} 2 5^-n / (2N+3)``."""
    return Fraction(1, 2 * 5**N * (2 * N + 3))


# -- on-disk cache -------------------------------------------------------------

_HEADER = "# bbpdigits oracle cache v1"


class OracleCache:
    """Flat-file cache of decimal digit strings with a checksum line.

    Reads and writes go through a lock and files are replaced atomically, so
    concurrent readers never see a torn value.
    """

    def __init__(self, path: str | os.PathLike):
        self.path = os.fspath(path)
        self._lock = threading.Lock()
        self._entries: Dict[Tuple[str, int], str] = {}
        self._load()

    def _load(self) -> None:
        if not os.path.exists(self.path):
            return
        with open(self.path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        if not lines or lines[0] != _HEADER or not lines[-1].startswith("sha256 "):
            raise ValueError(f"{self.path}: not an oracle cache file")
        body = lines[:-1]
        digest = hashlib.sha256("".join(l + "\n" for l in body).encode()).hexdigest()
        if lines[-1].split()[1] != digest:
            raise ValueError(f"{self.path}: checksum mismatch")
        for line in body[1:]:
            name, digits, text = line.split()
            self._entries[(name, int(digits))] = text

    def _dump(self) -> None:
        body = [_HEADER] + [
            f"{name} {digits} {text}" for (name, digits), text in sorted(self._entries.items())
        ]
        payload = "".join(l + "\n" for l in body)
        digest = hashlib.sha256(payload.encode()).hexdigest()
        folder = os.path.dirname(os.path.abspath(self.path))
        fd, tmp = tempfile.mkstemp(dir=folder, prefix=".oracle-cache-")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(payload + f"sha256 {digest}\n")
        os.replace(tmp, self.path)

    def get(self, name: str, digits: int) -> Optional[HighPrecisionValue]:
        with self._lock:
            text = self._entries.get((name, digits))
            if text is None:
                # a longer entry truncates exactly because numerators are floors
                longer = [p for (n, p) in self._entries if n == name and p > digits]
                if not longer:
                    return None
                p = min(longer)
                return HighPrecisionValue(int(self._entries[(name, p)]), p, 1).truncate(digits)
        return HighPrecisionValue(int(text), digits, 1)

    def put(self, name: str, value: HighPrecisionValue) -> None:
        with self._lock:
            self._entries[(name, value.exponent)] = str(value.numerator)
            self._dump()


_active_cache: Optional[OracleCache] = None


def use_cache(path: Optional[str | os.PathLike]) -> Optional[OracleCache]:
    """Install (or with ``None`` remove) the process-wide oracle cache."""
    global _active_cache
    _active_cache = OracleCache(path) if path else None
    return _active_cache
