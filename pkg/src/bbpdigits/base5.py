"""Base-5 digits of pi from the Gaussian-integer series, and why it fails.

The constant is ``xi = 8 * sum_{n>=0} (1-2i)^-(2n+1) / (2n+1)``, whose
imaginary part is pi and whose real part is ``2 log 2``.  To get digits
``d+1 .. d+r`` the series is truncated at ``n = d+2r-1`` and each term of
``5^d xi`` is reduced modulo ``Z[i]`` through the shortcut

    8 * 5^d (1-2i)^-(2n+1) / (2n+1)  ==  (8 * 5^(d-k) (1-2i)^-(2n+1) mod m) / m

with ``2n+1 = 5^k m``.  The shortcut silently treats ``1/5`` as a unit
modulo ``m``; it is only right when ``2n+1 <= d-k``.  Both the shortcut
(:func:`base5_extract_flawed`) and the exact rational evaluation of the
same truncated sum (:func:`base5_extract_exact`) are provided, together
with :func:`flaw_experiment` which compares them term by term.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Optional, Tuple

from . import oracle
from .bbp import accumulate
from .digits import DigitWindow, FixedFraction, emit_digits, frac_from_ratio, guard_digits
from .gaussian import (
    ONE_MINUS_2I,
    ONE_PLUS_2I,
    GaussianResidue,
    gauss_inverse_mod,
    gauss_pow_matrix,
    gauss_pow_mod,
    int_pow_mod,
    mod_inverse,
)


class ConditionError(ValueError):
    """``log(2d+4r-1)/log 5 <= d`` does not hold."""


class Route(enum.Enum):
    DIRECT_INVERSE = "direct"
    FIFTH_ROOT_TRICK = "fifth-root"


@dataclass(frozen=True)
class TermDecomposition:
    n: int
    k: int
    m: int

    @property
    def odd(self) -> int:
        return 2 * self.n + 1

    def in_valid_region(self, d: int) -> bool:
        """Whether the modular shortcut is exact for this term at offset ``d``."""
        return self.odd <= d - self.k


@dataclass(frozen=True)
class XiTermResidue:
    decomposition: TermDecomposition
    residue: GaussianResidue
    re_frac: Fraction
    im_frac: Fraction


def decompose(n: int) -> TermDecomposition:
    if n < 0:
        raise ValueError("n must be non-negative")
    m, k = 2 * n + 1, 0
    while m % 5 == 0:
        m //= 5
        k += 1
    return TermDecomposition(n, k, m)


def check_condition(d: int, r: int) -> bool:
    """``log(2d+4r-1)/log 5 <= d`` in the exact form ``5**d >= 2d+4r-1``."""
    if d < 0 or r < 1:
        raise ValueError("need d >= 0 and r >= 1")
    return 5**d >= 2 * d + 4 * r - 1


def _require_condition(d: int, r: int) -> None:
    if not check_condition(d, r):
        raise ConditionError(
            f"condition log(2d+4r-1)/log(5) <= d fails for d={d}, r={r} "
            f"(5**{d} < {2 * d + 4 * r - 1})"
        )


def term_residue(n: int, d: int, route: Route = Route.DIRECT_INVERSE) -> XiTermResidue:
    """Right-hand side of the modular shortcut for term ``n``."""
    dec = decompose(n)
    if dec.k > d:
        raise ValueError(f"term n={n} has 5-adic valuation {dec.k} > d={d}")
    m, e = dec.m, dec.odd
    scale = 8 * int_pow_mod(5, d - dec.k, m)
    if route is Route.DIRECT_INVERSE:
        inv = gauss_inverse_mod(gauss_pow_mod(ONE_MINUS_2I, e, m))
    else:
        # (1-2i)^-1 = (1+2i)/5 == a(1+2i) with a = 1/5 mod m
        a = mod_inverse(5, m)
        inv = gauss_pow_mod(ONE_PLUS_2I, e, m) * int_pow_mod(a, e, m)
    res = inv * scale
    return XiTermResidue(dec, res, Fraction(res.re, m), Fraction(res.im, m))


def _frac_part(x: Fraction) -> Fraction:
    return x - math.floor(x)


def term_exact_frac(n: int, d: int) -> Tuple[Fraction, Fraction]:
    """Exact fractional parts of ``8 * 5^d (1-2i)^-(2n+1) / (2n+1)``."""
    e = 2 * n + 1
    # (1-2i)^-e = (1+2i)^e / 5^e; matrix backend keeps this independent of the residue path
    w = gauss_pow_matrix(ONE_PLUS_2I, e)
    num, den = 8 * 5**d, e * 5**e
    return _frac_part(Fraction(num * w.re, den)), _frac_part(Fraction(num * w.im, den))


def tail_bound_base5(d: int, r: int) -> Fraction:
    """``2 sqrt5 5^-2r / (2d+4r+1)`` with ``sqrt5`` replaced by ``9/4``."""
    if d < 0 or r < 1:
        raise ValueError("need d >= 0 and r >= 1")
    return Fraction(9, 2 * 25**r * (2 * d + 4 * r + 1))


def _flawed_term(n: int, d: int, p: int, part: str) -> FixedFraction:
    t = term_residue(n, d)
    frac = t.re_frac if part == "re" else t.im_frac
    return frac_from_ratio(frac.numerator, frac.denominator, 5, p)


def _exact_term(n: int, d: int, p: int, part: str) -> FixedFraction:
    re, im = term_exact_frac(n, d)
    frac = re if part == "re" else im
    return frac_from_ratio(frac.numerator, frac.denominator, 5, p)


def _extract(term, d: int, r: int, guard: Optional[int], workers: Optional[int]):
    terms = d + 2 * r

    def run(g: int) -> Tuple[DigitWindow, DigitWindow]:
        p = r + g
        tail = tail_bound_base5(d, r) * 5**p
        error = terms + -(-tail.numerator // tail.denominator)
        out = []
        for part in ("re", "im"):
            acc = accumulate(partial(term, d=d, p=p, part=part), range(terms), 5, p, workers)
            out.append(emit_digits(acc, r, start=d + 1, error=error))
        return out[0], out[1]

    g = guard if guard is not None else guard_digits(5, terms)
    windows = run(g)
    if not all(w.confident for w in windows):
        windows = run(2 * g)
    return windows


def base5_extract_flawed(d: int, r: int, guard: Optional[int] = None,
                         workers: Optional[int] = None) -> Tuple[DigitWindow, DigitWindow]:
    """``(re_window, im_window)`` of ``{5^d xi}`` via the modular shortcut, flaw included."""
    _require_condition(d, r)
    return _extract(_flawed_term, d, r, guard, workers)


def base5_extract_exact(d: int, r: int, guard: Optional[int] = None,
                        workers: Optional[int] = None) -> Tuple[DigitWindow, DigitWindow]:
    """Same truncated sum with exact rational term fractions.

    No condition on ``(d, r)``: exact evaluation never needs ``k <= d``.
    """
    if d < 0 or r < 1:
        raise ValueError("need d >= 0 and r >= 1")
    return _extract(_exact_term, d, r, guard, workers)


@dataclass(frozen=True)
class ForensicRecord:
    n: int
    k: int
    m: int
    eq3_valid: bool
    claimed_re: Fraction
    claimed_im: Fraction
    exact_re: Fraction
    exact_im: Fraction


@dataclass(frozen=True)
class FlawReport:
    d: int
    r: int
    condition_ok: bool
    re_window: DigitWindow
    im_window: DigitWindow
    exact_re_window: DigitWindow
    exact_im_window: DigitWindow
    oracle_re_window: DigitWindow
    oracle_im_window: DigitWindow
    first_mismatch_re: Optional[int]
    first_mismatch_im: Optional[int]
    term_forensics: Tuple[ForensicRecord, ...]

    @property
    def invalid_terms(self) -> Tuple[ForensicRecord, ...]:
        return tuple(t for t in self.term_forensics if not t.eq3_valid)

    @property
    def frontier_consistent(self) -> bool:
        """Every record is valid exactly when ``2n+1 <= d-k``."""
        return all(
            t.eq3_valid == (2 * t.n + 1 <= self.d - t.k) for t in self.term_forensics
        )


def first_mismatch(a: DigitWindow, b: DigitWindow) -> Optional[int]:
    """Absolute position of the first differing digit, or ``None``."""
    for i, (x, y) in enumerate(zip(a.digits, b.digits)):
        if x != y:
            return a.start + i
    return None


def forensic_record(n: int, d: int) -> ForensicRecord:
    claimed = term_residue(n, d)
    exact = term_exact_frac(n, d)
    dec = claimed.decomposition
    valid = (claimed.re_frac, claimed.im_frac) == exact
    return ForensicRecord(n, dec.k, dec.m, valid, claimed.re_frac, claimed.im_frac, *exact)


def flaw_experiment(d: int, r: int, guard: Optional[int] = None) -> FlawReport:
    _require_condition(d, r)
    re_w, im_w = base5_extract_flawed(d, r, guard)
    ex_re, ex_im = base5_extract_exact(d, r, guard)
    or_re = oracle.oracle_window("2log2", 5, d, r)
    or_im = oracle.oracle_window("pi", 5, d, r)
    records = tuple(forensic_record(n, d) for n in range(d + 2 * r))
    return FlawReport(
        d, r, True, re_w, im_w, ex_re, ex_im, or_re, or_im,
        first_mismatch(re_w, or_re), first_mismatch(im_w, or_im), records,
    )
