import random
from fractions import Fraction

import pytest

from bbpdigits import oracle
from bbpdigits.base5 import (
    ConditionError,
    Route,
    TermDecomposition,
    base5_extract_exact,
    base5_extract_flawed,
    check_condition,
    decompose,
    flaw_experiment,
    forensic_record,
    tail_bound_base5,
    term_exact_frac,
    term_residue,
)
from bbpdigits.digits import emit_digits, frac_from_ratio, frac_sum, guard_digits


def test_decompose():
    assert decompose(0) == TermDecomposition(0, 0, 1)
    assert decompose(2) == TermDecomposition(2, 1, 1)
    assert decompose(12) == TermDecomposition(12, 2, 1)
    assert decompose(7) == TermDecomposition(7, 1, 3)
    for n in range(2000):
        t = decompose(n)
        assert 5**t.k * t.m == 2 * n + 1 and t.m % 5 and t.m % 2


def test_condition_examples():
    assert check_condition(10, 3)
    assert not check_condition(0, 1)
    assert check_condition(2, 5)
    assert not check_condition(2, 6)


def test_term_residue_unit_modulus():
    for n in (0, 2, 12, 62):
        t = term_residue(n, 5 if n < 62 else 60)
        assert t.re_frac == t.im_frac == 0


def test_routes_agree_small():
    a = term_residue(1, 5, Route.DIRECT_INVERSE)
    b = term_residue(1, 5, Route.FIFTH_ROOT_TRICK)
    assert a == b
    # by hand mod 3: (1-2i)^3 = -11+2i == 1+2i, norm 5 == 2, inverse 2 * conj == 2+2i;
    # (1+2i)(2+2i) = -2+6i == 1, and 8 * 5^5 = 25000 == 1
    assert (a.residue.re, a.residue.im) == (2, 2)


def test_routes_agree_random():
    rng = random.Random(9)
    for _ in range(200):
        n = rng.randint(0, 500)
        d = decompose(n).k + rng.randint(0, 300)
        assert term_residue(n, d, Route.DIRECT_INVERSE) == term_residue(n, d, Route.FIFTH_ROOT_TRICK)


def test_exact_frac_example():
    assert term_exact_frac(0, 2) == (0, 0)
    assert term_exact_frac(0, 0) == (Fraction(3, 5), Fraction(1, 5))


def test_validity_region_exhaustive():
    for d in range(51):
        for n in range(d + 10):
            dec = decompose(n)
            if dec.k > d:
                continue
            rec = forensic_record(n, d)
            assert rec.eq3_valid == dec.in_valid_region(d)


def test_invalid_terms_have_five_power_denominators():
    for d in (3, 20, 45):
        for n in range(d, d + 30):
            if decompose(n).in_valid_region(d) or decompose(n).k > d:
                continue
            re, im = term_exact_frac(n, d)
            assert re.denominator % 5 == 0 and im.denominator % 5 == 0


def test_tail_bound():
    for d in range(0, 40, 3):
        for r in range(1, 12):
            b = tail_bound_base5(d, r)
            assert tail_bound_base5(d, r + 1) < b
            assert tail_bound_base5(d + 1, r) < b
            assert b < Fraction(1, 5 ** (2 * r - 1))
    assert tail_bound_base5(30, 5) < Fraction(1, 5**10)


def test_tail_bound_dominates_true_tail():
    # omitted part of the exact series against the oracle, imaginary component
    for d, r in ((2, 5), (10, 3), (30, 5)):
        head = sum(Fraction(8 * 5**d) * im for _, im in [_raw(n) for n in range(d + 2 * r)])
        pi = oracle.pi_highprec(120)
        true_tail = abs(Fraction(5**d) * pi.as_fraction() - head)
        assert true_tail < tail_bound_base5(d, r) + 5**d * pi.error_bound()


def _raw(n):
    # (1-2i)^-(2n+1)/(2n+1) as exact (re, im), by repeated complex multiplication
    re, im = Fraction(1, 5), Fraction(2, 5)
    zr, zi = re, im
    for _ in range(2 * n):
        zr, zi = zr * re - zi * im, zr * im + zi * re
    return zr / (2 * n + 1), zi / (2 * n + 1)


def test_flawed_requires_condition():
    with pytest.raises(ConditionError, match="log"):
        base5_extract_flawed(0, 1)
    with pytest.raises(ConditionError):
        flaw_experiment(2, 6)


def test_exact_known_digits():
    re_w, im_w = base5_extract_exact(0, 10)
    assert im_w.digits == (0, 3, 2, 3, 2, 2, 1, 4, 3, 0)
    assert re_w.digits == oracle.oracle_window("2log2", 5, 0, 10).digits


def test_exact_matches_oracle_grid():
    for d in range(0, 61, 6):
        re_w, im_w = base5_extract_exact(d, 6)
        if im_w.confident:
            assert im_w.digits == oracle.oracle_window("pi", 5, d, 6).digits
        if re_w.confident:
            assert re_w.digits == oracle.oracle_window("2log2", 5, d, 6).digits


def test_unit_terms_contribute_nothing():
    d, r = 30, 5
    p = r + guard_digits(5, d + 2 * r)
    full = [term_residue(n, d) for n in range(d + 2 * r)]
    fr = lambda ts: frac_sum((frac_from_ratio(t.im_frac.numerator, t.im_frac.denominator, 5, p) for t in ts), 5, p)
    assert fr(full) == fr([t for t in full if t.decomposition.m > 1])
    _, im_w = base5_extract_flawed(d, r)
    assert emit_digits(fr(full), r, start=d + 1).digits == im_w.digits


def test_flawed_deterministic_and_parallel():
    a = base5_extract_flawed(40, 6)
    assert a == base5_extract_flawed(40, 6)
    assert a == base5_extract_flawed(40, 6, workers=2)


def test_flaw_report_contents():
    rep = flaw_experiment(30, 5)
    assert rep.first_mismatch_im is not None
    assert rep.frontier_consistent
    assert rep.exact_im_window.digits == rep.oracle_im_window.digits
    assert len(rep.term_forensics) == 40
    for t in rep.term_forensics:
        if 2 * t.n + 1 <= rep.d - t.k:
            assert t.eq3_valid
        if t.m == 1:
            # all unit-modulus terms at d=30 sit inside the valid region
            assert t.eq3_valid


def test_unit_modulus_beyond_frontier_is_invalid():
    # n=62: 2n+1 = 125, k=3, m=1; at d=60 the shortcut claims 0 but the exact part is not
    rec = forensic_record(62, 60)
    assert rec.m == 1 and rec.claimed_re == rec.claimed_im == 0
    assert not rec.eq3_valid
    assert flaw_experiment(60, 8).frontier_consistent
