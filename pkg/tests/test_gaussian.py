import random
from math import gcd

import pytest
from hypothesis import given, strategies as st

from bbpdigits.gaussian import (
    ONE,
    ONE_MINUS_2I,
    ONE_PLUS_2I,
    GaussianInt,
    GaussianResidue,
    InvalidModulusError,
    NonInvertibleError,
    b_sequence,
    gauss_inverse_mod,
    gauss_mul,
    gauss_mul_mod,
    gauss_pow,
    gauss_pow_matrix,
    gauss_pow_mod,
    gauss_powers_recurrence,
    int_pow_mod,
    mod_inverse,
)

gints = st.builds(GaussianInt, st.integers(-10**30, 10**30), st.integers(-10**30, 10**30))
valid_moduli = st.integers(1, 10**6).map(lambda x: 2 * x + 1).filter(lambda m: m % 5)


def naive_pow(z, n):
    out = ONE
    for _ in range(n):
        out = gauss_mul(out, z)
    return out


def test_mul_examples():
    assert gauss_mul(ONE_MINUS_2I, ONE_MINUS_2I) == GaussianInt(-3, -4)
    z = GaussianInt(17, -4)
    assert gauss_mul(z, ONE) == z
    square = gauss_mul(ONE_PLUS_2I, ONE_PLUS_2I)
    assert square == GaussianInt(-3, 4)
    cube = gauss_mul(ONE_PLUS_2I, square)
    assert cube == GaussianInt(-11, -2)
    assert gauss_mul(ONE_PLUS_2I, cube) == gauss_mul(square, square) == GaussianInt(-7, -24)


def test_norm_of_one_minus_2i():
    assert ONE_MINUS_2I.norm() == 5


@given(gints, gints)
def test_norm_multiplicative(a, b):
    assert gauss_mul(a, b).norm() == a.norm() * b.norm()


def test_pow_examples():
    assert gauss_pow(ONE_MINUS_2I, 2) == GaussianInt(-3, -4)
    assert gauss_pow(ONE_PLUS_2I, 5) == naive_pow(ONE_PLUS_2I, 5) == GaussianInt(41, -38)
    assert gauss_pow(ONE_MINUS_2I, 0) == ONE
    with pytest.raises(ValueError):
        gauss_pow(ONE, -1)


def test_powering_backends_agree_up_to_2000():
    seq = gauss_powers_recurrence(ONE_MINUS_2I, 2001)
    for n in range(2001):
        assert gauss_pow(ONE_MINUS_2I, n) == seq[n]
    for n in range(0, 2001, 7):
        assert gauss_pow_matrix(ONE_MINUS_2I, n) == seq[n]


@given(gints, st.integers(0, 60))
def test_backends_agree_for_any_base(z, n):
    assert gauss_pow(z, n) == gauss_pow_matrix(z, n) == gauss_powers_recurrence(z, n + 1)[n]


def test_a_n_recurrence_componentwise():
    seq = gauss_powers_recurrence(ONE_MINUS_2I, 40)
    for n in range(2, 40):
        assert seq[n].re == 2 * seq[n - 1].re - 5 * seq[n - 2].re
        assert seq[n].im == 2 * seq[n - 1].im - 5 * seq[n - 2].im


def test_residue_normalisation_and_validation():
    z = GaussianResidue(-11, 2, 7)
    assert (z.re, z.im) == (3, 2)
    for bad in (0, -3, 4, 15, 25):
        with pytest.raises(InvalidModulusError):
            GaussianResidue(1, 1, bad)
    assert GaussianResidue(5, 7, 1) == GaussianResidue(0, 0, 1)


def test_pow_mod_examples():
    assert gauss_pow_mod(ONE_MINUS_2I, 3, 7) == GaussianResidue(3, 2, 7)
    for m in (3, 7, 9, 11):
        assert gauss_pow_mod(GaussianInt(4, 9), 0, m) == GaussianResidue(1, 0, m)
    with pytest.raises(InvalidModulusError):
        gauss_pow_mod(ONE_MINUS_2I, 3, 10)


def test_pow_mod_matches_exact_reduction():
    for m in (3, 7, 9, 11, 13):
        for n in range(201):
            assert gauss_pow_mod(ONE_MINUS_2I, n, m) == GaussianResidue.reduce(
                gauss_pow(ONE_MINUS_2I, n), m
            )


@given(gints, gints, valid_moduli)
def test_reduction_is_a_homomorphism(a, b, m):
    lhs = GaussianResidue.reduce(gauss_mul(a, b), m)
    rhs = gauss_mul_mod(GaussianResidue.reduce(a, m), GaussianResidue.reduce(b, m))
    assert lhs == rhs


def test_int_pow_mod_examples():
    assert int_pow_mod(2, 10, 1000) == 24
    assert int_pow_mod(7, 0, 13) == 1
    assert int_pow_mod(7, 0, 1) == 0
    with pytest.raises(ValueError):
        int_pow_mod(2, 3, 0)


def test_int_pow_mod_against_naive():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(1, 100)
        e = rng.randint(0, 1000)
        naive = 1
        for _ in range(e):
            naive = naive * 2 % n
        assert int_pow_mod(2, e, n) == naive % n


def test_mod_inverse_examples():
    assert mod_inverse(5, 3) == 2
    assert mod_inverse(1, 97) == 1
    with pytest.raises(NonInvertibleError):
        mod_inverse(6, 9)


def test_mod_inverse_random_pairs():
    rng = random.Random(3)
    done = 0
    while done < 500:
        m = rng.randint(2, 10**12)
        x = rng.randint(-10**12, 10**12)
        if gcd(x, m) != 1:
            continue
        assert x * mod_inverse(x, m) % m == 1
        done += 1


def test_gauss_inverse_examples():
    assert gauss_inverse_mod(GaussianResidue(1, 0, 13)) == GaussianResidue(1, 0, 13)
    inv = gauss_inverse_mod(GaussianResidue(1, -2, 7))
    assert inv == GaussianResidue(3, 6, 7)
    assert gauss_mul_mod(GaussianResidue(1, -2, 7), inv) == GaussianResidue(1, 0, 7)
    with pytest.raises(NonInvertibleError):
        gauss_inverse_mod(GaussianResidue(3, 0, 9))
    with pytest.raises(NonInvertibleError):
        gauss_inverse_mod(GaussianResidue(1, 4, 17))  # norm 17



def test_gauss_inverse_random_residues():
    rng = random.Random(5)
    done = 0
    while done < 500:
        m = rng.randrange(3, 10**6, 2)
        if m % 5 == 0:
            continue
        z = GaussianResidue(rng.randrange(m), rng.randrange(m), m)
        if gcd(z.norm(), m) != 1:
            continue
        assert gauss_mul_mod(z, gauss_inverse_mod(z)) == GaussianResidue(1, 0, m)
        done += 1


def test_fifth_root_inverse_identity():
    for m in range(1, 10**4 + 1, 2):
        if m % 5 == 0:
            continue
        a = mod_inverse(5, m)
        w = GaussianResidue(a, 2 * a, m)
        assert gauss_mul_mod(w, GaussianResidue(1, -2, m)) == GaussianResidue(1, 0, m)


def test_b_sequence_values():
    seq = b_sequence(5)
    assert seq[0] == 1 and seq[1] == -1
    assert seq[2] == -19 == gauss_pow(ONE_PLUS_2I, 5).im // 2
    assert list(b_sequence(0)) == [1]
    assert len(b_sequence(10)) == 11


def test_b_sequence_closed_form_and_bound():
    seq = b_sequence(1000)
    for n, w in enumerate(gauss_powers_recurrence(ONE_PLUS_2I, 2002)[1::2]):
        assert 2 * seq[n] == w.im
        assert abs(seq[n]) < 2 * 5**n
