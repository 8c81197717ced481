"""Exact and modular arithmetic over the Gaussian integers Z[i].

Two independent powering backends are kept side by side: binary
square-and-multiply on :class:`GaussianInt`, and the 2x2 integer matrix
``[[a, -b], [b, a]]`` that represents multiplication by ``a + bi``.  They
are meant to be cross-checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, List


class InvalidModulusError(ValueError):
    """Modulus is not a positive odd integer coprime to 5."""


class NonInvertibleError(ArithmeticError):
    """Element has no inverse modulo the given modulus."""


@dataclass(frozen=True)
class GaussianInt:
    re: int
    im: int = 0

    def __add__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: GaussianInt | int) -> GaussianInt:
        if isinstance(other, int):
            return GaussianInt(self.re * other, self.im * other)
        return gauss_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> GaussianInt:
        return gauss_pow(self, n)

    def conj(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __str__(self) -> str:
        return f"{self.re}{self.im:+d}i"


ONE = GaussianInt(1, 0)
ONE_MINUS_2I = GaussianInt(1, -2)
ONE_PLUS_2I = GaussianInt(1, 2)


def validate_modulus(m: int) -> None:
    if not isinstance(m, int) or m <= 0 or m % 2 == 0 or m % 5 == 0:
        raise InvalidModulusError(
            f"modulus must be a positive odd integer coprime to 5, got {m!r}"
        )


@dataclass(frozen=True)
class GaussianResidue:
    """Element of Z[i]/(m); components are kept in ``[0, m)``."""

    re: int
    im: int
    m: int

    def __post_init__(self) -> None:
        validate_modulus(self.m)
        object.__setattr__(self, "re", self.re % self.m)
        object.__setattr__(self, "im", self.im % self.m)

    @classmethod
    def reduce(cls, z: GaussianInt, m: int) -> GaussianResidue:
        return cls(z.re, z.im, m)

    def __mul__(self, other: GaussianResidue | int) -> GaussianResidue:
        if isinstance(other, int):
            return GaussianResidue(self.re * other, self.im * other, self.m)
        return gauss_mul_mod(self, other)

    __rmul__ = __mul__

    def conj(self) -> GaussianResidue:
        return GaussianResidue(self.re, -self.im, self.m)

    def norm(self) -> int:
        """Norm reduced modulo ``m``."""
        return (self.re * self.re + self.im * self.im) % self.m

    def lift(self) -> GaussianInt:
        return GaussianInt(self.re, self.im)


def gauss_mul(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    return GaussianInt(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)


def gauss_mul_mod(a: GaussianResidue, b: GaussianResidue) -> GaussianResidue:
    if a.m != b.m:
        raise ValueError(f"moduli differ: {a.m} != {b.m}")
    return GaussianResidue(
        a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re, a.m
    )


def gauss_pow(z: GaussianInt, n: int) -> GaussianInt:
    """Binary powering in Z[i]."""
    if n < 0:
        raise ValueError("exponent must be non-negative")
    result = ONE
    base = z
    while n:
        if n & 1:
            result = gauss_mul(result, base)
        base = gauss_mul(base, base)
        n >>= 1
    return result


Matrix = tuple[int, int, int, int]


def _mat_mul(x: Matrix, y: Matrix) -> Matrix:
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def gauss_pow_matrix(z: GaussianInt, n: int) -> GaussianInt:
    """Power of ``z`` read off from the n-th power of its 2x2 matrix.

    Multiplication by ``a + bi`` acts on ``(re, im)`` as ``[[a, -b], [b, a]]``;
    the first column of the n-th power is ``z**n``.
    """
    if n < 0:
        raise ValueError("exponent must be non-negative")
    result: Matrix = (1, 0, 0, 1)
    base: Matrix = (z.re, -z.im, z.im, z.re)
    while n:
        if n & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        n >>= 1
    return GaussianInt(result[0], result[2])


def gauss_powers_recurrence(z: GaussianInt, count: int) -> List[GaussianInt]:
    """``[z**0, ..., z**(count-1)]`` from ``w_n = 2 Re(z) w_{n-1} - N(z) w_{n-2}``.

    For ``z = 1 - 2i`` this is ``a_n = 2 a_{n-1} - 5 a_{n-2}`` componentwise.
    """
    trace, norm = 2 * z.re, z.norm()
    out: List[GaussianInt] = []
    prev2, prev1 = None, ONE
    for n in range(count):
        if n == 0:
            cur = ONE
        elif n == 1:
            cur = z
        else:
            cur = prev1 * trace - prev2 * norm
        out.append(cur)
        prev2, prev1 = prev1, cur
    return out


def int_pow_mod(b: int, e: int, m: int) -> int:
    """``b**e mod m`` by square-and-multiply."""
    if m <= 0:
        raise ValueError(f"modulus must be positive, got {m}")
    if e < 0:
        raise ValueError("exponent must be non-negative")
    if m == 1:
        return 0
    result = 1
    b %= m
    while e:
        if e & 1:
            result = result * b % m
        b = b * b % m
        e >>= 1
    return result


def mod_inverse(x: int, m: int) -> int:
    """Inverse of ``x`` modulo ``m`` by the extended Euclidean algorithm."""
    if m <= 0:
        raise ValueError(f"modulus must be positive, got {m}")
    old_r, r = x % m, m
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1 and m != 1:
        raise NonInvertibleError(f"{x} is not invertible modulo {m} (gcd {old_r})")
    return old_s % m


def gauss_pow_mod(z: GaussianInt | GaussianResidue, n: int, m: int) -> GaussianResidue:
    validate_modulus(m)
    if n < 0:
        raise ValueError("exponent must be non-negative")
    base = GaussianResidue(z.re, z.im, m)
    result = GaussianResidue(1, 0, m)
    while n:
        if n & 1:
            result = gauss_mul_mod(result, base)
        base = gauss_mul_mod(base, base)
        n >>= 1
    return result


def gauss_inverse_mod(z: GaussianResidue) -> GaussianResidue:
    """Inverse in Z[i]/(m) as ``conj(z) / norm(z)``."""
    nrm = z.norm()
    if gcd(nrm, z.m) != 1:
        raise NonInvertibleError(f"norm of {z} shares a factor with {z.m}")
    return z.conj() * mod_inverse(nrm, z.m)


@dataclass(frozen=True)
class BnSequence:
    """``b_0 .. b_N`` with ``b_n = -6 b_{n-1} - 25 b_{n-2}``, ``b_0 = 1``, ``b_1 = -1``."""

    values: List[int]

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)


def b_sequence(N: int) -> BnSequence:
    if N < 0:
        raise ValueError("N must be non-negative")
    values = [1, -1][: N + 1]
    for _ in range(2, N + 1):
        values.append(-6 * values[-1] - 25 * values[-2])
    return BnSequence(values)
