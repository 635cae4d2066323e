"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A value is a rational polynomial in ``zeta_n = exp(2 pi i / n)`` reduced
modulo the n-th cyclotomic polynomial, so equal numbers have equal
coefficient vectors once brought to a common conductor.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

Number = Union[int, Fraction, "Cyclotomic"]


def _poly_divmod(num: list, den: list) -> tuple:
    """Long division of integer/rational polynomials (low degree first), monic divisor."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            c = c / lead if lead != 1 else c
            q[shift] = c
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(int(c) for c in poly)


def _reduce(coeffs: list, n: int) -> tuple:
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    coeffs = list(coeffs)
    for top in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[top]
        if c:
            for i, p in enumerate(phi):
                coeffs[top - deg + i] -= c * p
    out = coeffs[:deg] + [0] * (deg - len(coeffs[:deg]))
    return tuple(Fraction(c) for c in out)


def _unit(k: int, n: int) -> complex:
    """exp(2 pi i k / n), exact at multiples of a quarter turn."""
    k %= n
    if (4 * k) % n == 0:
        return (1, 1j, -1, -1j)[4 * k // n]
    return cmath.exp(2j * cmath.pi * k / n)


class Cyclotomic:
    """An element of Q(zeta_n)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Iterable = (0,), _reduced: bool = False):
        self.n = int(n)
        self.coeffs = tuple(coeffs) if _reduced else _reduce(list(coeffs), self.n)

    # constructors
    @classmethod
    def rational(cls, q, n: int = 1) -> "Cyclotomic":
        return cls(n, [Fraction(q)])

    @classmethod
    def root_of_unity(cls, n: int, k: int) -> "Cyclotomic":
        k %= n
        c = [0] * (k + 1)
        c[k] = 1
        return cls(n, c)

    @classmethod
    def from_exponent_counts(cls, n: int, counts: Iterable) -> "Cyclotomic":
        """sum_k counts[k] zeta_n^k."""
        return cls(n, list(counts))

    # conductor handling
    def lift(self, m: int) -> "Cyclotomic":
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot lift conductor {self.n} to {m}")
        step = m // self.n
        c = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for k, a in enumerate(self.coeffs):
            c[k * step] = a
        return Cyclotomic(m, c)

    @staticmethod
    def _coerce(a, b) -> tuple:
        if not isinstance(b, Cyclotomic):
            b = Cyclotomic(a.n, [Fraction(b)])
        if a.n == b.n:
            return a, b
        m = a.n * b.n // gcd(a.n, b.n)
        return a.lift(m), b.lift(m)

    # arithmetic
    def __add__(self, other: Number) -> "Cyclotomic":
        a, b = self._coerce(self, other)
        return Cyclotomic(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)], _reduced=True)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.n, [-x for x in self.coeffs], _reduced=True)

    def __sub__(self, other: Number) -> "Cyclotomic":
        return self + (-other)

    def __rsub__(self, other: Number) -> "Cyclotomic":
        return (-self) + other

    def __mul__(self, other: Number) -> "Cyclotomic":
        if not isinstance(other, Cyclotomic):
            q = Fraction(other)
            return Cyclotomic(self.n, [x * q for x in self.coeffs], _reduced=True)
        a, b = self._coerce(self, other)
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(a.n, prod)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if not other.is_rational():
                raise ZeroDivisionError("division only by rationals is supported")
            other = other.rational_value()
        q = Fraction(other)
        return Cyclotomic(self.n, [x / q for x in self.coeffs], _reduced=True)

    def conjugate(self) -> "Cyclotomic":
        n = self.n
        c = [Fraction(0)] * n
        for k, a in enumerate(self.coeffs):
            c[(-k) % n] += a
        return Cyclotomic(n, c)

    def galois(self, j: int) -> "Cyclotomic":
        """Apply zeta -> zeta^j (j coprime to the conductor)."""
        n = self.n
        c = [Fraction(0)] * n
        for k, a in enumerate(self.coeffs):
            c[(k * j) % n] += a
        return Cyclotomic(n, c)

    # queries
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __complex__(self) -> complex:
        return complex(sum(float(a) * _unit(k, self.n) for k, a in enumerate(self.coeffs) if a))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic(self.n, [Fraction(other)])
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._coerce(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.rational_value())
        z = complex(self)
        return hash((round(z.real, 9), round(z.imag, 9)))

    def __repr__(self) -> str:
        if self.is_rational():
            return str(self.rational_value())
        terms = []
        for k, a in enumerate(self.coeffs):
            if a:
                terms.append(f"{a}" if k == 0 else f"{a}*z{self.n}^{k}")
        return " + ".join(terms)
