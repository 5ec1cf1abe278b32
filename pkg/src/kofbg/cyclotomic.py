"""Exact arithmetic in cyclotomic fields Q(zeta_e).

Values are stored in the power basis {zeta^k : 0 <= k < phi(e)} with
Fraction coefficients, canonically reduced modulo the e-th cyclotomic
polynomial.  Equality of values at the same conductor is equality of
coefficient tuples.  No floating point appears anywhere.

The conductor is fixed per character table (the exponent of the group);
binary operations on values with different conductors embed both into the
lcm first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Sequence, Union

from .errors import ValidationError

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def euler_phi(e: int) -> int:
    if e < 1:
        raise ValidationError(f"euler phi of {e}")
    out = 1
    n = e
    p = 2
    while p * p <= n:
        if n % p == 0:
            out *= p - 1
            n //= p
            while n % p == 0:
                out *= p
                n //= p
        p += 1
    if n > 1:
        out *= n - 1
    return out


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low-degree-first coefficients)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % den[-1] == 0
        q = c // den[-1]
        out[k] = q
        if q:
            for i, d in enumerate(den):
                num[k + i] -= q * d
    assert not any(num)
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Coefficients of Phi_e, low degree first, monic of degree phi(e)."""
    if e < 1:
        raise ValidationError(f"cyclotomic polynomial of {e}")
    num = [0] * (e + 1)
    num[0] = -1
    num[e] = 1
    for d in range(1, e):
        if e % d == 0:
            num = _poly_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


@dataclass(frozen=True)
class Cyc:
    """An element of Q(zeta_e) in the reduced power basis."""

    conductor: int
    coeffs: tuple[Fraction, ...]

    # -- constructors -------------------------------------------------

    @staticmethod
    def make(e: int, raw: Sequence[Rational]) -> "Cyc":
        """Canonical form of sum(raw[k] * zeta_e^k); raw may have any length."""
        if e < 1:
            raise ValidationError(f"conductor must be positive, got {e}")
        phi = euler_phi(e)
        work = [Fraction(c) for c in raw]
        # fold exponents >= e first, then reduce modulo Phi_e
        if len(work) > e:
            folded = [Fraction(0)] * e
            for k, c in enumerate(work):
                folded[k % e] += c
            work = folded
        mod = cyclotomic_polynomial(e)
        for k in range(len(work) - 1, phi - 1, -1):
            c = work[k]
            if c:
                for i, m in enumerate(mod[:-1]):
                    work[k - phi + i] -= c * m
            work.pop()
        work.extend([Fraction(0)] * (phi - len(work)))
        return Cyc(e, tuple(work))

    @staticmethod
    def from_rational(e: int, value: Rational) -> "Cyc":
        return Cyc.make(e, [Fraction(value)])

    @staticmethod
    def zero(e: int) -> "Cyc":
        return Cyc.from_rational(e, 0)

    @staticmethod
    def one(e: int) -> "Cyc":
        return Cyc.from_rational(e, 1)

    @staticmethod
    def root_of_unity(e: int, power: int = 1) -> "Cyc":
        raw = [0] * (power % e + 1)
        raw[power % e] = 1
        return Cyc.make(e, raw)

    # -- structure ----------------------------------------------------

    def embed(self, e_new: int) -> "Cyc":
        """Image under Q(zeta_e) -> Q(zeta_{e_new}) for conductor e | e_new."""
        if e_new == self.conductor:
            return self
        if e_new % self.conductor:
            raise ValidationError(f"no embedding of conductor {self.conductor} into {e_new}")
        step = e_new // self.conductor
        raw = [Fraction(0)] * e_new
        for k, c in enumerate(self.coeffs):
            raw[k * step] = c
        return Cyc.make(e_new, raw)

    def _pair(self, other: "CycLike") -> tuple["Cyc", "Cyc"]:
        if not isinstance(other, Cyc):
            other = Cyc.from_rational(self.conductor, other)
        if self.conductor == other.conductor:
            return self, other
        e = lcm(self.conductor, other.conductor)
        return self.embed(e), other.embed(e)

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "CycLike") -> "Cyc":
        a, b = self._pair(other)
        return Cyc(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "Cyc":
        return Cyc(self.conductor, tuple(-x for x in self.coeffs))

    def __sub__(self, other: "CycLike") -> "Cyc":
        return self + (-self._pair(other)[1])

    def __rsub__(self, other: "CycLike") -> "Cyc":
        return (-self) + other

    def __mul__(self, other: "CycLike") -> "Cyc":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Cyc(self.conductor, tuple(f * x for x in self.coeffs))
        a, b = self._pair(other)
        conv = [Fraction(0)] * (2 * len(a.coeffs) - 1 or 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        return Cyc.make(a.conductor, conv)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        """Multiplicative inverse, by solving the multiplication matrix."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic value")
        phi = len(self.coeffs)
        cols = []
        for i in range(phi):
            cols.append((self * Cyc.root_of_unity(self.conductor, i)).coeffs)
        aug = [[cols[j][i] for j in range(phi)] + [Fraction(1 if i == 0 else 0)] for i in range(phi)]
        sol = _solve_fraction(aug, phi)
        return Cyc(self.conductor, tuple(sol))

    def __truediv__(self, other: "CycLike") -> "Cyc":
        a, b = self._pair(other)
        return a * b.inverse()

    # -- Galois -------------------------------------------------------

    def galois(self, k: int) -> "Cyc":
        """Ring automorphism zeta |-> zeta^k, for gcd(k, e) = 1."""
        e = self.conductor
        if gcd(k % e if e > 1 else 1, e) != 1:
            raise ValidationError(f"galois twist by {k} is not coprime to the conductor {e}")
        raw = [Fraction(0)] * e
        for j, c in enumerate(self.coeffs):
            raw[(j * k) % e] += c
        return Cyc.make(e, raw)

    def conjugate(self) -> "Cyc":
        if self.conductor <= 2:
            return self
        return self.galois(self.conductor - 1)

    # -- predicates and views ------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValidationError(f"{self} is not rational")
        return self.coeffs[0]

    def is_integer(self) -> bool:
        return self.is_rational() and self.coeffs[0].denominator == 1

    def as_int(self) -> int:
        f = self.as_fraction()
        if f.denominator != 1:
            raise ValidationError(f"{self} is not an integer")
        return f.numerator

    def sort_key(self) -> tuple:
        return self.coeffs

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            z = "z" if k == 1 else f"z^{k}"
            if c == 1:
                terms.append(z)
            elif c == -1:
                terms.append(f"-{z}")
            else:
                terms.append(f"{c}*{z}")
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


CycLike = Union[Cyc, int, Fraction]


def _solve_fraction(aug: list[list[Fraction]], n: int) -> list[Fraction]:
    """Solve an n x n rational system given as an augmented matrix."""
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


# functional aliases matching the operation names used elsewhere


def cyc_normalize(e: int, raw: Sequence[Rational]) -> Cyc:
    return Cyc.make(e, raw)


def galois_apply(x: Cyc, k: int) -> Cyc:
    return x.galois(k)


def complex_conjugate(x: Cyc) -> Cyc:
    return x.conjugate()
