"""Exact truncated power series in one indeterminate u.

A series of order N stores the N+1 rational coefficients of u^0 .. u^N; all
arithmetic is exact and never consults coefficients beyond the order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Union

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class TruncatedSeries:
    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("series order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"order-{self.order} series needs {self.order + 1} coefficients")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Rational], order: int) -> TruncatedSeries:
        cs = [Fraction(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(order, tuple(cs))

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls(order, (Fraction(0),) * (order + 1))

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls.from_coeffs([1], order)

    @classmethod
    def exp_linear(cls, c: Rational, order: int) -> TruncatedSeries:
        """e^(c*u): coefficient of u^j is c^j / j!."""
        c = Fraction(c)
        return cls(order, tuple(c**j / factorial(j) for j in range(order + 1)))

    @classmethod
    def negpow(cls, m: int, order: int) -> TruncatedSeries:
        """(1-u)^(-m) for m >= 1: coefficient of u^j is binomial(m-1+j, j)."""
        if not isinstance(m, int) or m < 1:
            raise ValueError(f"negpow exponent must be a positive integer, got {m!r}")
        return cls(order, tuple(Fraction(comb(m - 1 + j, j)) for j in range(order + 1)))

    def _match(self, other: TruncatedSeries) -> None:
        if self.order != other.order:
            raise ValueError(f"series order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._match(other)
        return TruncatedSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._match(other)
        return TruncatedSeries(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._match(other)
        out = [Fraction(0)] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(self.order, tuple(out))

    def scale(self, c: Rational) -> TruncatedSeries:
        c = Fraction(c)
        return TruncatedSeries(self.order, tuple(c * a for a in self.coeffs))

    def shifted(self, k: int) -> TruncatedSeries:
        """Multiply by u^k, truncating at the order."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        out = (Fraction(0),) * min(k, self.order + 1) + self.coeffs[: self.order + 1 - k]
        return TruncatedSeries(self.order, out)
