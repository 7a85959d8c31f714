"""Exact Gaussian rationals.

A ``Gauss`` is a pair of :class:`fractions.Fraction` (real, imaginary).
Plain ``int`` and ``Fraction`` operands are accepted everywhere.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["Gauss", "I", "ONE", "ZERO", "as_gauss"]


class Gauss:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def conjugate(self) -> "Gauss":
        return Gauss(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __add__(self, other):
        other = as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return Gauss(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return Gauss(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return Gauss(self.re * other, self.im * other)
        if not isinstance(other, Gauss):
            return NotImplemented
        return Gauss(self.re * other.re - self.im * other.im,
                     self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("Gauss division by zero")
        num = self * other.conjugate()
        return Gauss(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        other = as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Gauss({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def as_gauss(x):
    if isinstance(x, Gauss):
        return x
    if isinstance(x, (int, Rational)):
        return Gauss(x, 0)
    return NotImplemented


ZERO = Gauss(0, 0)
ONE = Gauss(1, 0)
I = Gauss(0, 1)
