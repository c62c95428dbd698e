"""Exact numbers of the form a + b*sqrt(r) with rational a, b, r.

Signs are decided by isolating the radical and squaring, never by floats.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational


def _rational_sqrt(r: Fraction) -> Fraction | None:
    if r < 0:
        raise ValueError("negative radicand")
    n, d = r.numerator, r.denominator
    sn, sd = math.isqrt(n), math.isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    return None


class Surd:
    __slots__ = ("a", "b", "r")

    def __init__(self, a=0, b=0, r=0):
        a, b, r = Fraction(a), Fraction(b), Fraction(r)
        root = _rational_sqrt(r) if b else Fraction(0)
        if root is not None:
            a, b, r = a + b * root, Fraction(0), Fraction(0)
        self.a, self.b, self.r = a, b, r

    @classmethod
    def sqrt(cls, r, coeff=1) -> "Surd":
        return cls(0, coeff, r)

    def _lift(self, other) -> "Surd":
        if isinstance(other, Surd):
            if other.b and self.b and other.r != self.r:
                raise ValueError(f"incompatible radicands {self.r} and {other.r}")
            return other
        if isinstance(other, (int, Rational)):
            return Surd(other)
        return NotImplemented

    def _radicand(self, other: "Surd") -> Fraction:
        return self.r if self.b else other.r

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Surd(self.a + other.a, self.b + other.b, self._radicand(other))

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.r)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        r = self._radicand(other)
        return Surd(self.a * other.a + self.b * other.b * r, self.a * other.b + self.b * other.a, r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return Surd(self.a / other, self.b / other, self.r)
        return NotImplemented

    def __pow__(self, k: int):
        out = Surd(1)
        for _ in range(k):
            out = out * self
        return out

    def sign(self) -> int:
        a, b, r = self.a, self.b, self.r
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with b^2 r
        lhs, rhs = a * a, b * b * r
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def _cmp(self, other) -> int:
        other = self._lift(other)
        if other is NotImplemented:
            raise TypeError
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.r))

    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.r)

    def __repr__(self):
        if not self.b:
            return f"Surd({self.a})"
        return f"Surd({self.a} + {self.b}*sqrt({self.r}))"

    def __str__(self):
        if not self.b:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.r})" if self.a else f"{self.b}*sqrt({self.r})"


def sqrt_q(q: int, coeff=1) -> Surd:
    return Surd(0, coeff, q)
