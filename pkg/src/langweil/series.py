"""Exact coefficient ring Q[pi^2] and truncated Laurent series in u = q^(-1/2).

A ``HalfSeries`` stores coefficients by integer exponent of u together with an
O-order ``o``: everything at u^o and beyond is unknown.  The q-normalized view
used for the refinement tables reads coefficient j (a half-integer) off the
u-exponent 2j - 2, so ``u^-2 * (1 + c u + c' u^2)`` is ``q + c sqrt(q) + c'``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Mapping

from .errors import InsufficientOrder, NonUnitLeading

EXACT = math.inf

# pi^2 to 60 significant digits; the enclosure below is far wider than the error
_PI2_DIGITS = "9.86960440108935861883449099987615113531369940724079062641334"
PI2_LO = Fraction(_PI2_DIGITS) - Fraction(1, 10**55)
PI2_HI = Fraction(_PI2_DIGITS) + Fraction(1, 10**55)


class QPi2:
    """Polynomial in pi^2 with rational coefficients, e.g. 1 + pi^2/6."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Mapping[int, Fraction | int] | Fraction | int = 0):
        if not isinstance(coeffs, Mapping):
            coeffs = {0: coeffs}
        self.c = {k: Fraction(v) for k, v in coeffs.items() if v}

    @classmethod
    def pi2(cls, scale=1) -> "QPi2":
        return cls({1: scale})

    @staticmethod
    def _lift(x) -> "QPi2":
        if isinstance(x, QPi2):
            return x
        if isinstance(x, (int, Fraction)):
            return QPi2(x)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.c

    def rational(self) -> Fraction | None:
        """The value when no pi^2 term is present, else None."""
        if any(k for k in self.c):
            return None
        return self.c.get(0, Fraction(0))

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, 0) + v
        return QPi2(out)

    __radd__ = __add__

    def __neg__(self):
        return QPi2({k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        other = self._lift(other)
        return other if other is NotImplemented else self + (-other)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[int, Fraction] = {}
        for i, a in self.c.items():
            for j, b in other.c.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return QPi2(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPi2(other)
        if not isinstance(other, QPi2):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def bounds(self) -> tuple[Fraction, Fraction]:
        """Rational enclosure [lo, hi] of the real value."""
        lo = hi = Fraction(0)
        for k, v in self.c.items():
            a, b = v * PI2_LO**k, v * PI2_HI**k
            lo += min(a, b)
            hi += max(a, b)
        return lo, hi

    def sign(self) -> int:
        if self.is_zero():
            return 0
        lo, hi = self.bounds()
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        raise ArithmeticError(f"sign of {self} not resolved by the pi^2 enclosure")

    def __float__(self):
        return sum(float(v) * math.pi ** (2 * k) for k, v in self.c.items())

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for k in sorted(self.c):
            v = self.c[k]
            if k == 0:
                parts.append(str(v))
            else:
                mono = "pi^2" if k == 1 else f"pi^{2 * k}"
                parts.append(f"{v}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"QPi2({self})"


def _unit_inverse(c):
    """Inverse of a coefficient that must be a nonzero rational constant."""
    r = c.rational() if hasattr(c, "rational") else Fraction(c)
    if r is None or r == 0:
        raise NonUnitLeading(f"leading coefficient {c} is not a nonzero rational")
    return Fraction(1) / r


class HalfSeries:
    """sum_e c_e u^e + O(u^o) with coefficients in an exact ring."""

    __slots__ = ("coeffs", "o")

    def __init__(self, coeffs: Mapping[int, object] | None = None, o: float = EXACT):
        self.o = o
        self.coeffs = {}
        for e, c in (coeffs or {}).items():
            if e < o and not _is_zero(c):
                self.coeffs[int(e)] = c

    # q-normalized view
    @classmethod
    def from_q(cls, coeffs: Mapping[Fraction, object], o_order) -> "HalfSeries":
        """Build from q-normalized coefficients: exponent j means q^(1-j)."""
        o = EXACT if o_order == EXACT else int(2 * Fraction(o_order) - 2)
        return cls({int(2 * Fraction(j) - 2): c for j, c in coeffs.items()}, o)

    @property
    def o_order(self):
        return EXACT if self.o == EXACT else Fraction(self.o + 2, 2)

    def q_coeffs(self) -> dict[Fraction, object]:
        return {Fraction(e + 2, 2): c for e, c in sorted(self.coeffs.items())}

    def coefficient(self, j) -> object:
        """q-normalized coefficient at half-integer j (zero if absent, error if unknown)."""
        e = int(2 * Fraction(j) - 2)
        if e >= self.o:
            raise InsufficientOrder(f"coefficient {j} lies beyond the O-term")
        return self.coeffs.get(e, QPi2())

    # structure
    def valuation(self) -> float:
        return min(self.coeffs) if self.coeffs else self.o

    def truncate(self, o: float) -> "HalfSeries":
        return HalfSeries(self.coeffs, min(self.o, o))

    def map(self, fn: Callable) -> "HalfSeries":
        return HalfSeries({e: fn(c) for e, c in self.coeffs.items()}, self.o)

    def shift(self, k: int) -> "HalfSeries":
        """Multiply by u^k."""
        return HalfSeries({e + k: c for e, c in self.coeffs.items()}, self.o + k)

    # arithmetic
    def __add__(self, other):
        other = _as_series(other)
        o = min(self.o, other.o)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return HalfSeries(out, o)

    __radd__ = __add__

    def __neg__(self):
        return HalfSeries({e: -c for e, c in self.coeffs.items()}, self.o)

    def __sub__(self, other):
        return self + (-_as_series(other))

    def __rsub__(self, other):
        return _as_series(other) - self

    def __mul__(self, other):
        if not isinstance(other, HalfSeries):
            return self.scale(other)
        va, vb = self.valuation(), other.valuation()
        o = min(self.o + vb, other.o + va)
        out: dict[int, object] = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in other.coeffs.items():
                e = ea + eb
                if e < o:
                    out[e] = out[e] + ca * cb if e in out else ca * cb
        return HalfSeries(out, o)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, k) -> "HalfSeries":
        return HalfSeries({e: c * k for e, c in self.coeffs.items()}, self.o)

    def __pow__(self, k: int) -> "HalfSeries":
        if k == 0:
            return HalfSeries({0: QPi2(1)})
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def reciprocal(self, prec: int | None = None) -> "HalfSeries":
        """1/self; relative precision is kept, so the O-order becomes o - 2v.

        Exact inputs need an explicit ``prec`` (the O-order of the result).
        """
        if not self.coeffs:
            raise InsufficientOrder("leading coefficient is unknown")
        v = self.valuation()
        inv = _unit_inverse(self.coeffs[v])
        o = self.o - 2 * v
        if prec is not None:
            o = min(o, prec)
        if o == EXACT:
            raise InsufficientOrder("exact reciprocal needs a precision")
        # normalized x = self / (c u^v) = 1 + y, y known below o - v relative
        rel = {e - v: c * inv for e, c in self.coeffs.items()}
        n_terms = int(o + v)  # relative orders 0 .. o - (-v) - 1
        out: list = [None] * max(n_terms, 0)
        for i in range(n_terms):
            if i == 0:
                out[0] = rel[0]
                continue
            acc = None
            for k in range(1, i + 1):
                ck = rel.get(k)
                if ck is None or out[i - k] is None:
                    continue
                term = ck * out[i - k]
                acc = term if acc is None else acc + term
            out[i] = -acc if acc is not None else None
        coeffs = {i - v: c * inv for i, c in enumerate(out) if c is not None}
        return HalfSeries(coeffs, o)

    def __eq__(self, other):
        if not isinstance(other, HalfSeries):
            return NotImplemented
        return self.o == other.o and self.coeffs == other.coeffs

    def __repr__(self):
        terms = " + ".join(f"({c})*u^{e}" for e, c in sorted(self.coeffs.items())) or "0"
        return f"HalfSeries({terms} + O(u^{self.o}))"


def _is_zero(c) -> bool:
    return c.is_zero() if hasattr(c, "is_zero") else c == 0


def _as_series(x) -> HalfSeries:
    if isinstance(x, HalfSeries):
        return x
    return HalfSeries({0: QPi2._lift(x)})


def series_arith(a: HalfSeries, b, op: str) -> HalfSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown series op {op!r}")


def reciprocal(a: HalfSeries, prec: int | None = None) -> HalfSeries:
    return a.reciprocal(prec)
