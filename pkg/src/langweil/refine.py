"""Iterative refinement of the constants in the two-sided point-count bounds.

Both bounds are carried as series in u = q^(-1/2) for the slice mean
mu = N / q^(n-2), whose leading term is q = u^-2.  One upper step bounds mu by
Abel summation over the interval system with Chebyshev tail estimates; one
lower step discards planes whose slice could have at most d^2/4 points.  Each
step turns bounds known to relative order r + 1/2 into bounds known to
r + 3/2.

The Chebyshev tails are summed over k symbolically: with t = k - 1 and
s = 1/t, every tail is a series whose coefficients are polynomials in s, and
the sum over t = 1..d-1 maps s^i to the harmonic number H_{d-1}^{(i)}.  The
relaxed mode replaces only H^{(2)} by pi^2/6.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InsufficientOrder
from .series import EXACT, HalfSeries, QPi2


class SPoly:
    """Polynomial in the formal variable s = 1/(k-1) with Q[pi^2] coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c = {}
        for k, v in (coeffs or {}).items():
            v = v if isinstance(v, QPi2) else QPi2(v)
            if not v.is_zero():
                self.c[k] = v

    @staticmethod
    def _lift(x) -> "SPoly":
        return x if isinstance(x, SPoly) else SPoly({0: x})

    def is_zero(self) -> bool:
        return not self.c

    def rational(self):
        if any(k for k in self.c):
            return None
        return self.c[0].rational() if self.c else Fraction(0)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out[k] + v if k in out else v
        return SPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return SPoly({k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        out = {}
        for i, a in self.c.items():
            for j, b in other.c.items():
                out[i + j] = out[i + j] + a * b if i + j in out else a * b
        return SPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._lift(other)
        return self.c == other.c

    def evaluate(self, power_sums) -> QPi2:
        """Replace s^i by power_sums(i)."""
        out = QPi2()
        for i, v in self.c.items():
            out = out + v * power_sums(i)
        return out


def _lift_s(x: HalfSeries) -> HalfSeries:
    return x.map(SPoly._lift)


def harmonic(n: int, i: int) -> Fraction:
    return sum((Fraction(1, t**i) for t in range(1, n + 1)), Fraction(0))


def _power_sums(d: int, relax_pi: bool):
    def value(i: int) -> QPi2:
        if i == 2 and relax_pi:
            return QPi2.pi2(Fraction(1, 6))
        return QPi2(harmonic(d - 1, i))
    return value


def _poly(coeffs: dict[int, int | Fraction], shift: int = -2) -> HalfSeries:
    """u^shift * (sum c_e u^e), exact."""
    return HalfSeries({e + shift: QPi2(c) for e, c in coeffs.items()})


def _check_input(*series: HalfSeries):
    for s in series:
        if s.o == EXACT:
            continue
        if s.o < -1:
            raise InsufficientOrder("input bound must be known to relative order 1/2")
        if s.coeffs.get(-2) != QPi2(1) or min(s.coeffs) < -2:
            raise InsufficientOrder("input bound must have leading term q")


def _degree_factor(d: int) -> int:
    return (d - 1) * (d - 2)


def upper_b1(d: int) -> HalfSeries:
    A = _degree_factor(d)
    return _poly({0: 1, 1: A, 2: 1})


def lower_a1(d: int) -> HalfSeries:
    A = _degree_factor(d)
    return _poly({0: 1, 1: -A, 2: -(d - 1)})


def refine_upper(upper_in: HalfSeries, d: int, relax_pi: bool = True) -> HalfSeries:
    """New upper bound for mu from an old one: b_1 + Abel-summed Chebyshev tails."""
    _check_input(upper_in)
    A = _degree_factor(d)
    U = upper_in
    target = U.o + 2
    out = upper_b1(d)
    if d >= 2:
        # a_k - U = u^-2 t (1 + s u^2 R), R = (a-shape at t = 1) - U
        R = _poly({0: 1, 1: -A, 2: -(d * d + d + 1)}) - U
        s = SPoly({1: 1})
        X = HalfSeries({0: SPoly({0: 1})}) + (_lift_s(R).shift(2)).scale(s)
        inv_sq = X.reciprocal(prec=target + 2) ** 2
        # generic tail times the increment q: s^2 u^2 U (1 + s u^2 R)^-2
        generic = (_lift_s(U).shift(2) * inv_sq).scale(SPoly({2: 1}))
        out = out + generic.map(lambda c: c.evaluate(_power_sums(d, relax_pi)))
        # b_2 - b_1 = q + d^2 + d: the extra d^2 + d at t = 1
        Y = (HalfSeries({0: QPi2(1)}) + R.shift(2)).reciprocal(prec=target + 4) ** 2
        out = out + (U.shift(4) * Y).scale(d * d + d)
    # planes containing the whole slice: U q^2 / (q^2 - U)^2
    Z = (HalfSeries({0: QPi2(1)}) - U.shift(4)).reciprocal(prec=target + 4) ** 2
    out = out + U.shift(4) * Z
    return out.truncate(target)


def refine_lower(upper_in: HalfSeries, lower_in: HalfSeries, d: int, relax_pi: bool = True) -> HalfSeries:
    """New lower bound for mu: (1 - P(bad plane)) * a_1.

    ``relax_pi`` is accepted for symmetry; any pi^2 in the result enters
    through ``upper_in``.
    """
    _check_input(upper_in, lower_in)
    U, L = upper_in, lower_in
    target = min(U.o, L.o) + 2
    gap = (L - Fraction(d * d, 4)).shift(2)  # (L - d^2/4) / q
    bad = U.shift(4) * gap.reciprocal(prec=target + 4) ** 2
    out = (HalfSeries({0: QPi2(1)}) - bad) * lower_a1(d)
    return out.truncate(target)


def seed_series() -> HalfSeries:
    """q + O(sqrt q): the weak starting bound on both sides."""
    return HalfSeries({-2: QPi2(1)}, -1)


@dataclass
class RefinementTable:
    d: int
    relax_pi: bool
    upper: HalfSeries
    lower: HalfSeries
    r: Fraction

    def C(self, j) -> QPi2:
        """Upper constant at half-order j (coefficient of q^(1-j))."""
        return self.upper.coefficient(j)

    def D(self, j) -> QPi2:
        """Lower constant at half-order j, sign-flipped so bounds read q - D q^(1-j)."""
        return -self.lower.coefficient(j)

    def rows(self) -> list[dict]:
        out = []
        j = Fraction(1, 2)
        while j <= self.r:
            out.append({"j": str(j), "C": str(self.C(j)), "D": str(self.D(j))})
            j += Fraction(1, 2)
        return out

    def to_json(self) -> dict:
        return {"d": self.d, "relax_pi": self.relax_pi, "r": str(self.r), "rows": self.rows()}


def iterate(r_max, d: int, relax_pi: bool = True) -> RefinementTable:
    """Alternate upper and lower refinement until constants through r_max are known."""
    r_max = Fraction(r_max)
    if (2 * r_max).denominator != 1 or r_max < 0:
        raise ValueError("r_max must be a non-negative multiple of 1/2")
    U = L = seed_series()
    r = Fraction(0)
    while r < r_max:
        U, L = refine_upper(U, d, relax_pi), refine_lower(U, L, d, relax_pi)
        r += 1
    return RefinementTable(d, relax_pi, U, L, r)
