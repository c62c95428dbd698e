from fractions import Fraction

import pytest

from langweil.refine import (
    harmonic, iterate, lower_a1, refine_lower, refine_upper, seed_series, upper_b1,
)
from langweil.series import HalfSeries, QPi2

PI2_6 = QPi2.pi2(Fraction(1, 6))


def test_d3_upper_first_step():
    U = refine_upper(seed_series(), 3)
    assert U.coefficient(0) == QPi2(1)
    assert U.coefficient(Fraction(1, 2)) == QPi2(2)
    assert U.coefficient(1) == 1 + PI2_6
    assert U.o_order == Fraction(3, 2)


def test_d3_lower_first_step():
    L = refine_lower(seed_series(), seed_series(), 3)
    assert [L.coefficient(j) for j in (0, Fraction(1, 2), 1)] == [QPi2(1), QPi2(-2), QPi2(-3)]


def test_d2_exact_sums():
    U = refine_upper(seed_series(), 2, relax_pi=False)
    assert U.coefficient(Fraction(1, 2)) == QPi2(0)
    assert U.coefficient(1) == QPi2(2)


def test_d1_both_sides():
    U = refine_upper(seed_series(), 1)
    L = refine_lower(seed_series(), seed_series(), 1)
    assert U.coefficient(Fraction(1, 2)) == QPi2(0) and U.coefficient(1) == QPi2(1)
    assert L.coefficient(Fraction(1, 2)) == QPi2(0) and L.coefficient(1) == QPi2(-1)


@pytest.mark.parametrize("d", range(2, 11))
def test_first_and_second_iteration_targets(d):
    A = (d - 1) * (d - 2)
    t1 = iterate(1, d)
    assert t1.C(Fraction(1, 2)) == t1.D(Fraction(1, 2)) == QPi2(A)
    assert t1.C(1) == 1 + PI2_6
    assert t1.D(1) == QPi2(d)
    t2 = iterate(2, d)
    assert t2.D(Fraction(3, 2)) == QPi2(2 * A)
    assert t2.D(2) == QPi2(2 * A * A + Fraction(d * d, 2) + d + 2) + PI2_6
    # the second pass does not disturb what the first one fixed
    for j in (Fraction(1, 2), 1):
        assert t2.C(j) == t1.C(j) and t2.D(j) == t1.D(j)


def test_d3_table_rows():
    rows = iterate(2, 3).rows()
    assert [r["j"] for r in rows] == ["1/2", "1", "3/2", "2"]
    assert rows[-1]["D"] == "35/2 + 1/6*pi^2"


def test_relaxation_only_touches_second_harmonic():
    for d in range(2, 8):
        exact = iterate(1, d, relax_pi=False).C(1)
        relaxed = iterate(1, d).C(1)
        assert relaxed - exact == PI2_6 - harmonic(d - 1, 2)
        assert (relaxed - exact).sign() >= 0


def test_rmax_validation():
    with pytest.raises(ValueError):
        iterate(Fraction(1, 3), 3)


# Direct evaluation oracle: the step formulas written as explicit finite sums
# over k and evaluated with exact rationals at q = s^2.

def _value(series: HalfSeries, s: int) -> Fraction:
    """Sum of the known terms at u = 1/s."""
    total = Fraction(0)
    for e, c in series.coeffs.items():
        r = c.rational()
        assert r is not None
        total += r * Fraction(1, s) ** e
    return total


def _direct_upper(U: Fraction, d: int, s: int) -> Fraction:
    q = s * s
    A = (d - 1) * (d - 2)
    out = q + A * s + 1
    if d >= 2:
        for k in range(2, d + 1):
            a_k = k * q - A * s - (d * d + d + 1)
            inc = q + (d * d + d if k == 2 else 0)
            out += inc * U / (a_k - U) ** 2
    return out + U * q * q / (q * q - U) ** 2


def _direct_lower(U: Fraction, L: Fraction, d: int, s: int) -> Fraction:
    q = s * s
    A = (d - 1) * (d - 2)
    a1 = q - A * s - (d - 1)
    return (1 - U / (L - Fraction(d * d, 4)) ** 2) * a1


def _scaled_gaps(d, steps):
    out = []
    for s in (10**6, 10**8):
        U = L = seed_series()
        for _ in range(steps):
            Uv, Lv = _value(U, s), _value(L, s)
            U2, L2 = refine_upper(U, d, relax_pi=False), refine_lower(U, L, d, relax_pi=False)
            up_gap = (_direct_upper(Uv, d, s) - _value(U2, s)) * Fraction(s) ** int(2 * U2.o_order - 2)
            lo_gap = (_direct_lower(Uv, Lv, d, s) - _value(L2, s)) * Fraction(s) ** int(2 * L2.o_order - 2)
            U, L = U2, L2
        out.append((up_gap, lo_gap))
    return out


@pytest.mark.parametrize("d", [1, 2, 3, 5, 8])
@pytest.mark.parametrize("steps", [1, 2])
def test_series_matches_direct_evaluation(d, steps):
    # if any kept coefficient were wrong the rescaled gap would grow like sqrt(q)
    (u1, l1), (u2, l2) = _scaled_gaps(d, steps)
    A = (d - 1) * (d - 2)
    for a, b in ((u1, u2), (l1, l2)):
        assert abs(b) < 1000 * (A + 1) ** 4
        assert abs(a - b) <= Fraction(1, 100) * max(1, abs(b))


def test_upper_dominates_lower_numerically():
    for d in range(1, 11):
        t = iterate(2, d, relax_pi=False)
        for q_root in (10**3, 10**4):
            u, l = _value(t.upper, q_root), _value(t.lower, q_root)
            assert l < q_root**2 < u
            assert abs(u / q_root**2 - 1) < Fraction(d * d, q_root)


def test_building_blocks():
    assert upper_b1(3) == HalfSeries({-2: QPi2(1), -1: QPi2(2), 0: QPi2(1)})
    assert lower_a1(3) == HalfSeries({-2: QPi2(1), -1: QPi2(-2), 0: QPi2(-2)})
    assert harmonic(3, 2) == Fraction(49, 36)
