from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from langweil.errors import InsufficientOrder, NonUnitLeading
from langweil.series import EXACT, PI2_HI, PI2_LO, HalfSeries, QPi2, reciprocal, series_arith


def test_qpi2_arithmetic():
    x = QPi2(1) + QPi2.pi2(Fraction(1, 6))
    assert x - 1 == QPi2.pi2(Fraction(1, 6))
    assert str(QPi2({0: Fraction(35, 2), 1: Fraction(1, 6)})) == "35/2 + 1/6*pi^2"
    assert (QPi2.pi2() * QPi2.pi2()).c == {2: Fraction(1)}
    assert QPi2(3).rational() == 3 and QPi2.pi2().rational() is None


PI_70 = "3.1415926535897932384626433832795028841971693993751058209749445923078164"


def test_pi_enclosure_and_sign():
    import decimal
    with decimal.localcontext() as ctx:
        ctx.prec = 80
        pi2 = Fraction(decimal.Decimal(PI_70) ** 2)
    assert PI2_LO < pi2 < PI2_HI
    assert PI2_HI - PI2_LO < Fraction(1, 10**50)
    # 6 - 3*pi^2/5 = 0.0782... > 0, a close call for a float-free sign test
    assert (QPi2(6) - QPi2.pi2(Fraction(3, 5))).sign() == 1
    assert (QPi2.pi2() - Fraction(98696044, 10**7)).sign() == 1
    assert (QPi2.pi2() - Fraction(98696045, 10**7)).sign() == -1
    assert QPi2().sign() == 0


def test_geometric_reciprocal():
    one_minus_u = HalfSeries({0: QPi2(1), 1: QPi2(-1)})
    inv = one_minus_u.reciprocal(prec=3)
    assert inv == HalfSeries({0: QPi2(1), 1: QPi2(1), 2: QPi2(1)}, 3)
    assert inv * inv == HalfSeries({0: QPi2(1), 1: QPi2(2), 2: QPi2(3)}, 3)
    assert reciprocal(one_minus_u, 3) == inv


def test_o_absorption():
    a = HalfSeries({0: QPi2(1)}, 1)
    b = HalfSeries({0: QPi2(1), 1: QPi2(1)}, 2)
    assert a * b == HalfSeries({0: QPi2(1)}, 1)
    assert (a + b).o == 1
    assert series_arith(a, b, "mul") == a * b


def test_q_normalized_view():
    s = HalfSeries({-2: QPi2(1), -1: QPi2(2), 0: QPi2(5)}, 1)
    assert s.o_order == Fraction(3, 2)
    assert s.coefficient(0) == QPi2(1)
    assert s.coefficient(Fraction(1, 2)) == QPi2(2)
    assert s.coefficient(1) == QPi2(5)
    with pytest.raises(InsufficientOrder):
        s.coefficient(Fraction(3, 2))
    assert HalfSeries.from_q(s.q_coeffs(), s.o_order) == s


def test_non_unit_leading():
    with pytest.raises(NonUnitLeading):
        HalfSeries({0: QPi2.pi2()}).reciprocal(prec=2)


def test_exact_series_has_no_o_term():
    s = HalfSeries({0: QPi2(2)})
    assert s.o == EXACT
    assert (s * s).o == EXACT


coef = st.fractions(min_value=-5, max_value=5, max_denominator=7)
series = st.builds(
    lambda cs, o: HalfSeries({i: QPi2(c) for i, c in enumerate(cs)}, o),
    st.lists(coef, min_size=1, max_size=4), st.integers(4, 6))


@given(series, series, series)
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


@given(series)
def test_reciprocal_inverts(a):
    if a.coeffs.get(0, QPi2()).is_zero():
        return
    prod = a * a.reciprocal(prec=a.o)
    assert prod == HalfSeries({0: QPi2(1)}, prod.o)
