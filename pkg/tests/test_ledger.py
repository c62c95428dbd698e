import decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from langweil.errors import IntervalOverlap
from langweil.ledger import (
    INFINITY, OUT_OF_INTERVAL, bound_report, classify_count, exceeds_cm_threshold, interval_system,
    is_prime_power, ratio_exceeds_at_cm, smallest_prime_power_above, thresholds, verify_proof_constants,
    zone_root_squared,
)
from langweil.surd import Surd


def test_q49_d3_endpoints():
    S = interval_system(49, 3)
    assert S.a[1] == 33 and S.b[1] == 64
    assert S.b[0] == Fraction(9, 4)


def test_d2_endpoints():
    for q in (5, 41, 307):
        S = interval_system(q, 2)
        assert S.b[0] == 1
        assert S.a[2] == 2 * q - 7 and S.b[2] == 2 * q + 7


@given(st.integers(2, 400), st.integers(1, 8))
def test_endpoints_against_float_formulas(q, d):
    S = interval_system(q, d)
    A, r = (d - 1) * (d - 2), q**0.5
    expect_a = [0, q - A * r - d + 1] + [k * q - A * r - d * d - d - 1 for k in range(2, d + 1)]
    expect_b = [d * d / 4, q + A * r + 1] + [k * q + A * r + d * d + d + 1 for k in range(2, d + 1)]
    assert all(abs(float(x) - y) < 1e-6 * max(1, y) for x, y in zip(S.a, expect_a))
    assert all(abs(float(x) - y) < 1e-6 * max(1, y) for x, y in zip(S.b, expect_b))


def test_projective_variant():
    S = interval_system(49, 3, "projective")
    assert S.a[1] == Surd(50) - Surd(0, 2, 49)
    assert S.infinity_point == 49**2 + 49 + 1
    assert S.b[2] == interval_system(49, 3).b[2] + 3


def test_schwartz_zippel_flag():
    assert interval_system(7, 2, schwartz_zippel_bd=True).b[2] == 14
    assert interval_system(7, 2, "projective", schwartz_zippel_bd=True).b[2] == 15


def test_classify_examples():
    S = interval_system(49, 3)
    assert classify_count(49**2, S) == INFINITY
    assert classify_count(50, S) == 1
    assert classify_count(20, S) == OUT_OF_INTERVAL
    assert classify_count(2, S) == 0


def test_ambiguous_count_raises_unless_first():
    S = interval_system(4, 2)  # I_1 = [3, 5], I_2 = [1, 15]
    assert not S.is_disjoint()
    with pytest.raises(IntervalOverlap):
        classify_count(4, S)
    assert classify_count(4, S, overlap="first") == 1
    with pytest.raises(IntervalOverlap):
        S.require_disjoint()


def test_j_merge_bins():
    S = interval_system(41, 2, j_merge=True)
    assert [lab for lab, _ in S.bins()] == ["1", "2", INFINITY]
    assert classify_count(0, S) == 1 and classify_count(41, S) == 1
    assert S.j_disjoint()


def test_upper_five_rhs_and_gl_constant():
    rep = bound_report(307, 307, 2, 2)
    e = rep.entry("explicit_upper_5")
    assert e.applicable and e.rhs.split()[0] == "312" and e.satisfied
    assert "1500" in rep.entry("lang_weil_ghorpade_lachaud").condition


def test_forbidden_interval_d2_q41():
    # RHS(5) = 1.5q - 7 = 54.5 and RHS(6) = q + 12 = 53
    rep = bound_report(54, 41, 2, 2)
    e = rep.entry("forbidden_interval")
    assert e.applicable and e.satisfied is False
    assert bound_report(53, 41, 2, 2).entry("forbidden_interval").satisfied
    assert bound_report(55, 41, 2, 2).entry("forbidden_interval").satisfied


def test_na_entries_never_report():
    rep = bound_report(10, 5, 3, 3)
    for e in rep.entries:
        if not e.applicable:
            assert e.satisfied is None
    assert rep.entry("upper_1_plus_pi2_over_6").rhs == "series"
    assert all(e.applicable for e in rep.violations())


def test_not_irreducible_disables_lang_weil():
    rep = bound_report(2 * 307, 307, 2, 2, geometrically_irreducible=False)
    assert not rep.entry("aubry_perret").applicable
    assert rep.violations() == []


def test_thresholds():
    T = thresholds(2)
    assert zone_root_squared(2) == 38
    assert T.disjointness_holds(41)
    assert not T.disjointness_holds(37)
    assert T.q_in_zone(41) and not T.q_in_zone(37)
    assert T.to_json()["smallest_zone_q"] == 41
    # 15 * 2^(13/3) = 302.38...
    assert not exceeds_cm_threshold(302, 2) and exceeds_cm_threshold(303, 2)
    assert exceeds_cm_threshold(307, 2)
    # d = 8: the threshold 15 * 2^13 is an integer and the inequality is strict
    assert not exceeds_cm_threshold(122880, 8) and exceeds_cm_threshold(122881, 8)


def test_cm_threshold_against_decimal():
    with decimal.localcontext() as ctx:
        ctx.prec = 50
        for d in range(2, 12):
            T = 15 * decimal.Decimal(d) ** (decimal.Decimal(13) / 3)
            for q in (int(T) - 1, int(T), int(T) + 1, int(T) + 2):
                if abs(q - T) < decimal.Decimal(10) ** -30:
                    continue
                assert exceeds_cm_threshold(q, d) == (q > T)


def test_prime_powers():
    assert [q for q in range(2, 30) if is_prime_power(q)] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]
    assert smallest_prime_power_above(Surd(38)) == 41


@given(st.integers(2, 300), st.fractions(1, 10, max_denominator=100), st.integers(0, 50),
       st.fractions(0, 200, max_denominator=20))
def test_ratio_exceeds_matches_decimal(d, c, c1, c2):
    with decimal.localcontext() as ctx:
        ctx.prec = 80
        D = decimal.Decimal
        T = 15 * D(d) ** (D(13) / 3)
        lhs = T / (D(c1) * T.sqrt() + D(c2.numerator) / D(c2.denominator)) if (c1 or c2) else None
        c_dec = D(c.numerator) / D(c.denominator)
        if lhs is None or abs(lhs - c_dec) < D(10) ** -40:
            return
        assert ratio_exceeds_at_cm(c, Fraction(c1), c2, d) == (lhs > c_dec)


def test_verify_constants_small():
    rep = verify_proof_constants(200)
    assert rep.passed, [c.to_json() for c in rep.checks if not c.passed]
    names = " ".join(c.name for c in rep.checks)
    assert "7.44" in names and "0.16" in names and "0.04" in names


def test_verify_constants_rejects_bad_range():
    with pytest.raises(ValueError):
        verify_proof_constants(1)
