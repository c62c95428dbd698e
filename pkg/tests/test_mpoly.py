import pytest
from hypothesis import given, strategies as st

from helpers import polys, small_fields
from langweil.errors import ArityMismatch, DimensionMismatch, MixedFields, NotHomogeneous, ParseError
from langweil.gf import enumerate_field, make_field
from langweil.mpoly import (
    Hypersurface, MultiPoly, dehomogenize, format_poly, homogenize, parse, specialize,
)


def test_parse_basic():
    F = make_field(5)
    f = parse("3*x^2*y - y + 4", 2, F)
    assert f.terms == {(2, 1): F(3), (0, 1): F(4), (0, 0): F(4)}
    assert f.total_degree() == 3


def test_parse_xyz_aliases_and_indexed():
    F = make_field(3)
    assert parse("x*z", 3, F) == parse("x1*x3", 3, F)


def test_parse_groups_and_powers():
    F = make_field(2)
    assert parse("(x+y)^2", 2, F) == parse("x^2+y^2", 2, F)
    assert parse("2*(x+1)", 2, make_field(3)) == parse("2*x+2", 2, make_field(3))


def test_parse_extension_coefficients():
    F = make_field(2, 2)
    f = parse("(t+1)*x^3 + y^2 + y + t", 2, F)
    assert format_poly(f) == "(t+1)*x^3+y^2+y+(t)"
    assert parse(format_poly(f), 2, F) == f


def test_parse_errors():
    F = make_field(3)
    with pytest.raises(ParseError):
        parse("x + * y", 2, F)
    with pytest.raises(ParseError):
        parse("w^2", 2, F)
    with pytest.raises(ParseError):
        parse("x^", 2, F)


def test_hypersurface_validation():
    F = make_field(3)
    with pytest.raises(NotHomogeneous):
        Hypersurface.projective("x0^2+x1", 2, F)
    with pytest.raises(DimensionMismatch):
        Hypersurface(3, "affine", parse("x+y", 2, F))
    X = Hypersurface.projective("x0*x1 - x2^2", 2, F)
    assert X.d == 2


def test_mixed_fields_and_arity():
    a = parse("x", 2, make_field(3))
    with pytest.raises(MixedFields):
        a + parse("x", 2, make_field(5))
    with pytest.raises(ArityMismatch):
        a + parse("x", 3, make_field(3))


@given(small_fields.flatmap(lambda F: st.tuples(st.just(F), polys(F, 2), polys(F, 2))))
def test_ring_operations_agree_with_evaluation(args):
    F, f, g = args
    els = list(enumerate_field(F))[:4]
    for a in els:
        for b in els:
            assert (f * g).evaluate((a, b)) == f.evaluate((a, b)) * g.evaluate((a, b))
            assert (f - g).evaluate((a, b)) == f.evaluate((a, b)) - g.evaluate((a, b))


@given(small_fields.flatmap(lambda F: st.tuples(st.just(F), polys(F, 3))))
def test_format_parse_roundtrip(args):
    F, f = args
    assert parse(format_poly(f), 3, F) == f


@given(small_fields.flatmap(lambda F: st.tuples(st.just(F), polys(F, 2))))
def test_homogenize_dehomogenize(args):
    F, f = args
    h = homogenize(f, 0)
    assert h.is_homogeneous() and h.total_degree() == f.total_degree()
    assert dehomogenize(h, 0) == f


def test_specialize():
    F = make_field(5)
    f = parse("x*y + z^2", 3, F)
    assert specialize(f, {2: F(2)}) == parse("x*y + 4", 2, F)


def test_substitute_matches_composition():
    F = make_field(7)
    f = parse("x^2 - y", 2, F)
    s, w = MultiPoly.variable(0, 2, F), MultiPoly.variable(1, 2, F)
    g = f.substitute([s + w, s * w])
    for a in enumerate_field(F):
        for b in enumerate_field(F):
            assert g.evaluate((a, b)) == f.evaluate((a + b, a * b))
