import pytest
from hypothesis import given, settings, strategies as st

from helpers import polys
from langweil.components import (
    candidate_families, component_count, divide_exact, extension_degree_for, factorize_bivariate,
    is_absolutely_irreducible, next_prime, normalize, separation_holds,
)
from langweil.errors import DegreeCapExceeded, OrderTooLarge
from langweil.gf import embed, make_field
from langweil.mpoly import MultiPoly, format_poly, map_coefficients, parse


def _product(factors, F):
    out = MultiPoly.constant(1, 2, F)
    for h, k in factors:
        out = out * h**k
    return out


def test_xy_over_f3():
    F = make_field(3)
    fs = factorize_bivariate(parse("x*y", 2, F))
    assert sorted(format_poly(h) for h, _ in fs) == ["x", "y"]
    assert all(k == 1 for _, k in fs)


def test_square_over_f2():
    fs = factorize_bivariate(parse("(x+y)^2", 2, make_field(2)))
    assert [(format_poly(h), k) for h, k in fs] == [("x+y", 2)]


def test_hermitian_irreducible_over_f4():
    g = parse("y^2+y+x^3", 2, make_field(2, 2))
    fs = factorize_bivariate(g)
    assert len(fs) == 1 and fs[0][1] == 1
    assert is_absolutely_irreducible(g)


def test_linear_is_absolutely_irreducible():
    for pm in [(2, 1), (3, 1), (2, 2), (7, 1)]:
        assert is_absolutely_irreducible(parse("x+y+1", 2, make_field(*pm)))


def test_conjugate_pair_over_f3():
    g = parse("x^2+y^2", 2, make_field(3))
    assert not is_absolutely_irreducible(g)
    assert component_count(g).k == 0


def test_component_counts():
    assert component_count(parse("x*y", 2, make_field(5))).k == 2
    rep = component_count(parse("x^2+y^2", 2, make_field(5)))
    assert rep.k == 2
    assert sorted(f["poly"] for f in rep.to_json()["factors"]) == ["x+2*y", "x+3*y"]


def test_repeated_factor_counts_once():
    rep = component_count(parse("x^2*(y+1)", 2, make_field(3)))
    assert rep.k == 2
    assert sorted(f.mult for f in rep.factors) == [1, 2]


def test_candidate_family_sizes():
    # one family per degree-e monomial; lower monomials are those preceding it in grlex
    for e in range(1, 5):
        fams = candidate_families(e)
        assert len(fams) == e + 1
        below = e * (e + 1) // 2
        assert [len(lower) for _, lower in fams] == [below + i for i in range(e + 1)]
        assert all(sum(lead) == e for lead, _ in fams)


def test_divide_exact():
    F = make_field(5)
    g = parse("x^2-y^2", 2, F)
    assert divide_exact(g, parse("x-y", 2, F)) == parse("x+y", 2, F)
    assert divide_exact(g, parse("x-2", 2, F)) is None


def test_separation_and_extension_degree():
    assert next_prime(2) == 3 and next_prime(7) == 11
    assert extension_degree_for(4, 2) == 3
    m = extension_degree_for(4, 3)
    assert m >= 5 and separation_holds(4, m, 3)
    assert extension_degree_for(16, 4) >= 5


def test_caps():
    F = make_field(2)
    with pytest.raises(DegreeCapExceeded):
        factorize_bivariate(parse("x^9+y^2+1", 2, F))
    with pytest.raises(OrderTooLarge):
        factorize_bivariate(parse("x^2+y+1", 2, make_field(17)))


field_and_curve = st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1)]).map(lambda pm: make_field(*pm)).flatmap(
    lambda F: st.tuples(st.just(F), polys(F, 2, max_deg=3, max_terms=5)))


@settings(max_examples=30)
@given(field_and_curve)
def test_factor_product_recovers_input(args):
    F, g = args
    fs = factorize_bivariate(g)
    assert _product(fs, F) == normalize(g)
    assert sum(h.total_degree() * k for h, k in fs) == g.total_degree()


@settings(max_examples=30)
@given(field_and_curve)
def test_k_bounded_by_degree(args):
    F, g = args
    rep = component_count(g)
    assert 0 <= rep.k <= g.total_degree()
    assert rep.k <= len(rep.factors)


def _splits_over(h, r):
    """Whether the F_q-irreducible h acquires a proper factor over F_{q^r}."""
    F = h.field
    big = make_field(F.p, F.m * r)
    H = map_coefficients(h, embed(F, big))
    return len(factorize_bivariate(H)) > 1 or factorize_bivariate(H)[0][1] > 1


@settings(max_examples=25)
@given(st.sampled_from([(2, 1), (3, 1), (2, 2)]).map(lambda pm: make_field(*pm)).flatmap(
    lambda F: st.tuples(st.just(F), polys(F, 2, max_deg=3, max_terms=4))))
def test_absolute_irreducibility_against_extension_factoring(args):
    # oracle: an F_q-irreducible curve of degree e fails to be absolutely
    # irreducible iff it splits over F_{q^r} for some divisor r > 1 of e
    F, g = args
    for h, _ in factorize_bivariate(g):
        e = h.total_degree()
        rs = [r for r in range(2, e + 1) if e % r == 0]
        if any(F.q**r > 16 for r in rs):
            continue
        expect = not any(_splits_over(h, r) for r in rs)
        assert is_absolutely_irreducible(h) == expect


@settings(max_examples=20)
@given(st.sampled_from([(3, 1), (5, 1), (2, 2)]).map(lambda pm: make_field(*pm)).flatmap(
    lambda F: st.tuples(st.just(F), polys(F, 2, max_deg=3, max_terms=4),
                        st.tuples(*[st.integers(0, F.q - 1)] * 3))))
def test_k_invariant_under_affine_change(args):
    F, g, (a, b, c) = args
    x, y = MultiPoly.variable(0, 2, F), MultiPoly.variable(1, 2, F)
    A, B, C = (F.from_index(i) for i in (a, b, c))
    moved = g.substitute([x + y.scale(A) + MultiPoly.constant(B, 2, F), y + MultiPoly.constant(C, 2, F)])
    assert component_count(moved).k == component_count(g).k


def test_every_listed_factor_divides():
    F = make_field(3)
    g = parse("(x+1)*(x^2+y^2)*y", 2, F)
    rep = component_count(g)
    for f in rep.factors:
        assert divide_exact(normalize(g), f.poly) is not None
    assert rep.k == 2  # x^2+y^2 is a conjugate pair over F_3
    assert {f.deg for f in rep.factors} == {1, 2}
