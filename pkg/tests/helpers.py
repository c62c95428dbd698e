"""Shared oracles and strategies for the test suite."""
import itertools

from hypothesis import strategies as st

from langweil.gf import enumerate_field, make_field
from langweil.mpoly import MultiPoly


def brute_affine(f: MultiPoly) -> int:
    """Count zeros by evaluating f term by term at every point (no kernels)."""
    els = list(enumerate_field(f.field))
    return sum(1 for pt in itertools.product(els, repeat=f.nvars) if f.evaluate(pt).is_zero())


def projective_points(F, n):
    """Normalized representatives of P^n(F): first nonzero coordinate is 1."""
    els = list(enumerate_field(F))
    for lead in range(n + 1):
        for tail in itertools.product(els, repeat=n - lead):
            yield (F.zero,) * lead + (F.one,) + tail


def brute_projective(f: MultiPoly) -> int:
    return sum(1 for pt in projective_points(f.field, f.nvars - 1) if f.evaluate(pt).is_zero())


@st.composite
def polys(draw, F, nvars, max_deg=3, max_terms=5, nonconstant=True):
    """Random polynomial over F with total degree <= max_deg."""
    mons = [e for e in itertools.product(range(max_deg + 1), repeat=nvars) if sum(e) <= max_deg]
    chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=max_terms, unique=True))
    terms = {e: F.from_index(draw(st.integers(1, F.q - 1))) for e in chosen}
    f = MultiPoly(nvars, terms, F)
    if nonconstant and (f.is_zero() or f.total_degree() < 1):
        e = [0] * nvars
        e[0] = 1
        f = f + MultiPoly(nvars, {tuple(e): F.one}, F)
    return f


small_fields = st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]).map(lambda pm: make_field(*pm))
