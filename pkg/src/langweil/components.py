"""Geometrically irreducible F_q-components of plane curves.

Factorization is plain trial division over normalized candidates (monic in
graded lex, leading monomial of the candidate's degree), which is only
affordable for deg <= 4 and q <= 16.  Absolute irreducibility of an
F_q-irreducible factor of degree e is decided by counting its points over
F_{q^m} for a prime m > e: a non-absolutely irreducible factor keeps at most
e^2/4 points there, an absolutely irreducible one has far more.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import kernels
from ._config import FIELD_ORDER_CAP
from .counting import extension_field, zeros_exceed
from .errors import DegreeCapExceeded, OrderCapExceeded
from .gf import FieldDescriptor, embed, field_tables, is_prime
from .mpoly import MultiPoly, format_poly, map_coefficients
from .surd import Surd

MAX_FACTOR_DEGREE = 4
MAX_FACTOR_ORDER = 16
_CHUNK = 1 << 14


def monomials_upto(e: int) -> list[tuple[int, int]]:
    """Exponents (i, j) of x^i y^j with i + j <= e, ascending graded lex (x > y)."""
    return [(i, t - i) for t in range(e + 1) for i in range(t + 1)]


def candidate_families(e: int) -> list[tuple[tuple[int, int], list[tuple[int, int]]]]:
    """(leading monomial, lower monomials) for degree-e candidates, in canonical order.

    Lower monomials are listed largest first; within a family candidates run
    over coefficient digits with the first lower monomial most significant.
    """
    mons = monomials_upto(e)
    out = []
    for k, lead in enumerate(mons):
        if sum(lead) != e:
            continue
        out.append((lead, list(reversed(mons[:k]))))
    return out


def normalize(g: MultiPoly) -> MultiPoly:
    _, c = g.leading_term()
    return g.scale(c.inverse())


def divide_exact(g: MultiPoly, h: MultiPoly) -> MultiPoly | None:
    """g / h when h divides g, else None (single-divisor graded-lex division)."""
    lh, ch = h.leading_term()
    inv = ch.inverse()
    r = g
    quot = MultiPoly.zero(g.nvars, g.field)
    while not r.is_zero():
        lr, cr = r.leading_term()
        if any(a < b for a, b in zip(lr, lh)):
            return None
        mono = tuple(a - b for a, b in zip(lr, lh))
        t = MultiPoly(g.nvars, {mono: cr * inv}, g.field)
        quot = quot + t
        r = r - t * h
    return quot


def _dense(g: MultiPoly, D: int) -> np.ndarray:
    tab = field_tables(g.field)
    out = np.full((D + 1, D + 1), tab.zero, dtype=np.int64)
    for (i, j), c in g.terms.items():
        out[i, j] = tab.log[c.index]
    return out


def _candidate_poly(lead, lower, index, F: FieldDescriptor) -> MultiPoly:
    terms = {lead: F.one}
    for mono in reversed(lower):
        index, digit = divmod(index, F.q)
        terms[mono] = F.from_index(digit)
    return MultiPoly(2, terms, F)


def first_divisor(g: MultiPoly, e: int, start: tuple[int, int] = (0, 0)) -> tuple[MultiPoly, tuple[int, int]] | None:
    """Canonically first normalized degree-e polynomial dividing g, searching from ``start``."""
    F = g.field
    tab = field_tables(F)
    D = g.total_degree()
    dense = _dense(g, D)
    fams = candidate_families(e)
    fam0, idx0 = start
    for fi in range(fam0, len(fams)):
        lead, lower = fams[fi]
        lead_a = np.array(lead, dtype=np.int64)
        lower_a = np.array(lower, dtype=np.int64).reshape(len(lower), 2)
        total = F.q ** len(lower)
        lo = idx0 if fi == fam0 else 0
        while lo < total:
            hi = min(total, lo + _CHUNK)
            hit = kernels.first_divisor(dense, lead_a, lower_a, lo, hi, F.q, tab.log, tab.zech, tab.neg_shift)
            if hit >= 0:
                return _candidate_poly(lead, lower, hit, F), (fi, hit)
            lo = hi
    return None


def _check_caps(g: MultiPoly):
    if g.nvars != 2:
        raise ValueError("plane curves need a bivariate polynomial")
    if g.is_zero():
        raise ValueError("the zero polynomial has no factorization")
    if g.total_degree() > MAX_FACTOR_DEGREE:
        raise DegreeCapExceeded(f"degree {g.total_degree()} exceeds {MAX_FACTOR_DEGREE}")
    if g.field.q > MAX_FACTOR_ORDER:
        raise OrderCapExceeded(f"q = {g.field.q} exceeds {MAX_FACTOR_ORDER}")


def factorize_bivariate(g: MultiPoly) -> list[tuple[MultiPoly, int]]:
    """Normalized F_q-irreducible factors with multiplicities, in discovery order."""
    _check_caps(g)
    rem = normalize(g)
    factors: list[tuple[MultiPoly, int]] = []
    e = 1
    resume = (0, 0)
    while rem.total_degree() >= 2 * e:
        found = first_divisor(rem, e, resume)
        if found is None:
            e += 1
            resume = (0, 0)
            continue
        h, resume = found
        mult = 0
        while True:
            quot = divide_exact(rem, h)
            if quot is None:
                break
            rem = quot
            mult += 1
        factors.append((h, mult))
    if rem.total_degree() >= 1:
        factors.append((normalize(rem), 1))
    return factors


def next_prime(k: int) -> int:
    k += 1
    while not is_prime(k):
        k += 1
    return k


def separation_holds(q: int, m: int, e: int) -> bool:
    """q^m - (e-1)(e-2) q^(m/2) - e + 1 > e^2/4, decided exactly."""
    Q = q**m
    lower = Surd(Q - e + 1) - Surd.sqrt(Q, (e - 1) * (e - 2))
    return lower > Fraction(e * e, 4)


def extension_degree_for(q: int, e: int) -> int:
    m = next_prime(e)
    while not separation_holds(q, m, e):
        m = next_prime(m)
    if q**m > FIELD_ORDER_CAP:
        raise OrderCapExceeded(f"classifier needs q^m = {q}^{m} > {FIELD_ORDER_CAP}")
    return m


def is_absolutely_irreducible(g: MultiPoly) -> bool:
    """Classifier for an F_q-irreducible bivariate g (irreducibility is the caller's job)."""
    e = g.total_degree()
    if e == 1:
        return True
    m = extension_degree_for(g.field.q, e)
    big = extension_field(g.field, m)
    G = map_coefficients(g, embed(g.field, big))
    return zeros_exceed(G, Fraction(e * e, 4))


@dataclass
class Factor:
    poly: MultiPoly
    mult: int
    deg: int
    abs_irred: bool

    def to_json(self):
        return {"poly": format_poly(self.poly), "mult": self.mult, "deg": self.deg, "abs_irred": self.abs_irred}


@dataclass
class ComponentReport:
    factors: list[Factor] = dc_field(default_factory=list)

    @property
    def k(self) -> int:
        return sum(1 for f in self.factors if f.abs_irred)

    def to_json(self):
        return {"k": self.k, "factors": [f.to_json() for f in self.factors]}


def component_count(g: MultiPoly) -> ComponentReport:
    facs = factorize_bivariate(g)
    return ComponentReport([Factor(h, mult, h.total_degree(), is_absolutely_irreducible(h)) for h, mult in facs])
