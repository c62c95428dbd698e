"""Sparse multivariate polynomials over a :class:`FieldDescriptor`.

Terms are kept in a dict ``{exponent tuple: FieldElement}`` with no zero
coefficients.  Canonical ordering is graded lex (x1 > x2 > ...), highest first.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ArityMismatch, DimensionMismatch, MixedFields, NotHomogeneous, ParseError
from .gf import Embedding, FieldDescriptor, FieldElement, apply, field_tables, parse_element

ALIASES = "xyzw"


class _ZeroDegree:
    """Degree of the zero polynomial. Deliberately unordered: comparing it raises."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ZERO_DEGREE"


ZERO_DEGREE = _ZeroDegree()


def var_names(nvars: int, first_index: int = 1) -> list[str]:
    if nvars <= len(ALIASES):
        return list(ALIASES[:nvars])
    return [f"x{i + first_index}" for i in range(nvars)]


def _grlex_key(e):
    return (sum(e), e)


class MultiPoly:
    def __init__(self, nvars: int, terms: Mapping[tuple, FieldElement], field: FieldDescriptor):
        self.nvars = nvars
        self.field = field
        clean = {}
        for e, c in terms.items():
            e = tuple(int(v) for v in e)
            if len(e) != nvars:
                raise ArityMismatch(f"exponent {e} has length {len(e)}, expected {nvars}")
            c = field.element(c)
            if not c.is_zero():
                clean[e] = c
        self.terms = clean

    # constructors
    @classmethod
    def zero(cls, nvars, field):
        return cls(nvars, {}, field)

    @classmethod
    def constant(cls, value, nvars, field):
        return cls(nvars, {(0,) * nvars: field.element(value)}, field)

    @classmethod
    def variable(cls, i, nvars, field):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): field.one}, field)

    # basic properties
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self):
        if not self.terms:
            return ZERO_DEGREE
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def leading_term(self):
        e, c = self.sorted_terms()[0]
        return e, c

    # arithmetic
    def _check(self, other):
        if isinstance(other, MultiPoly):
            if other.field != self.field:
                raise MixedFields("polynomials over different fields")
            if other.nvars != self.nvars:
                raise ArityMismatch("polynomials in different numbers of variables")
            return other
        if isinstance(other, (int, FieldElement)):
            return MultiPoly.constant(other, self.nvars, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiPoly(self.nvars, out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out: dict[tuple, FieldElement] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return MultiPoly(self.nvars, out, self.field)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = MultiPoly.constant(1, self.nvars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "MultiPoly":
        c = self.field.element(c)
        return MultiPoly(self.nvars, {e: v * c for e, v in self.terms.items()}, self.field)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # evaluation and substitution
    def evaluate(self, point: Sequence) -> FieldElement:
        if len(point) != self.nvars:
            raise ArityMismatch(f"point has {len(point)} coordinates, polynomial has {self.nvars} variables")
        pt = [self.field.element(x) for x in point]
        acc = self.field.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * x**k
            acc = acc + v
        return acc

    __call__ = evaluate

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose: replace variable i by images[i] (all images share nvars)."""
        if len(images) != self.nvars:
            raise ArityMismatch("need one image per variable")
        target_nv = images[0].nvars
        powers: dict[tuple[int, int], MultiPoly] = {}

        def pw(i, k):
            if (i, k) not in powers:
                powers[(i, k)] = images[i] ** k
            return powers[(i, k)]

        out = MultiPoly.zero(target_nv, self.field)
        for e, c in self.terms.items():
            t = MultiPoly.constant(c, target_nv, self.field)
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            out = out + t
        return out

    @functools.cached_property
    def compiled(self) -> tuple[np.ndarray, np.ndarray]:
        """(exponents, log-domain coefficients) arrays for the kernels."""
        tab = field_tables(self.field)
        items = self.sorted_terms()
        exps = np.array([e for e, _ in items], dtype=np.int64).reshape(len(items), self.nvars)
        coefs = np.array([tab.log[c.index] for _, c in items], dtype=np.int64)
        return exps, coefs

    # text
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r}, nvars={self.nvars}, field={self.field!r})"


def format_poly(f: MultiPoly, first_index: int = 1) -> str:
    if f.is_zero():
        return "0"
    names = var_names(f.nvars, first_index)
    parts = []
    for e, c in f.sorted_terms():
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        cs = str(c)
        if f.field.m > 1 and not c.coeffs[1:] == (0,) * (f.field.m - 1):
            cs = f"({cs})"
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        else:
            parts.append(f"{cs}*{mono}")
    return "+".join(parts)


def parse(text: str, nvars: int, field: FieldDescriptor, first_index: int = 1) -> MultiPoly:
    """Parse ``terms joined by +/-``; a term is ``[coeff][*][var[^exp]]...``.

    Variables are ``x1..xN`` (``x0..x(N-1)`` with ``first_index=0``); for
    N <= 4 the aliases ``x, y, z, w`` also work.
    Coefficients are integers or parenthesized field elements like ``(t+1)``;
    any other parenthesized group is parsed as a polynomial, optionally raised
    to a power.
    """
    names = {f"x{i + first_index}": i for i in range(nvars)}
    if nvars <= len(ALIASES):
        names.update({a: i for i, a in enumerate(ALIASES[:nvars])})
    return _parse_sum(text, names, nvars, field)


def _parse_sum(text, names, nvars, field) -> MultiPoly:
    s = text
    pos = _skip(s, 0)
    if pos >= len(s):
        raise ParseError("empty polynomial", pos)
    result = MultiPoly.zero(nvars, field)
    sign = 1
    if s[pos] in "+-":
        sign = -1 if s[pos] == "-" else 1
        pos = _skip(s, pos + 1)
    while True:
        term, pos = _parse_factor(s, pos, names, nvars, field)
        while True:
            pos = _skip(s, pos)
            if pos < len(s) and s[pos] == "*":
                pos = _skip(s, pos + 1)
            elif pos >= len(s) or s[pos] in "+-":
                break
            factor, pos = _parse_factor(s, pos, names, nvars, field)
            term = term * factor
        result = result + term if sign > 0 else result - term
        if pos >= len(s):
            return result
        sign = -1 if s[pos] == "-" else 1
        pos = _skip(s, pos + 1)


def _skip(s, pos):
    while pos < len(s) and s[pos].isspace():
        pos += 1
    return pos


_NUM = re.compile(r"\d+")
_VAR = re.compile(r"x\d+|[a-z]")
_EXP = re.compile(r"\s*\^\s*(\d+)")


def _parse_factor(s, pos, names, nvars, field):
    if pos >= len(s):
        raise ParseError("expected a factor", pos)
    if s[pos] == "(":
        depth = 0
        for end in range(pos, len(s)):
            if s[end] == "(":
                depth += 1
            elif s[end] == ")":
                depth -= 1
                if depth == 0:
                    break
        else:
            raise ParseError("unbalanced parenthesis", pos)
        inner = s[pos + 1:end]
        try:
            val = MultiPoly.constant(parse_element(inner, field), nvars, field)
        except ParseError:
            # not a field element: treat as a parenthesized sub-polynomial
            try:
                val = _parse_sum(inner, names, nvars, field)
            except ParseError as exc:
                raise ParseError(f"bad group ({exc})", pos + 1 + exc.position) from None
        pos = end + 1
        e = _EXP.match(s, pos)
        if e:
            val = val ** int(e.group(1))
            pos = e.end()
        return val, pos
    m = _NUM.match(s, pos)
    if m:
        return MultiPoly.constant(int(m.group()) % field.p, nvars, field), m.end()
    m = _VAR.match(s, pos)
    if m and m.group() == "t" and "t" not in names and field.m > 1:
        v = MultiPoly.constant(field.gen, nvars, field)
        pos = m.end()
        e = _EXP.match(s, pos)
        if e:
            v = v ** int(e.group(1))
            pos = e.end()
        return v, pos
    if not m or m.group() not in names:
        raise ParseError(f"unknown symbol {s[pos]!r}", pos)
    v = MultiPoly.variable(names[m.group()], nvars, field)
    pos = m.end()
    e = _EXP.match(s, pos)
    if e:
        v = v ** int(e.group(1))
        pos = e.end()
    return v, pos


# --- hypersurfaces


@dataclass(frozen=True)
class Hypersurface:
    n: int
    setting: str  # "affine" | "projective"
    f: MultiPoly

    def __post_init__(self):
        if self.n < 1:
            raise DimensionMismatch("ambient dimension must be positive")
        if self.setting == "affine":
            if self.f.nvars != self.n:
                raise DimensionMismatch(f"affine A^{self.n} needs {self.n} variables, got {self.f.nvars}")
            if self.f.is_zero() or self.f.total_degree() < 1:
                raise ValueError("affine hypersurface needs a nonconstant polynomial")
        elif self.setting == "projective":
            if self.f.nvars != self.n + 1:
                raise DimensionMismatch(f"P^{self.n} needs {self.n + 1} variables, got {self.f.nvars}")
            if self.f.is_zero() or not self.f.is_homogeneous():
                raise NotHomogeneous("projective hypersurface needs a nonzero homogeneous form")
        else:
            raise ValueError(f"unknown setting {self.setting!r}")

    @property
    def d(self) -> int:
        return self.f.total_degree()

    @property
    def field(self) -> FieldDescriptor:
        return self.f.field

    @classmethod
    def affine(cls, text: str, n: int, field: FieldDescriptor) -> "Hypersurface":
        return cls(n, "affine", parse(text, n, field))

    @classmethod
    def projective(cls, text: str, n: int, field: FieldDescriptor) -> "Hypersurface":
        return cls(n, "projective", parse(text, n + 1, field, first_index=0))


def _linear_form(coeffs: Sequence[FieldElement], field, nvars, const=None) -> MultiPoly:
    terms = {}
    if const is not None:
        terms[(0,) * nvars] = const
    for i, c in enumerate(coeffs):
        e = [0] * nvars
        e[i] = 1
        terms[tuple(e)] = c
    return MultiPoly(nvars, terms, field)


def restrict_to_plane(X: Hypersurface, H) -> MultiPoly:
    """Pull f back along the plane's parametrization.

    Affine frames give f(base + s*dir1 + w*dir2) in (s, w); projective frames
    give the ternary form f(a*v0 + b*v1 + c*v2) in (a, b, c).
    """
    rows = H.rows
    F = X.field
    if H.setting != X.setting or any(len(r) != X.f.nvars for r in rows):
        raise DimensionMismatch("plane and hypersurface live in different spaces")
    if any(x.field != F for r in rows for x in r):
        raise MixedFields("plane coordinates are over a different field")
    if X.setting == "affine":
        base, d1, d2 = rows
        images = [_linear_form([d1[i], d2[i]], F, 2, base[i]) for i in range(X.n)]
    else:
        images = [_linear_form([rows[0][i], rows[1][i], rows[2][i]], F, 3) for i in range(X.n + 1)]
    return X.f.substitute(images)


def homogenize(f: MultiPoly, newvar_index: int) -> MultiPoly:
    d = f.total_degree()
    if f.is_zero():
        return MultiPoly.zero(f.nvars + 1, f.field)
    out = {}
    for e, c in f.terms.items():
        e2 = list(e)
        e2.insert(newvar_index, d - sum(e))
        out[tuple(e2)] = c
    return MultiPoly(f.nvars + 1, out, f.field)


def dehomogenize(f: MultiPoly, chart_index: int) -> MultiPoly:
    if not f.is_homogeneous():
        raise NotHomogeneous(f"{f} is not homogeneous")
    return specialize(f, {chart_index: f.field.one})


def specialize(f: MultiPoly, values: Mapping[int, FieldElement]) -> MultiPoly:
    """Set the given variables to constants and drop them."""
    keep = [i for i in range(f.nvars) if i not in values]
    out: dict[tuple, FieldElement] = {}
    for e, c in f.terms.items():
        v = c
        for i, x in values.items():
            if e[i]:
                v = v * x ** e[i]
        if v.is_zero():
            continue
        e2 = tuple(e[i] for i in keep)
        out[e2] = out[e2] + v if e2 in out else v
    return MultiPoly(len(keep), out, f.field)


def map_coefficients(f: MultiPoly, e: Embedding) -> MultiPoly:
    if f.field != e.source:
        raise MixedFields(f"polynomial over {f.field!r}, embedding from {e.source!r}")
    return MultiPoly(f.nvars, {k: apply(e, c) for k, c in f.terms.items()}, e.target)


def from_terms(nvars: int, field: FieldDescriptor, items: Iterable[tuple[tuple, object]]) -> MultiPoly:
    out: dict[tuple, FieldElement] = {}
    for e, c in items:
        c = field.element(c)
        out[tuple(e)] = out[tuple(e)] + c if tuple(e) in out else c
    return MultiPoly(nvars, out, field)
