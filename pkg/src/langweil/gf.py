"""Finite fields F_p[t]/(h(t)) with exact element arithmetic.

Elements are coefficient vectors in the basis 1, t, ..., t^(m-1).  Every
element also has an integer *index* sum(c_i * p^i); enumeration runs in
index order, which is lexicographic on the coefficient vector read from the
top coefficient down.

Besides the object API, :func:`field_tables` exposes exp/log/Zech tables that
the numeric kernels use (the "log domain": 0 <= log < q-1 for nonzero
elements, ``q - 1`` encodes zero).
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from ._config import FIELD_ORDER_CAP
from .errors import (
    DivisionByZero,
    MixedFields,
    NoEmbedding,
    NonPrimeCharacteristic,
    OrderTooLarge,
    ParseError,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p as coefficient lists, low degree first, no trailing zeros

def _ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    a = _ptrim(a)
    b = _ptrim(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b):
        c = r[-1] * inv_lead % p
        shift = len(r) - len(b)
        quot[shift] = c
        for i, y in enumerate(b):
            r[shift + i] = (r[shift + i] - c * y) % p
        r = _ptrim(r)
    return _ptrim(quot), r


def _pgcd(a, b, p):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return a


def _ppowmod(base, e, mod, p):
    result = [1]
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def is_irreducible_mod_p(h: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial (coefficients low degree first)."""
    h = _ptrim([c % p for c in h])
    m = len(h) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**m, h, p), x, p):
        return False
    for ell in prime_factors(m):
        g = _pgcd(h, _psub(_ppowmod(x, p ** (m // ell), h, p), x, p), p)
        if len(g) != 1:
            return False
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    p: int
    m: int
    modulus: tuple[int, ...]  # c_0..c_m, monic
    q: int

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def __call__(self, value) -> "FieldElement":
        return self.element(value)

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise MixedFields(f"{value!r} does not belong to {self!r}")
            return value
        if isinstance(value, str):
            return parse_element(value, self)
        if isinstance(value, (int, np.integer)):
            # integers are read as prime-field residues
            return FieldElement(self._reduce([int(value)]), self)
        return FieldElement(self._reduce(list(value)), self)

    def from_index(self, index: int) -> "FieldElement":
        if not 0 <= index < self.q:
            raise ValueError(f"index {index} out of range for {self!r}")
        digits = []
        for _ in range(self.m):
            index, r = divmod(index, self.p)
            digits.append(r)
        return FieldElement(tuple(digits), self)

    def _reduce(self, coeffs) -> tuple[int, ...]:
        p, m = self.p, self.m
        r = [c % p for c in coeffs]
        if len(r) > m:
            r = _pdivmod(r, list(self.modulus), p)[1]
        r = list(r) + [0] * (m - len(r))
        return tuple(r[:m])

    @property
    def zero(self) -> "FieldElement":
        return FieldElement((0,) * self.m, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement((1,) + (0,) * (self.m - 1), self)

    @property
    def gen(self) -> "FieldElement":
        """The class of t (equals 0 in a prime field, where the modulus is t)."""
        return FieldElement(self._reduce([0, 1]), self)

    def elements(self) -> Iterator["FieldElement"]:
        return enumerate_field(self)


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]
    field: FieldDescriptor

    @property
    def index(self) -> int:
        p = self.field.p
        out = 0
        for c in reversed(self.coeffs):
            out = out * p + c
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def _other(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"cannot combine {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field.element(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)), self.field)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(tuple((-a) % p for a in self.coeffs), self.field)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        F = self.field
        return FieldElement(F._reduce(_pmul(_ptrim(self.coeffs), _ptrim(other.coeffs), F.p)), F)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero(f"zero has no inverse in {self.field!r}")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, np.integer)):
            return self.coeffs == self.field.element(int(other)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.field.p, self.field.m))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"{self.field!r}({format_element(self)})"


def arith(a: FieldElement, b: FieldElement | int | None, op: str) -> FieldElement:
    """Dispatch helper: op is one of add, sub, mul, div, pow, inv, neg."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    if not isinstance(b, FieldElement) or b.field != a.field:
        raise MixedFields("arith operands must share a field")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def frobenius(x: FieldElement) -> FieldElement:
    return x ** x.field.p


def format_element(x: FieldElement) -> str:
    if x.field.m == 1:
        return str(x.coeffs[0])
    parts = []
    for i in range(x.field.m - 1, -1, -1):
        c = x.coeffs[i]
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mono = "t" if i == 1 else f"t^{i}"
            parts.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(parts) if parts else "0"


_ELEMENT_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*\*?\s*(t(?:\s*\^\s*(\d+))?)?\s*")


def parse_element(text: str, field: FieldDescriptor) -> FieldElement:
    """Parse ``t^2+2t+1`` style text; bare integers are prime-field residues."""
    s = text.strip()
    if not s:
        raise ParseError("empty field element", 0)
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _ELEMENT_TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"bad field element {text!r}", pos)
        sign, num, tpart, exp = m.groups()
        if not sign and not first:
            raise ParseError("expected '+' or '-'", pos)
        if not num and not tpart:
            raise ParseError("empty term", pos)
        c = int(num) if num else 1
        deg = (int(exp) if exp else 1) if tpart else 0
        if sign == "-":
            c = -c
        coeffs[deg] = coeffs.get(deg, 0) + c
        pos = m.end()
        first = False
    top = max(coeffs)
    vec = [coeffs.get(i, 0) for i in range(top + 1)]
    return FieldElement(field._reduce(vec), field)


@functools.lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> FieldDescriptor:
    """F_{p^m} presented by the smallest monic irreducible modulus in index order."""
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be positive")
    q = p**m
    if q > FIELD_ORDER_CAP:
        raise OrderTooLarge(f"q = {p}^{m} = {q} exceeds the cap {FIELD_ORDER_CAP}")
    for idx in range(p**m):
        low = []
        v = idx
        for _ in range(m):
            v, r = divmod(v, p)
            low.append(r)
        h = low + [1]
        if is_irreducible_mod_p(h, p):
            return FieldDescriptor(p, m, tuple(h), q)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def enumerate_field(field: FieldDescriptor) -> Iterator[FieldElement]:
    for i in range(field.q):
        yield field.from_index(i)


# --- log-domain tables for the kernels


class FieldTables(NamedTuple):
    p: int
    m: int
    q: int
    exp: np.ndarray  # exp[k] = index of g^k, k < q-1
    log: np.ndarray  # log[index]; log[0] = q-1
    zech: np.ndarray  # zech[k] = log(1 + g^k)
    neg_shift: int  # log(-1)
    primitive: int  # index of g

    @property
    def zero(self) -> int:
        return self.q - 1


def _digits(idx: np.ndarray, p: int, m: int) -> np.ndarray:
    out = np.empty(idx.shape + (m,), dtype=np.int64)
    v = idx.astype(np.int64)
    for i in range(m):
        out[..., i] = v % p
        v = v // p
    return out


def _undigits(dig: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros(dig.shape[:-1], dtype=np.int64)
    for i in range(dig.shape[-1] - 1, -1, -1):
        out = out * p + dig[..., i]
    return out


def _mul_rows(rows: np.ndarray, c: "FieldElement") -> np.ndarray:
    """Multiply each digit row by the fixed element c (a linear map over F_p)."""
    F = c.field
    m = F.m
    basis = [F.element([0] * j + [1]) * c for j in range(m)]
    M = np.array([b.coeffs for b in basis], dtype=np.int64)
    return (rows @ M) % F.p


def _multiplicative_order_is_full(x: FieldElement) -> bool:
    n = x.field.q - 1
    return all((x ** (n // ell)) != x.field.one for ell in prime_factors(n)) if n > 1 else True


@functools.lru_cache(maxsize=None)
def field_tables(field: FieldDescriptor) -> FieldTables:
    p, m, q = field.p, field.m, field.q
    n = q - 1
    g = next(x for x in enumerate_field(field) if x and _multiplicative_order_is_full(x))
    exp_dig = np.zeros((1, m), dtype=np.int64)
    exp_dig[0, 0] = 1
    # doubling: powers g^0..g^(k-1) times g^k
    while exp_dig.shape[0] < n:
        k = exp_dig.shape[0]
        gk = g**k
        exp_dig = np.vstack([exp_dig, _mul_rows(exp_dig, gk)])
    exp_dig = exp_dig[:n]
    exp = _undigits(exp_dig, p)
    log = np.full(q, n, dtype=np.int64)
    log[exp] = np.arange(n, dtype=np.int64)
    plus_one = exp_dig.copy()
    plus_one[:, 0] = (plus_one[:, 0] + 1) % p
    zech = log[_undigits(plus_one, p)]
    neg_shift = 0 if p == 2 else n // 2
    return FieldTables(p, m, q, exp, log, zech, neg_shift, g.index)


# --- embeddings


@dataclass(frozen=True)
class Embedding:
    source: FieldDescriptor
    target: FieldDescriptor
    image_of_generator: FieldElement

    def __call__(self, x: FieldElement) -> FieldElement:
        return apply(self, x)

    @functools.cached_property
    def _basis_images(self) -> tuple[FieldElement, ...]:
        out = [self.target.one]
        for _ in range(1, self.source.m):
            out.append(out[-1] * self.image_of_generator)
        return tuple(out)

    @functools.cached_property
    def index_map(self) -> np.ndarray:
        """index_map[i] = target index of the image of source element i."""
        return np.array([apply(self, x).index for x in enumerate_field(self.source)], dtype=np.int64)


def embed(source: FieldDescriptor, target: FieldDescriptor) -> Embedding:
    if source.p != target.p or target.m % source.m:
        raise NoEmbedding(f"{source!r} does not embed in {target!r}")
    if source.m == 1:
        return Embedding(source, target, target.zero)
    if source == target:
        return Embedding(source, target, target.gen)
    # first root of the source modulus in enumeration order, found with a vectorized scan
    tab = field_tables(target)
    zero = tab.zero
    acc = np.full(target.q, zero, dtype=np.int64)  # Horner accumulator in log domain
    xs = tab.log[np.arange(target.q)]
    for c in reversed(source.modulus):
        acc = _vmul(acc, xs, tab)
        acc = _vadd(acc, np.full_like(acc, tab.log[c % source.p]), tab)
    roots = np.flatnonzero(acc == zero)
    return Embedding(source, target, target.from_index(int(roots[0])))


def apply(e: Embedding, x: FieldElement) -> FieldElement:
    if x.field != e.source:
        raise MixedFields(f"{x!r} is not in {e.source!r}")
    out = e.target.zero
    for c, b in zip(x.coeffs, e._basis_images):
        if c:
            out = out + c * b
    return out


def preimage(e: Embedding, y: FieldElement) -> FieldElement | None:
    """Inverse of apply on its image; None when y is not in the image."""
    hits = np.flatnonzero(e.index_map == y.index)
    return e.source.from_index(int(hits[0])) if hits.size else None


# vectorized log-domain helpers (backend-independent; used for table-driven scans)

def _vmul(a: np.ndarray, b: np.ndarray, tab: FieldTables) -> np.ndarray:
    n = tab.q - 1
    out = (a + b) % n if n > 0 else np.zeros_like(a)
    return np.where((a == n) | (b == n), n, out)


def _vadd(a: np.ndarray, b: np.ndarray, tab: FieldTables) -> np.ndarray:
    n = tab.q - 1
    diff = (b - a) % n if n > 0 else np.zeros_like(a)
    z = tab.zech[np.where((a == n) | (b == n), 0, diff)]
    s = np.where(z == n, n, (a + z) % n if n > 0 else 0)
    s = np.where(a == n, b, s)
    return np.where(b == n, a, s)
