"""Extremal example families: Hermitian cylinders, the lower-bound curve and
cones over maximal curves, with their closed-form point counts."""
from __future__ import annotations

from .gf import FieldDescriptor, prime_factors
from .mpoly import Hypersurface, MultiPoly, parse
from .surd import Surd


def _prime_power(q: int) -> tuple[int, int] | None:
    fs = prime_factors(q) if q > 1 else []
    if len(fs) != 1:
        return None
    p, e = fs[0], 0
    while q > 1:
        q //= p
        e += 1
    return p, e


def _log_base(q: int, base: int) -> int | None:
    """k with base^k = q, else None."""
    if base < 2:
        return None
    k, v = 0, 1
    while v < q:
        v *= base
        k += 1
    return k if v == q else None


def hermitian_curve_text(d: int) -> str:
    """y^(d-1) + y = x^d."""
    return f"y^{d - 1}+y-x^{d}"


def hermitian_cylinder(d: int, n: int, F: FieldDescriptor) -> Hypersurface:
    g = parse(hermitian_curve_text(d), 2, F)
    return Hypersurface(n, "affine", _pad(g, n))


def hermitian_cylinder_count(d: int, q: int, n: int) -> Surd | None:
    """q^(n-1) + (d-1)(d-2) q^(n-3/2) when q is an odd power of (d-1)^2."""
    if d < 3 or _prime_power(d - 1) is None:
        return None
    k = _log_base(q, (d - 1) ** 2)
    if k is None or k % 2 == 0:
        return None
    A = (d - 1) * (d - 2)
    return Surd(q ** (n - 1), A * q ** (n - 2), q)


def lower_curve_text(d: int) -> str:
    """y^(d-1) z + y z^(d-1) = 1 in the coordinates (y, z)."""
    return f"x^{d - 1}*y+x*y^{d - 1}-1"


def lower_cylinder(d: int, n: int, F: FieldDescriptor) -> Hypersurface:
    g = parse(lower_curve_text(d), 2, F)
    return Hypersurface(n, "affine", _pad(g, n))


def splitting_order(d: int) -> int | None:
    """q1: the smallest power of q0 = d - 1 over which y z (y^(d-2) + z^(d-2)) splits into lines."""
    pp = _prime_power(d - 1)
    if d < 3 or pp is None:
        return None
    p = pp[0]
    q0 = d - 1
    need = (d - 2) * (1 if p == 2 else 2)
    q1 = q0
    while (q1 - 1) % need:
        q1 *= q0
    return q1


def lower_cylinder_count(d: int, q: int, n: int) -> Surd | None:
    """q^(n-1) - (d-1)(d-2) q^(n-3/2) - (d-1) q^(n-2) when q is an even power of q1."""
    q1 = splitting_order(d)
    if q1 is None:
        return None
    k = _log_base(q, q1)
    if k is None or k == 0 or k % 2:
        return None
    A = (d - 1) * (d - 2)
    return Surd(q ** (n - 1) - (d - 1) * q ** (n - 2), -A * q ** (n - 2), q)


def maximal_cone(d: int, n: int, F: FieldDescriptor) -> Hypersurface:
    """Projective cone over y^(d-1) z + y z^(d-1) = x^d (coordinates x0 = x, x1 = y, x2 = z)."""
    if n < 2:
        raise ValueError("cone needs n >= 2")
    g = parse(f"x1^{d - 1}*x2+x1*x2^{d - 1}-x0^{d}", n + 1, F, first_index=0)
    return Hypersurface(n, "projective", g)


def maximal_cone_count(d: int, q: int, n: int) -> Surd | None:
    """q^(n-1) +- (d-1)(d-2) q^(n-3/2) + q^(n-2) + ... + 1 for q a power of (d-1)^2.

    The sign is + for odd powers and - for even powers.
    """
    if d < 3 or _prime_power(d - 1) is None:
        return None
    k = _log_base(q, (d - 1) ** 2)
    if not k:
        return None
    A = (d - 1) * (d - 2)
    sign = 1 if k % 2 else -1
    tail = sum(q**i for i in range(n - 1))
    return Surd(q ** (n - 1) + tail, sign * A * q ** (n - 2), q)


def _pad(g: MultiPoly, n: int) -> MultiPoly:
    if n < 2:
        raise ValueError("cylinders need n >= 2")
    terms = {e + (0,) * (n - 2): c for e, c in g.terms.items()}
    return MultiPoly(n, terms, g.field)
