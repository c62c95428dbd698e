"""Exact point counts of hypersurfaces over F_q.

Affine counts walk the fibers over F_q^(n-1): each fiber is a univariate
polynomial in the last variable whose distinct roots are counted by a scan
(small q) or by deg gcd(g, Y^q - Y) (large q).  Fiber ranges can be split
across workers; the reduction is an integer sum, so partitioning never
changes the result.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

from . import kernels
from ._config import DEFAULT_WORK_CAP, FIELD_ORDER_CAP, SCAN_CROSSOVER
from .errors import MixedFields, NotHomogeneous, OrderTooLarge, WorkCapExceeded
from .gf import FieldDescriptor, embed, field_tables, make_field
from .mpoly import Hypersurface, MultiPoly, map_coefficients, specialize

METHODS = ("brute", "fiberwise", "fiberwise_gcd")


@dataclass(frozen=True)
class CountResult:
    count: int
    q: int
    n: int
    setting: str
    method: str
    elapsed_ms: int = 0

    def to_json(self) -> dict:
        return asdict(self)


def _pick_method(q: int, method: str | None) -> str:
    if method is None or method == "auto":
        return "fiberwise" if q <= SCAN_CROSSOVER else "fiberwise_gcd"
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    return method


def estimate_work(f: MultiPoly, method: str) -> int:
    q = f.field.q
    nv = f.nvars
    if method == "brute":
        return q**nv * max(1, len(f.terms))
    d = max(1, f.degree_in(nv - 1))
    per_fiber = q if method == "fiberwise" else d * d * max(1, q.bit_length())
    return q ** (nv - 1) * per_fiber


def _partition(total: int, workers: int) -> list[tuple[int, int]]:
    workers = max(1, min(workers, total)) if total else 1
    step = -(-total // workers) if total else 0
    return [(lo, min(total, lo + step)) for lo in range(0, total, step)] if total else [(0, 0)]


def count_zeros(f: MultiPoly, method: str | None = None, *, workers: int = 1,
                work_cap: int = DEFAULT_WORK_CAP, partitions: list[tuple[int, int]] | None = None) -> int:
    """Number of zeros of f in A^nvars(F_q)."""
    F = f.field
    q = F.q
    nv = f.nvars
    method = _pick_method(q, method)
    if f.is_zero():
        return q**nv
    if nv == 0:
        return 0
    est = estimate_work(f, method)
    if est > work_cap:
        raise WorkCapExceeded(est, work_cap)
    tab = field_tables(F)
    exps, coefs = f.compiled
    if method == "brute":
        total = q**nv

        def run(rng):
            return kernels.count_brute(exps, coefs, rng[0], rng[1], q, tab.log, tab.zech)
    else:
        total = q ** (nv - 1)
        use_gcd = method == "fiberwise_gcd"

        def run(rng):
            return kernels.count_fibers(exps, coefs, rng[0], rng[1], q, tab.log, tab.zech,
                                        tab.neg_shift, use_gcd)
    parts = partitions if partitions is not None else _partition(total, workers)
    if workers > 1 and len(parts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return int(sum(pool.map(run, parts)))
    return int(sum(run(r) for r in parts))


def zeros_exceed(f: MultiPoly, bound, method: str | None = None, *, chunk: int = 4096,
                 work_cap: int = DEFAULT_WORK_CAP) -> bool:
    """Whether f has more than ``bound`` zeros in A^nvars(F_q).

    Scans fibers in order and stops as soon as the running count passes the
    bound, so the answer matches ``count_zeros(f) > bound`` at a fraction of the
    cost when the count is large.
    """
    F = f.field
    q = F.q
    nv = f.nvars
    method = _pick_method(q, method)
    if method == "brute" or f.is_zero() or nv < 2:
        return count_zeros(f, method, work_cap=work_cap) > bound
    est = estimate_work(f, method)
    if est > work_cap:
        raise WorkCapExceeded(est, work_cap)
    tab = field_tables(F)
    exps, coefs = f.compiled
    use_gcd = method == "fiberwise_gcd"
    total = 0
    nfib = q ** (nv - 1)
    for lo in range(0, nfib, chunk):
        total += int(kernels.count_fibers(exps, coefs, lo, min(nfib, lo + chunk), q, tab.log, tab.zech,
                                          tab.neg_shift, use_gcd))
        if total > bound:
            return True
    return False


def count_affine(X: Hypersurface, field: FieldDescriptor | None = None, method: str | None = None, *,
                 workers: int = 1, work_cap: int = DEFAULT_WORK_CAP) -> CountResult:
    if X.setting != "affine":
        raise ValueError("count_affine needs an affine hypersurface")
    if field is not None and field != X.field:
        raise MixedFields(f"hypersurface is over {X.field!r}, not {field!r}")
    q = X.field.q
    method = _pick_method(q, method)
    t0 = time.perf_counter()
    c = count_zeros(X.f, method, workers=workers, work_cap=work_cap)
    return CountResult(c, q, X.n, "affine", method, int((time.perf_counter() - t0) * 1000))


def chart_polys(f: MultiPoly) -> list[MultiPoly]:
    """Dehomogenizations on the strata x0 = .. = x_{i-1} = 0, x_i = 1, in order i = 0..n."""
    F = f.field
    out = []
    for i in range(f.nvars):
        vals = {j: F.zero for j in range(i)}
        vals[i] = F.one
        out.append(specialize(f, vals))
    return out


def count_projective_zeros(f: MultiPoly, method: str | None = None, *, workers: int = 1,
                           work_cap: int = DEFAULT_WORK_CAP) -> int:
    if not f.is_homogeneous():
        raise NotHomogeneous(f"{f} is not homogeneous")
    total = 0
    for g in chart_polys(f):
        if g.nvars == 0:
            total += 1 if g.is_zero() else 0
        else:
            total += count_zeros(g, method, workers=workers, work_cap=work_cap)
    return total


def count_projective(X: Hypersurface, field: FieldDescriptor | None = None, method: str | None = None, *,
                     workers: int = 1, work_cap: int = DEFAULT_WORK_CAP) -> CountResult:
    if X.setting != "projective":
        raise NotHomogeneous("count_projective needs a projective hypersurface")
    if field is not None and field != X.field:
        raise MixedFields(f"hypersurface is over {X.field!r}, not {field!r}")
    q = X.field.q
    method = _pick_method(q, method)
    t0 = time.perf_counter()
    c = count_projective_zeros(X.f, method, workers=workers, work_cap=work_cap)
    return CountResult(c, q, X.n, "projective", method, int((time.perf_counter() - t0) * 1000))


def extension_field(F: FieldDescriptor, m: int) -> FieldDescriptor:
    if F.q**m > FIELD_ORDER_CAP:
        raise OrderTooLarge(f"q^m = {F.q}^{m} exceeds the cap {FIELD_ORDER_CAP}")
    return make_field(F.p, F.m * m)


def count_curve_ext(g: MultiPoly, m: int, method: str | None = None, *, workers: int = 1,
                    work_cap: int = DEFAULT_WORK_CAP) -> CountResult:
    """Zeros of the bivariate g in A^2(F_{q^m})."""
    if g.nvars != 2:
        raise ValueError("count_curve_ext needs a bivariate polynomial")
    big = extension_field(g.field, m)
    G = map_coefficients(g, embed(g.field, big)) if big != g.field else g
    method = _pick_method(big.q, method)
    t0 = time.perf_counter()
    c = count_zeros(G, method, workers=workers, work_cap=work_cap)
    return CountResult(c, big.q, 2, "affine", method, int((time.perf_counter() - t0) * 1000))
