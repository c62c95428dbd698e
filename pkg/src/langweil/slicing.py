"""Slicing hypersurfaces by planes: exhaustive censuses and seeded sampling.

Planes are identified with canonical frames.  An affine plane is the reduced
row echelon basis of its direction space plus the unique translation vector
that vanishes on the pivot coordinates; a projective plane is the reduced row
echelon basis of its 3-dimensional lift.  Sampling draws a uniformly random
full-rank frame and canonicalizes it, which is uniform over planes because
every plane has the same number of frames.

Field arithmetic here runs on Python ints in the log domain (zero is q - 1),
the same encoding the counting kernels use.
"""
from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import kernels
from ._config import DEFAULT_WORK_CAP, EXHAUSTIVE_PLANE_LIMIT
from .counting import count_affine, count_projective
from .errors import DimensionMismatch, WorkCapExceeded
from .gf import FieldDescriptor, field_tables
from .ledger import INFINITY, OUT_OF_INTERVAL, IntervalSystem, classify_count
from .mpoly import Hypersurface
from .surd import Surd

_CHUNK = 4096


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def plane_census(n: int, q: int, setting: str) -> int:
    if setting == "affine":
        return q ** (n - 2) * gaussian_binomial(n, 2, q)
    return gaussian_binomial(n + 1, 3, q)


def projective_incidence(n: int, q: int) -> tuple[Fraction, Fraction]:
    """(rho1, rho2): chance a random plane of P^n contains one, resp. two, given points."""
    if n < 2:
        raise DimensionMismatch("need n >= 2")
    rho1 = Fraction(q**3 - 1, q ** (n + 1) - 1)
    rho2 = Fraction(gaussian_binomial(n - 1, 1, q), gaussian_binomial(n + 1, 3, q))
    return rho1, rho2


class _LogArith:
    """Scalar field operations on log-domain ints."""

    def __init__(self, F: FieldDescriptor):
        tab = field_tables(F)
        self.tab = tab
        self.n = F.q - 1
        self.zech = tab.zech.tolist()
        self.log = tab.log.tolist()
        self.exp = tab.exp.tolist() + [0]  # exp[n] = index of zero
        self.shift = tab.neg_shift

    def mul(self, a, b):
        n = self.n
        if a == n or b == n:
            return n
        return (a + b) % n

    def add(self, a, b):
        n = self.n
        if a == n:
            return b
        if b == n:
            return a
        z = self.zech[(b - a) % n]
        return n if z == n else (a + z) % n

    def neg(self, a):
        return a if a == self.n else (a + self.shift) % self.n

    def inv(self, a):
        return (-a) % self.n

    def rref(self, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
        """Reduced row echelon form and pivot columns; rank deficiency gives fewer rows."""
        rows = [list(r) for r in rows]
        n = self.n
        pivots: list[int] = []
        r = 0
        ncols = len(rows[0]) if rows else 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(rows)) if rows[i][c] != n), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = self.inv(rows[r][c])
            rows[r] = [self.mul(inv, x) for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c] != n:
                    f = self.neg(rows[i][c])
                    rows[i] = [self.add(x, self.mul(f, y)) for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return rows[:r], pivots


@dataclass(frozen=True)
class PlaneFrame:
    """A plane given by rows of element indices.

    Affine: (base, dir1, dir2) in F_q^n.  Projective: three rows spanning the
    lift in F_q^(n+1).
    """

    setting: str
    field: FieldDescriptor
    index_rows: tuple[tuple[int, ...], ...]
    canonical: bool = True

    @property
    def rows(self):
        F = self.field
        return tuple(tuple(F.from_index(i) for i in r) for r in self.index_rows)

    @property
    def ambient_dim(self) -> int:
        width = len(self.index_rows[0])
        return width if self.setting == "affine" else width - 1

    def log_rows(self) -> list[list[int]]:
        log = field_tables(self.field).log
        return [[int(log[i]) for i in r] for r in self.index_rows]

    @classmethod
    def from_log_rows(cls, setting, F, rows, canonical=True) -> "PlaneFrame":
        exp = field_tables(F).exp.tolist() + [0]
        return cls(setting, F, tuple(tuple(exp[x] for x in r) for r in rows), canonical)

    def key(self):
        return (self.setting, self.field, self.index_rows)


def canonicalize(H: PlaneFrame) -> PlaneFrame:
    """Unique representative of the plane spanned by H (idempotent)."""
    ar = _LogArith(H.field)
    rows = H.log_rows()
    if H.setting == "affine":
        base, *dirs = rows
        red, piv = ar.rref(dirs)
        if len(red) != 2:
            raise DimensionMismatch("direction vectors are dependent")
        for r, c in zip(red, piv):
            f = ar.neg(base[c])
            base = [ar.add(x, ar.mul(f, y)) for x, y in zip(base, r)]
        out = [base] + red
    else:
        out, piv = ar.rref(rows)
        if len(out) != 3:
            raise DimensionMismatch("projective frame is not of rank 3")
    return PlaneFrame.from_log_rows(H.setting, H.field, out, True)


def _rref_family(k: int, N: int, q: int):
    """Yield (pivots, index array (count, k, N)) covering all rank-k RREF matrices."""
    for piv in itertools.combinations(range(N), k):
        free = [(i, j) for i in range(k) for j in range(piv[i] + 1, N) if j not in piv]
        count = q ** len(free)
        mats = np.zeros((count, k, N), dtype=np.int64)
        for i, c in enumerate(piv):
            mats[:, i, c] = 1  # index 1 is the field's one
        digits = np.arange(count, dtype=np.int64)
        for i, j in reversed(free):
            mats[:, i, j] = digits % q
            digits //= q
        yield piv, mats


def _plane_index_array(n: int, F: FieldDescriptor, setting: str) -> np.ndarray:
    """All canonical planes as an index array (P, 3, width), in canonical order."""
    q = F.q
    if setting == "projective":
        return np.concatenate([m for _, m in _rref_family(3, n + 1, q)], axis=0)
    blocks = []
    for piv, dirs in _rref_family(2, n, q):
        others = [j for j in range(n) if j not in piv]
        nb = q ** len(others)
        bases = np.zeros((nb, n), dtype=np.int64)
        digits = np.arange(nb, dtype=np.int64)
        for j in reversed(others):
            bases[:, j] = digits % q
            digits //= q
        block = np.empty((dirs.shape[0], nb, 3, n), dtype=np.int64)
        block[:, :, 0, :] = bases[None, :, :]
        block[:, :, 1:, :] = dirs[:, None, :, :]
        blocks.append(block.reshape(-1, 3, n))
    return np.concatenate(blocks, axis=0)


def _check_census(n, q, setting, work_cap, limit=None):
    P = plane_census(n, q, setting)
    if limit is not None and P > limit:
        raise WorkCapExceeded(P, limit)
    if P * q * q > work_cap:
        raise WorkCapExceeded(P * q * q, work_cap)
    return P


def enumerate_planes(n: int, F: FieldDescriptor, setting: str = "affine", *,
                     work_cap: int = DEFAULT_WORK_CAP) -> list[PlaneFrame]:
    _check_census(n, F.q, setting, work_cap)
    arr = _plane_index_array(n, F, setting)
    return [PlaneFrame(setting, F, tuple(tuple(int(x) for x in r) for r in mat)) for mat in arr]


def _sample_log_frame(ar: _LogArith, n: int, setting: str, rng: np.random.Generator) -> list[list[int]]:
    q = ar.n + 1
    log = ar.log
    if setting == "affine":
        while True:
            dirs = rng.integers(0, q, size=(2, n)).tolist()
            red, piv = ar.rref([[log[x] for x in r] for r in dirs])
            if len(red) == 2:
                break
        base = [log[x] for x in rng.integers(0, q, size=n).tolist()]
        for r, c in zip(red, piv):
            f = ar.neg(base[c])
            base = [ar.add(x, ar.mul(f, y)) for x, y in zip(base, r)]
        return [base] + red
    while True:
        rows = rng.integers(0, q, size=(3, n + 1)).tolist()
        red, _ = ar.rref([[log[x] for x in r] for r in rows])
        if len(red) == 3:
            return red


def sample_plane(n: int, F: FieldDescriptor, setting: str, rng: np.random.Generator) -> PlaneFrame:
    """Uniformly random plane, returned in canonical form."""
    ar = _LogArith(F)
    return PlaneFrame.from_log_rows(setting, F, _sample_log_frame(ar, n, setting, rng))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def _projective_plane_points(F: FieldDescriptor) -> np.ndarray:
    """Normalized points of P^2 in the log domain."""
    tab = field_tables(F)
    q, one, zero = F.q, 0, tab.zero
    logs = tab.log[np.arange(q)]
    a, b = np.meshgrid(logs, logs, indexing="ij")
    pts = [np.stack([np.full(q * q, one), a.ravel(), b.ravel()], axis=1),
           np.stack([np.full(q, zero), np.full(q, one), logs], axis=1),
           np.array([[zero, zero, one]])]
    return np.concatenate(pts).astype(np.int64)


def slice_counts(X: Hypersurface, frames_log: np.ndarray) -> np.ndarray:
    """#(X cap H)(F_q) for each frame (log-domain array (P, 3, width))."""
    F = X.field
    tab = field_tables(F)
    exps, coefs = X.f.compiled
    out = np.empty(frames_log.shape[0], dtype=np.int64)
    p2 = _projective_plane_points(F) if X.setting == "projective" else None
    for lo in range(0, frames_log.shape[0], _CHUNK):
        chunk = np.ascontiguousarray(frames_log[lo:lo + _CHUNK])
        if X.f.is_zero():
            out[lo:lo + len(chunk)] = F.q**2 + (F.q + 1 if X.setting == "projective" else 0)
        elif X.setting == "affine":
            out[lo:lo + len(chunk)] = kernels.plane_counts_affine(exps, coefs, chunk, F.q, tab.log, tab.zech)
        else:
            out[lo:lo + len(chunk)] = kernels.plane_counts_projective(exps, coefs, chunk, p2, F.q, tab.zech)
    return out


def frames_to_log(frames: list[PlaneFrame]) -> np.ndarray:
    return np.array([f.log_rows() for f in frames], dtype=np.int64)


@dataclass
class SliceReport:
    mode: str
    setting: str
    q: int
    n: int
    d: int
    planes: int
    histogram: dict[str, int]
    count_histogram: dict[int, int]
    mean: Fraction | float
    variance: Fraction | float
    N: int | None = None
    expected_mean: Fraction | None = None  # N / q^(n-2) affine, N * rho1 projective
    samples: int | None = None
    seed: int | None = None
    chebyshev: list[dict] = dc_field(default_factory=list)

    @property
    def N_over_q_pow(self) -> Fraction | None:
        if self.N is None:
            return None
        return Fraction(self.N, self.q ** (self.n - 2))

    @property
    def out_of_interval(self) -> int:
        return self.histogram.get(OUT_OF_INTERVAL, 0)

    def to_json(self) -> dict:
        def num(x):
            return str(x) if isinstance(x, Fraction) else x
        return {
            "mode": self.mode, "setting": self.setting, "q": self.q, "n": self.n, "d": self.d,
            "planes": self.planes, "samples": self.samples, "seed": self.seed,
            "histogram": self.histogram,
            "count_histogram": {str(k): v for k, v in sorted(self.count_histogram.items())},
            "mean": num(self.mean), "variance": num(self.variance),
            "N": self.N, "N_over_q_pow": num(self.N_over_q_pow), "expected_mean": num(self.expected_mean),
            "chebyshev": self.chebyshev,
        }


def _bin_histogram(counts: Counter, system: IntervalSystem, overlap: str) -> dict[str, int]:
    labels = [str(k) for k in range(system.d + 1)] + [INFINITY, OUT_OF_INTERVAL]
    hist = {lab: 0 for lab in labels}
    for c, m in counts.items():
        hist[str(classify_count(c, system, overlap=overlap))] += m
    return hist


def chebyshev_checks(counts: Counter, system: IntervalSystem, mean: Fraction, variance: Fraction) -> list[dict]:
    """Fraction of planes with count >= a_k against variance / (a_k - mean)^2, when a_k > mean."""
    total = sum(counts.values())
    out = []
    for k in range(2, system.d + 1):
        a = system.a[k]
        if not a > mean:
            continue
        # counts are integers: count >= a_k iff count >= ceil(a_k)
        hit = sum(m for c, m in counts.items() if Surd(c) >= a)
        frac = Fraction(hit, total)
        gap = a - mean
        ok = (gap * gap) * frac <= variance
        out.append({"k": k, "observed": str(frac), "bound": f"{float(variance) / float(gap * gap):.6g}", "ok": bool(ok)})
    return out


def slice_distribution(X: Hypersurface, intervals: IntervalSystem, mode: str = "auto", *,
                       samples: int = 10_000, seed: int = 0, workers: int = 1, overlap: str = "error",
                       work_cap: int = DEFAULT_WORK_CAP, with_total: bool = True) -> SliceReport:
    """Distribution of slice point counts over all planes, or over seeded random planes.

    A count that falls into two overlapping intervals raises IntervalOverlap
    unless ``overlap="first"``, which bins it into the first containing one.
    """
    F = X.field
    q, n, d = F.q, X.n, X.f.total_degree()
    if intervals.q != q or intervals.d != d or intervals.setting != X.setting:
        raise DimensionMismatch("interval system does not match the hypersurface")
    P = plane_census(n, q, X.setting)
    if mode == "auto":
        mode = "exhaustive" if P <= EXHAUSTIVE_PLANE_LIMIT else "monte_carlo"
    tab = field_tables(F)
    if mode == "exhaustive":
        _check_census(n, q, X.setting, work_cap)
        frames = tab.log[_plane_index_array(n, F, X.setting)]
        parts = np.array_split(frames, max(1, workers))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                per = list(pool.map(lambda fr: slice_counts(X, fr), parts))
        else:
            per = [slice_counts(X, fr) for fr in parts]
        vals = np.concatenate(per)
        counts = Counter(vals.tolist())
        total = len(vals)
        s1 = sum(c * m for c, m in counts.items())
        s2 = sum(c * c * m for c, m in counts.items())
        mean: Fraction | float = Fraction(s1, total)
        variance: Fraction | float = Fraction(s2, total) - mean * mean
        report = SliceReport("exhaustive", X.setting, q, n, d, total, {}, dict(counts), mean, variance)
        report.chebyshev = chebyshev_checks(counts, intervals, mean, variance)
    elif mode == "monte_carlo":
        if samples * q * q > work_cap:
            raise WorkCapExceeded(samples * q * q, work_cap)
        ar = _LogArith(F)
        children = np.random.SeedSequence(seed).spawn(max(1, workers))
        sizes = [len(a) for a in np.array_split(np.arange(samples), len(children))]

        def run(i):
            rng = np.random.Generator(np.random.PCG64(children[i]))
            fr = np.array([_sample_log_frame(ar, n, X.setting, rng) for _ in range(sizes[i])], dtype=np.int64)
            return slice_counts(X, fr) if sizes[i] else np.zeros(0, dtype=np.int64)

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                per = list(pool.map(run, range(len(children))))
        else:
            per = [run(0)]
        vals = np.concatenate(per)
        counts = Counter(vals.tolist())
        mean = float(vals.mean())
        variance = float(vals.var())
        report = SliceReport("monte_carlo", X.setting, q, n, d, len(vals), {}, dict(counts), mean, variance,
                             samples=samples, seed=seed)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    report.histogram = _bin_histogram(counts, intervals, overlap)
    if with_total:
        if X.setting == "affine":
            report.N = count_affine(X, work_cap=work_cap).count
            report.expected_mean = Fraction(report.N, q ** (n - 2))
        else:
            report.N = count_projective(X, work_cap=work_cap).count
            report.expected_mean = report.N * projective_incidence(n, q)[0]
    return report
