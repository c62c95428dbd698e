"""Vectorized numpy implementations of the kernels in ``_numba``.

Same signatures and results; loops over fibers/planes/candidates become array
operations over chunks.  Field values are in the log domain (``n = q - 1`` is zero).
"""
import numpy as np

_CHUNK = 1 << 18  # target number of array cells per vectorized step


def vmul(a, b, n):
    if n == 1:
        return np.where((a == n) | (b == n), n, 0)
    return np.where((a == n) | (b == n), n, (a + b) % n)


def vadd(a, b, n, zech):
    a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
    either_zero = (a == n) | (b == n)
    diff = np.where(either_zero, 0, (b - a) % n if n > 1 else 0)
    z = zech[diff]
    s = np.where(z == n, n, (a + z) % n if n > 1 else 0)
    s = np.where(a == n, b, s)
    return np.where(b == n, a, s)


def vneg(a, n, shift):
    if shift == 0:
        return a
    return np.where(a == n, n, (a + shift) % n)


def vsub(a, b, n, zech, shift):
    return vadd(a, vneg(b, n, shift), n, zech)


def vinv(a, n):
    return np.where(a == 0, 0, n - a)


def vpow(a, e, n):
    if e == 0:
        return np.zeros_like(a)
    if n == 1:
        return a.copy()
    return np.where(a == n, n, (a * (e % n)) % n)


def eval_poly(exps, coefs, pts, n, zech):
    """pts has shape (..., nvars); returns values of shape (...)."""
    acc = np.full(pts.shape[:-1], n, dtype=np.int64)
    for t in range(coefs.shape[0]):
        v = np.full(pts.shape[:-1], coefs[t], dtype=np.int64)
        for i in range(exps.shape[1]):
            e = int(exps[t, i])
            if e:
                v = vmul(v, vpow(pts[..., i], e, n), n)
        acc = vadd(acc, v, n, zech)
    return acc


def _fiber_points(lo, hi, q, log, k):
    f = np.arange(lo, hi, dtype=np.int64)
    pts = np.empty((f.size, max(k, 1)), dtype=np.int64)
    for i in range(k - 1, -1, -1):
        pts[:, i] = log[f % q]
        f = f // q
    return pts


def _fiber_coeffs(exps, coefs, pts, n, zech):
    nv = exps.shape[1]
    D = int(exps[:, nv - 1].max()) if exps.shape[0] else 0
    c = np.full((pts.shape[0], D + 1), n, dtype=np.int64)
    for t in range(coefs.shape[0]):
        v = np.full(pts.shape[0], coefs[t], dtype=np.int64)
        for i in range(nv - 1):
            e = int(exps[t, i])
            if e:
                v = vmul(v, vpow(pts[:, i], e, n), n)
        j = int(exps[t, nv - 1])
        c[:, j] = vadd(c[:, j], v, n, zech)
    return c


def _degrees(c, n):
    nz = c != n
    idx = np.arange(c.shape[1])
    return np.where(nz.any(axis=1), np.max(np.where(nz, idx, -1), axis=1), -1)


def count_roots_scan(c, q, log, n, zech):
    """Row-wise number of zeros over F_q (rows are coefficient vectors)."""
    ys = log[np.arange(q)]
    out = np.zeros(c.shape[0], dtype=np.int64)
    step = max(1, _CHUNK // max(q, 1))
    for s in range(0, c.shape[0], step):
        cc = c[s:s + step]
        acc = np.full((cc.shape[0], q), n, dtype=np.int64)
        for i in range(cc.shape[1] - 1, -1, -1):
            acc = vadd(vmul(acc, ys[None, :], n), cc[:, i:i + 1], n, zech)
        out[s:s + step] = (acc == n).sum(axis=1)
    return out


def _batch_mulmod(a, b, h, d, n, zech, shift):
    B = a.shape[0]
    prod = np.full((B, 2 * d - 1), n, dtype=np.int64)
    for i in range(d):
        for j in range(d):
            prod[:, i + j] = vadd(prod[:, i + j], vmul(a[:, i], b[:, j], n), n, zech)
    for i in range(2 * d - 2, d - 1, -1):
        top = prod[:, i]
        for j in range(d):
            prod[:, i - d + j] = vsub(prod[:, i - d + j], vmul(top, h[:, j], n), n, zech, shift)
    return prod[:, :d]


def _batch_mul_y(a, h, d, n, zech, shift):
    top = a[:, d - 1]
    out = np.empty_like(a)
    out[:, 1:] = a[:, :-1]
    out[:, 0] = n
    for j in range(d):
        out[:, j] = vsub(out[:, j], vmul(top, h[:, j], n), n, zech, shift)
    return out


def _batch_gcd_degree(a, b, n, zech, shift):
    """deg gcd(a, b) row-wise; a, b have equal width; returns -1 for gcd 0."""
    a = a.copy()
    b = b.copy()
    W = a.shape[1]
    da = _degrees(a, n)
    db = _degrees(b, n)
    rows_all = np.arange(a.shape[0])
    while True:
        swap = (db >= 0) & (da < db)
        if swap.any():
            a[swap], b[swap] = b[swap].copy(), a[swap].copy()
            da[swap], db[swap] = db[swap], da[swap].copy()
        active = (db >= 0) & (da >= db)
        if not active.any():
            break
        # rows where the remainder hit zero move b into a
        r = rows_all[active]
        ra, rb = da[r], db[r]
        cf = vmul(a[r, ra], vinv(b[r, rb], n), n)
        s = ra - rb
        for j in range(W):
            ok = j <= rb
            rr = r[ok]
            col = s[ok] + j
            a[rr, col] = vsub(a[rr, col], vmul(cf[ok], b[rr, j], n), n, zech, shift)
        da[r] = _degrees(a[r], n)
        done = active & (da < 0)
        if done.any():
            a[done], b[done] = b[done].copy(), a[done].copy()
            da[done], db[done] = db[done], -1
    return da


def count_roots_gcd(c, q, n, zech, shift):
    """Row-wise distinct-root counts via gcd(c, Y^q - Y)."""
    deg = _degrees(c, n)
    out = np.zeros(c.shape[0], dtype=np.int64)
    out[deg == 1] = 1
    for d in np.unique(deg[deg >= 2]):
        d = int(d)
        rows = np.flatnonzero(deg == d)
        inv_lead = vinv(c[rows, d], n)
        h = vmul(c[rows, :d + 1], inv_lead[:, None], n)
        r = np.full((rows.size, d), n, dtype=np.int64)
        r[:, 0] = 0
        for bit in range(q.bit_length() - 1, -1, -1):
            r = _batch_mulmod(r, r, h, d, n, zech, shift)
            if (q >> bit) & 1:
                r = _batch_mul_y(r, h, d, n, zech, shift)
        r[:, 1] = vsub(r[:, 1], np.zeros(rows.size, dtype=np.int64), n, zech, shift)
        b = np.full((rows.size, d + 1), n, dtype=np.int64)
        b[:, :d] = r
        out[rows] = _batch_gcd_degree(h, b, n, zech, shift)
    return out


def count_fibers(exps, coefs, lo, hi, q, log, zech, shift, use_gcd):
    n = q - 1
    nv = exps.shape[1]
    total = 0
    D = int(exps[:, nv - 1].max()) if exps.shape[0] else 0
    step = max(1, _CHUNK // (max(q, 1) if not use_gcd else 8 * (D + 1)))
    for s in range(lo, hi, step):
        e = min(hi, s + step)
        pts = _fiber_points(s, e, q, log, nv - 1)
        c = _fiber_coeffs(exps, coefs, pts, n, zech)
        deg = _degrees(c, n)
        total += q * int((deg < 0).sum())
        live = deg >= 1
        if live.any():
            if use_gcd:
                total += int(count_roots_gcd(c[live], q, n, zech, shift).sum())
            else:
                total += int(count_roots_scan(c[live], q, log, n, zech).sum())
    return total


def count_brute(exps, coefs, lo, hi, q, log, zech):
    n = q - 1
    nv = exps.shape[1]
    total = 0
    for s in range(lo, hi, _CHUNK):
        pts = _fiber_points(s, min(hi, s + _CHUNK), q, log, nv)
        total += int((eval_poly(exps, coefs, pts[:, :nv], n, zech) == n).sum())
    return total


def plane_counts_affine(exps, coefs, frames, q, log, zech):
    n = q - 1
    ys = log[np.arange(q)]
    s = np.repeat(ys, q)
    w = np.tile(ys, q)
    out = np.zeros(frames.shape[0], dtype=np.int64)
    step = max(1, _CHUNK // (q * q))
    for k in range(0, frames.shape[0], step):
        fr = frames[k:k + step]  # (P, 3, nv)
        base = fr[:, None, 0, :]
        pts = vadd(base, vmul(s[None, :, None], fr[:, None, 1, :], n), n, zech)
        pts = vadd(pts, vmul(w[None, :, None], fr[:, None, 2, :], n), n, zech)
        out[k:k + step] = (eval_poly(exps, coefs, pts, n, zech) == n).sum(axis=1)
    return out


def plane_counts_projective(exps, coefs, frames, p2, q, zech):
    n = q - 1
    out = np.zeros(frames.shape[0], dtype=np.int64)
    step = max(1, _CHUNK // max(p2.shape[0], 1))
    for k in range(0, frames.shape[0], step):
        fr = frames[k:k + step]
        pts = np.full((fr.shape[0], p2.shape[0], fr.shape[2]), n, dtype=np.int64)
        for r in range(3):
            pts = vadd(pts, vmul(p2[None, :, r, None], fr[:, None, r, :], n), n, zech)
        out[k:k + step] = (eval_poly(exps, coefs, pts, n, zech) == n).sum(axis=1)
    return out


def first_divisor(g, lead, lower, lo, hi, q, log, zech, shift):
    n = q - 1
    D = g.shape[0] - 1
    L = lower.shape[0]
    i0, j0 = int(lead[0]), int(lead[1])
    # graded-lex rank of each cell; cells beyond degree D never hold terms
    ii, jj = np.meshgrid(np.arange(D + 1), np.arange(D + 1), indexing="ij")
    rank = ((ii + jj) * (D + 1) + ii).ravel()
    rank = np.where((ii + jj).ravel() <= D, rank, -1)
    W = (D + 1) * (D + 1)
    step = max(1, _CHUNK // W)
    for s in range(lo, hi, step):
        e = min(hi, s + step)
        cand = np.arange(s, e, dtype=np.int64)
        hc = np.empty((cand.size, L), dtype=np.int64)
        v = cand.copy()
        for l in range(L - 1, -1, -1):
            hc[:, l] = log[v % q]
            v //= q
        r = np.tile(g.ravel(), (cand.size, 1))
        status = np.zeros(cand.size, dtype=np.int8)  # 0 running, 1 divides, 2 fails
        rows_all = np.arange(cand.size)
        while True:
            run = rows_all[status == 0]
            if run.size == 0:
                break
            rr = r[run]
            nzr = np.where(rr != n, rank[None, :], -1)
            lt = nzr.argmax(axis=1)
            has = nzr[np.arange(run.size), lt] >= 0
            status[run[~has]] = 1
            I, J = lt // (D + 1), lt % (D + 1)
            bad = has & ((I < i0) | (J < j0))
            status[run[bad]] = 2
            go = has & ~bad
            run, I, J, lt = run[go], I[go], J[go], lt[go]
            if run.size == 0:
                continue
            c = r[run, lt]
            r[run, lt] = n
            a, b = I - i0, J - j0
            for l in range(L):
                col = (a + lower[l, 0]) * (D + 1) + (b + lower[l, 1])
                r[run, col] = vsub(r[run, col], vmul(c, hc[run, l], n), n, zech, shift)
        hit = np.flatnonzero(status == 1)
        if hit.size:
            return int(cand[hit[0]])
    return -1
