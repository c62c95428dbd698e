"""Compiled kernels. All field values are in the log domain (``n = q - 1`` is zero)."""
import numpy as np
from numba import njit

_opts = dict(cache=True, nogil=True)


@njit(inline="always", **_opts)
def fmul(a, b, n):
    if a == n or b == n:
        return n
    s = a + b
    if s >= n:
        s -= n
    return s


@njit(inline="always", **_opts)
def fadd(a, b, n, zech):
    if a == n:
        return b
    if b == n:
        return a
    d = b - a
    if d < 0:
        d += n
    z = zech[d]
    if z == n:
        return n
    s = a + z
    if s >= n:
        s -= n
    return s


@njit(inline="always", **_opts)
def fneg(a, n, shift):
    if a == n:
        return n
    s = a + shift
    if s >= n:
        s -= n
    return s


@njit(inline="always", **_opts)
def fsub(a, b, n, zech, shift):
    return fadd(a, fneg(b, n, shift), n, zech)


@njit(inline="always", **_opts)
def finv(a, n):
    return 0 if a == 0 else n - a


@njit(inline="always", **_opts)
def fpow(a, e, n):
    if e == 0:
        return 0
    if a == n:
        return n
    return (a * (e % n)) % n if n > 1 else 0


@njit(**_opts)
def eval_poly(exps, coefs, pt, n, zech):
    acc = n
    for t in range(coefs.shape[0]):
        v = coefs[t]
        for i in range(exps.shape[1]):
            e = exps[t, i]
            if e:
                v = fmul(v, fpow(pt[i], e, n), n)
        acc = fadd(acc, v, n, zech)
    return acc


@njit(**_opts)
def _mulmod(a, b, h, d, prod, out, n, zech, shift):
    # a, b of degree < d; h monic of degree d
    for i in range(2 * d - 1):
        prod[i] = n
    for i in range(d):
        if a[i] != n:
            for j in range(d):
                if b[j] != n:
                    prod[i + j] = fadd(prod[i + j], fmul(a[i], b[j], n), n, zech)
    for i in range(2 * d - 2, d - 1, -1):
        c = prod[i]
        if c != n:
            for j in range(d):
                if h[j] != n:
                    prod[i - d + j] = fsub(prod[i - d + j], fmul(c, h[j], n), n, zech, shift)
            prod[i] = n
    for i in range(d):
        out[i] = prod[i]


@njit(**_opts)
def _mul_y(a, h, d, out, n, zech, shift):
    top = a[d - 1]
    for i in range(d - 1, 0, -1):
        out[i] = a[i - 1]
    out[0] = n
    if top != n:
        for j in range(d):
            if h[j] != n:
                out[j] = fsub(out[j], fmul(top, h[j], n), n, zech, shift)


@njit(**_opts)
def _degree(a, upto, n):
    for i in range(upto, -1, -1):
        if a[i] != n:
            return i
    return -1


@njit(**_opts)
def count_roots_gcd(c, deg, Q, n, zech, shift, w):
    """Distinct roots in F_Q of the univariate poly c[0..deg], c[deg] nonzero.

    w is a scratch array of shape (6, 2 * deg + 2).
    """
    if deg == 1:
        return 1
    h = w[0]
    inv_lead = finv(c[deg], n)
    for i in range(deg + 1):
        h[i] = fmul(c[i], inv_lead, n)
    r = w[1]
    tmp = w[2]
    prod = w[3]
    for i in range(deg):
        r[i] = n
    r[0] = 0
    nbits = 0
    qq = Q
    while qq:
        nbits += 1
        qq >>= 1
    for b in range(nbits - 1, -1, -1):
        _mulmod(r, r, h, deg, prod, tmp, n, zech, shift)
        if (Q >> b) & 1:
            _mul_y(tmp, h, deg, r, n, zech, shift)
        else:
            for i in range(deg):
                r[i] = tmp[i]
    # r := Y^Q - Y mod h
    r[1] = fsub(r[1], 0, n, zech, shift)
    a = w[4]
    bb = w[5]
    for i in range(deg + 1):
        a[i] = h[i]
    for i in range(deg):
        bb[i] = r[i]
    bb[deg] = n
    da = deg
    db = _degree(bb, deg, n)
    while db >= 0:
        inv_b = finv(bb[db], n)
        while da >= db:
            cf = fmul(a[da], inv_b, n)
            s = da - db
            for j in range(db + 1):
                if bb[j] != n:
                    a[s + j] = fsub(a[s + j], fmul(cf, bb[j], n), n, zech, shift)
            da = _degree(a, da - 1, n) if da > 0 else -1
            if da < 0:
                break
        # swap a, bb
        for i in range(deg + 1):
            t = a[i]
            a[i] = bb[i]
            bb[i] = t
        t2 = da
        da = db
        db = t2
    return da


@njit(**_opts)
def count_roots_scan(c, deg, q, log, n, zech):
    cnt = 0
    for idx in range(q):
        y = log[idx]
        acc = n
        for i in range(deg, -1, -1):
            acc = fadd(fmul(acc, y, n), c[i], n, zech)
        if acc == n:
            cnt += 1
    return cnt


@njit(**_opts)
def count_fibers(exps, coefs, lo, hi, q, log, zech, shift, use_gcd):
    """Sum over fibers lo <= f < hi of the number of zeros in the last variable.

    A fiber index is the base-q number whose digits are the element indices
    of the leading coordinates (first coordinate most significant).
    """
    n = q - 1
    nv = exps.shape[1]
    nt = coefs.shape[0]
    D = 0
    for t in range(nt):
        if exps[t, nv - 1] > D:
            D = exps[t, nv - 1]
    c = np.empty(D + 1, dtype=np.int64)
    pt = np.empty(max(nv - 1, 1), dtype=np.int64)
    w = np.empty((6, 2 * D + 2), dtype=np.int64)
    total = 0
    for f in range(lo, hi):
        v = f
        for i in range(nv - 2, -1, -1):
            pt[i] = log[v % q]
            v //= q
        for j in range(D + 1):
            c[j] = n
        for t in range(nt):
            val = coefs[t]
            for i in range(nv - 1):
                e = exps[t, i]
                if e:
                    val = fmul(val, fpow(pt[i], e, n), n)
            j = exps[t, nv - 1]
            c[j] = fadd(c[j], val, n, zech)
        deg = _degree(c, D, n)
        if deg < 0:
            total += q
        elif deg == 0:
            pass
        elif use_gcd:
            total += count_roots_gcd(c, deg, q, n, zech, shift, w)
        else:
            total += count_roots_scan(c, deg, q, log, n, zech)
    return total


@njit(**_opts)
def count_brute(exps, coefs, lo, hi, q, log, zech):
    n = q - 1
    nv = exps.shape[1]
    pt = np.empty(nv, dtype=np.int64)
    total = 0
    for f in range(lo, hi):
        v = f
        for i in range(nv - 1, -1, -1):
            pt[i] = log[v % q]
            v //= q
        if eval_poly(exps, coefs, pt, n, zech) == n:
            total += 1
    return total


@njit(**_opts)
def plane_counts_affine(exps, coefs, frames, q, log, zech):
    """frames[k] = (base, dir1, dir2) in log domain; returns #zeros on each plane."""
    n = q - 1
    nv = exps.shape[1]
    out = np.zeros(frames.shape[0], dtype=np.int64)
    pt = np.empty(nv, dtype=np.int64)
    for k in range(frames.shape[0]):
        cnt = 0
        for si in range(q):
            s = log[si]
            for wi in range(q):
                w = log[wi]
                for i in range(nv):
                    x = fadd(frames[k, 0, i], fmul(s, frames[k, 1, i], n), n, zech)
                    pt[i] = fadd(x, fmul(w, frames[k, 2, i], n), n, zech)
                if eval_poly(exps, coefs, pt, n, zech) == n:
                    cnt += 1
        out[k] = cnt
    return out


@njit(**_opts)
def plane_counts_projective(exps, coefs, frames, p2, q, zech):
    """frames[k] = 3 spanning rows; p2 lists normalized points of P^2 (log domain)."""
    n = q - 1
    nv = exps.shape[1]
    out = np.zeros(frames.shape[0], dtype=np.int64)
    pt = np.empty(nv, dtype=np.int64)
    for k in range(frames.shape[0]):
        cnt = 0
        for a in range(p2.shape[0]):
            for i in range(nv):
                x = n
                for r in range(3):
                    x = fadd(x, fmul(p2[a, r], frames[k, r, i], n), n, zech)
                pt[i] = x
            if eval_poly(exps, coefs, pt, n, zech) == n:
                cnt += 1
        out[k] = cnt
    return out


@njit(**_opts)
def first_divisor(g, lead, lower, lo, hi, q, log, zech, shift):
    """First candidate index in [lo, hi) whose polynomial divides g, else -1.

    g is dense (D+1, D+1) with g[i, j] the coefficient of x^i y^j.  A candidate
    is x^lead[0] y^lead[1] + sum_l c_l x^lower[l,0] y^lower[l,1], where the
    c_l are the base-q digits of the candidate index (last lower monomial
    least significant), read as element indices.
    """
    n = q - 1
    D = g.shape[0] - 1
    L = lower.shape[0]
    hc = np.empty(L, dtype=np.int64)
    r = np.empty_like(g)
    i0 = lead[0]
    j0 = lead[1]
    for cand in range(lo, hi):
        v = cand
        for l in range(L - 1, -1, -1):
            hc[l] = log[v % q]
            v //= q
        for i in range(D + 1):
            for j in range(D + 1):
                r[i, j] = g[i, j]
        ok = False
        while True:
            I = -1
            J = -1
            for t in range(D, -1, -1):
                for i in range(t, -1, -1):
                    if r[i, t - i] != n:
                        I = i
                        J = t - i
                        break
                if I >= 0:
                    break
            if I < 0:
                ok = True
                break
            if I < i0 or J < j0:
                break
            c = r[I, J]
            a = I - i0
            b = J - j0
            r[I, J] = n
            for l in range(L):
                if hc[l] != n:
                    ii = a + lower[l, 0]
                    jj = b + lower[l, 1]
                    r[ii, jj] = fsub(r[ii, jj], fmul(c, hc[l], n), n, zech, shift)
        if ok:
            return cand
    return -1
