# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled decision kernels; mirrors ``_pykernels`` operation for operation."""

from libc.math cimport sqrt
from libc.stdlib cimport malloc, free

cdef double EMPTY_LO = 2.0
cdef double EMPTY_HI = -1.0
cdef double _TINY = 5e-324
cdef double _ONE_MINUS = 1.0 - 2.0**-53
cdef double _DISC_RTOL = 1e-12
cdef double _SHORTCUT_RTOL = 1e-10
cdef int N_STATS = 7
cdef int _SMALL_BLOCK = 64


cdef struct Iv:
    double lo
    double hi


cdef inline double _dist(double ax, double ay, double bx, double by) noexcept nogil:
    cdef double dx = ax - bx
    cdef double dy = ay - by
    return sqrt(dx * dx + dy * dy)


cdef inline Iv _free(double ax, double ay, double bx, double by,
                     double cx, double cy, double r) noexcept nogil:
    cdef Iv out
    cdef double fx = ax - cx
    cdef double fy = ay - cy
    cdef double gx = bx - cx
    cdef double gy = by - cy
    cdef double ff = fx * fx + fy * fy
    cdef bint in_a = sqrt(ff) <= r
    cdef bint in_b = sqrt(gx * gx + gy * gy) <= r
    cdef double dx, dy, aa, h, cr, disc, s, lo, hi
    if in_a and in_b:
        out.lo = 0.0
        out.hi = 1.0
        return out
    dx = bx - ax
    dy = by - ay
    aa = dx * dx + dy * dy
    out.lo = EMPTY_LO
    out.hi = EMPTY_HI
    if aa == 0.0:
        return out
    h = fx * dx + fy * dy
    # b^2 - ac rewritten via Lagrange's identity; avoids cancellation near tangency
    cr = fx * dy - fy * dx
    disc = aa * r * r - cr * cr
    if disc < 0.0:
        if disc < -_DISC_RTOL * aa * (ff + r * r):
            if in_a:
                out.lo = 0.0
                out.hi = 0.0
            elif in_b:
                out.lo = 1.0
                out.hi = 1.0
            return out
        disc = 0.0
    s = sqrt(disc)
    lo = (-h - s) / aa
    hi = (-h + s) / aa
    if in_a:
        lo = 0.0
        if hi < 0.0:
            hi = 0.0
    elif lo < _TINY:
        lo = _TINY
    if in_b:
        hi = 1.0
        if lo > 1.0:
            lo = 1.0
    elif hi > _ONE_MINUS:
        hi = _ONE_MINUS
    if lo > hi:
        return out
    out.lo = lo
    out.hi = hi
    return out


def free_interval(double ax, double ay, double bx, double by,
                  double cx, double cy, double r):
    cdef Iv iv = _free(ax, ay, bx, by, cx, cy, r)
    return iv.lo, iv.hi


cdef bint _greedy(const double[::1] px, const double[::1] py,
                  const double[::1] qx, const double[::1] qy,
                  double delta) noexcept nogil:
    cdef Py_ssize_t n = px.shape[0]
    cdef Py_ssize_t m = qx.shape[0]
    cdef Py_ssize_t i = 0, j = 0
    cdef double d, dd, di, dj
    if _dist(px[0], py[0], qx[0], qy[0]) > delta:
        return False
    while i < n - 1 or j < m - 1:
        if i < n - 1 and j < m - 1:
            dd = _dist(px[i + 1], py[i + 1], qx[j + 1], qy[j + 1])
            di = _dist(px[i + 1], py[i + 1], qx[j], qy[j])
            dj = _dist(px[i], py[i], qx[j + 1], qy[j + 1])
            if dd <= di and dd <= dj:
                i += 1
                j += 1
                d = dd
            elif di <= dj:
                i += 1
                d = di
            else:
                j += 1
                d = dj
        elif i < n - 1:
            i += 1
            d = _dist(px[i], py[i], qx[j], qy[j])
        else:
            j += 1
            d = _dist(px[i], py[i], qx[j], qy[j])
        if d > delta:
            return False
    return True


def greedy(const double[::1] px, const double[::1] py,
           const double[::1] qx, const double[::1] qy, double delta):
    cdef bint res
    with nogil:
        res = _greedy(px, py, qx, qy, delta)
    return res


cdef bint _negative(const double[::1] px, const double[::1] py,
                    const double[::1] qx, const double[::1] qy,
                    double delta) noexcept nogil:
    cdef Py_ssize_t n = px.shape[0]
    cdef Py_ssize_t m = qx.shape[0]
    cdef Py_ssize_t i, j = 0
    cdef double seg
    for i in range(n):
        while True:
            if j < m - 1:
                seg = _dist(qx[j], qy[j], qx[j + 1], qy[j + 1])
            else:
                seg = 0.0
            if _dist(qx[j], qy[j], px[i], py[i]) - seg <= delta:
                break
            j += 1
            if j == m:
                return True
    return False


def negative(const double[::1] px, const double[::1] py,
             const double[::1] qx, const double[::1] qy, double delta):
    cdef bint res
    with nogil:
        res = _negative(px, py, qx, qy, delta)
    return res


cdef void _init_boundary(const double[::1] xs, const double[::1] ys,
                         double cx, double cy, double delta, Iv* out) noexcept nogil:
    cdef Py_ssize_t k
    cdef Iv iv
    for k in range(xs.shape[0] - 1):
        iv = _free(xs[k], ys[k], xs[k + 1], ys[k + 1], cx, cy, delta)
        if iv.lo != 0.0:
            break
        out[k] = iv
        if iv.hi < 1.0:
            break


cdef inline void _fill(Iv* buf, Py_ssize_t a, Py_ssize_t b, double lo, double hi) noexcept nogil:
    cdef Py_ssize_t k
    for k in range(a, b):
        buf[k].lo = lo
        buf[k].hi = hi


cdef inline void _cell(Iv* left, Iv* bottom, Iv fr, Iv ft) noexcept nogil:
    # left/bottom hold the inputs and receive right/top outputs in place.
    cdef double rl = left.lo, rh = left.hi, bl = bottom.lo, bh = bottom.hi
    cdef double out_r_lo, out_t_lo
    if bl <= bh:
        out_r_lo = fr.lo
    elif rl <= rh:
        out_r_lo = fr.lo if fr.lo > rl else rl
    else:
        out_r_lo = EMPTY_LO
    if rl <= rh:
        out_t_lo = ft.lo
    elif bl <= bh:
        out_t_lo = ft.lo if ft.lo > bl else bl
    else:
        out_t_lo = EMPTY_LO
    left.lo = out_r_lo
    left.hi = fr.hi
    bottom.lo = out_t_lo
    bottom.hi = ft.hi


cdef bint _standard(const double[::1] px, const double[::1] py,
                    const double[::1] qx, const double[::1] qy,
                    double delta) noexcept nogil:
    cdef Py_ssize_t n = px.shape[0]
    cdef Py_ssize_t m = qx.shape[0]
    cdef Py_ssize_t i, j
    cdef Iv* lbuf
    cdef Iv* bbuf
    cdef Iv reach, fr, ft
    cdef bint alive, res
    if _dist(px[0], py[0], qx[0], qy[0]) > delta:
        return False
    if _dist(px[n - 1], py[n - 1], qx[m - 1], qy[m - 1]) > delta:
        return False
    lbuf = <Iv*> malloc((n - 1 + m - 1) * sizeof(Iv))
    bbuf = lbuf + (n - 1)
    _fill(lbuf, 0, n - 1 + m - 1, EMPTY_LO, EMPTY_HI)
    _init_boundary(px, py, qx[0], qy[0], delta, lbuf)
    _init_boundary(qx, qy, px[0], py[0], delta, bbuf)
    res = True
    for i in range(n - 1):
        reach = lbuf[i]
        alive = False
        for j in range(m - 1):
            if reach.lo > reach.hi and bbuf[j].lo > bbuf[j].hi:
                continue
            alive = True
            fr = _free(px[i], py[i], px[i + 1], py[i + 1], qx[j + 1], qy[j + 1], delta)
            ft = _free(qx[j], qy[j], qx[j + 1], qy[j + 1], px[i + 1], py[i + 1], delta)
            _cell(&reach, &bbuf[j], fr, ft)
        if not alive:
            res = False
            break
    if res:
        res = bbuf[m - 2].lo <= bbuf[m - 2].hi and bbuf[m - 2].hi >= 1.0
    free(lbuf)
    return res


def decide_standard(const double[::1] px, const double[::1] py,
                    const double[::1] qx, const double[::1] qy, double delta):
    cdef bint res
    with nogil:
        res = _standard(px, py, qx, qy, delta)
    return res


cdef struct Rec:
    const double* px
    const double* py
    const double* pl
    const double* qx
    const double* qy
    const double* ql
    double delta
    double full_bound
    Iv* lbuf
    Iv* bbuf
    long long* stats
    bint check
    int failed      # 0 ok, 1 full shortcut violated, 2 empty shortcut violated


cdef void _check_block(Rec* st, Py_ssize_t p, Py_ssize_t b, Py_ssize_t q, Py_ssize_t d,
                       bint full) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double dij
    cdef double slack = 1e-9 * (1.0 + st.delta)
    if (b - p + 1) * (d - q + 1) > _SMALL_BLOCK:
        return
    for i in range(p, b + 1):
        for j in range(q, d + 1):
            dij = _dist(st.px[i], st.py[i], st.qx[j], st.qy[j])
            if full and dij > st.delta + slack:
                st.failed = 1
            if not full and dij < st.delta - slack:
                st.failed = 2


cdef void _solve(Rec* st, Py_ssize_t p, Py_ssize_t b, Py_ssize_t q, Py_ssize_t d) noexcept nogil:
    cdef Iv* lbuf = st.lbuf
    cdef Iv* bbuf = st.bbuf
    cdef long long* stats = st.stats
    cdef Py_ssize_t i, j, r
    cdef long long scanned = 0
    cdef bint has_input = False
    cdef double corner, spread, margin
    cdef Iv fr, ft
    stats[0] += 1
    for i in range(p, b):
        scanned += 1
        if lbuf[i].lo <= lbuf[i].hi:
            has_input = True
            break
    if not has_input:
        for j in range(q, d):
            scanned += 1
            if bbuf[j].lo <= bbuf[j].hi:
                has_input = True
                break
    stats[1] += 1 + scanned
    if not has_input:
        stats[2] += 1
        return

    corner = _dist(st.px[p], st.py[p], st.qx[q], st.qy[q])
    spread = (st.pl[b] - st.pl[p]) + (st.ql[d] - st.ql[q])
    margin = _SHORTCUT_RTOL * (corner + st.pl[b] + st.ql[d] + st.delta)
    if corner - spread > st.delta + margin:
        stats[3] += 1
        if st.check:
            _check_block(st, p, b, q, d, False)
        _fill(lbuf, p, b, EMPTY_LO, EMPTY_HI)
        _fill(bbuf, q, d, EMPTY_LO, EMPTY_HI)
        return
    if corner + spread <= st.full_bound - margin and (lbuf[p].lo == 0.0 or bbuf[q].lo == 0.0):
        stats[4] += 1
        if st.check:
            _check_block(st, p, b, q, d, True)
        _fill(lbuf, p, b, 0.0, 1.0)
        _fill(bbuf, q, d, 0.0, 1.0)
        return

    if b - p == 1 and d - q == 1:
        stats[5] += 1
        fr = _free(st.px[p], st.py[p], st.px[b], st.py[b], st.qx[d], st.qy[d], st.delta)
        ft = _free(st.qx[q], st.qy[q], st.qx[d], st.qy[d], st.px[b], st.py[b], st.delta)
        _cell(&lbuf[p], &bbuf[q], fr, ft)
        return

    stats[6] += 1
    if b - p >= d - q:
        r = (p + b) // 2
        _solve(st, p, r, q, d)
        _solve(st, r, b, q, d)
    else:
        r = (q + d) // 2
        _solve(st, p, b, q, r)
        _solve(st, p, b, r, d)


def decide_recursive(const double[::1] px, const double[::1] py, const double[::1] pl,
                     const double[::1] qx, const double[::1] qy, const double[::1] ql,
                     double delta, stats=None, double full_scale=1.0, bint check=False):
    cdef Py_ssize_t n = px.shape[0]
    cdef Py_ssize_t m = qx.shape[0]
    cdef long long counters[7]
    cdef Rec st
    cdef bint res = False
    cdef int k
    for k in range(N_STATS):
        counters[k] = 0
    st.px = &px[0]
    st.py = &py[0]
    st.pl = &pl[0]
    st.qx = &qx[0]
    st.qy = &qy[0]
    st.ql = &ql[0]
    st.delta = delta
    st.full_bound = delta * full_scale
    st.stats = counters
    st.check = check
    st.failed = 0
    with nogil:
        if (_dist(px[0], py[0], qx[0], qy[0]) <= delta
                and _dist(px[n - 1], py[n - 1], qx[m - 1], qy[m - 1]) <= delta):
            st.lbuf = <Iv*> malloc((n - 1 + m - 1) * sizeof(Iv))
            st.bbuf = st.lbuf + (n - 1)
            _fill(st.lbuf, 0, n - 1 + m - 1, EMPTY_LO, EMPTY_HI)
            _init_boundary(px, py, qx[0], qy[0], delta, st.lbuf)
            _init_boundary(qx, qy, px[0], py[0], delta, st.bbuf)
            _solve(&st, 0, n - 1, 0, m - 1)
            res = st.bbuf[m - 2].lo <= st.bbuf[m - 2].hi and st.bbuf[m - 2].hi >= 1.0
            free(st.lbuf)
    if stats is not None:
        for k in range(N_STATS):
            stats[k] += counters[k]
    if st.failed == 1:
        raise AssertionError("full-block shortcut fired on a block with a vertex pair beyond delta")
    if st.failed == 2:
        raise AssertionError("empty-block shortcut fired on a block with a vertex pair within delta")
    return res
