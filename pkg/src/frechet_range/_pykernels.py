"""Pure-Python decision kernels.

Fallback twin of ``_ckernels.pyx``. Both modules perform the same floating
point operations in the same order, so verdicts are bit-for-bit identical
across backends. Curves enter as flat coordinate sequences (0-based vertex
indices); intervals are ``(lo, hi)`` pairs with ``lo > hi`` meaning empty.
"""

from __future__ import annotations

import math

EMPTY_LO = 2.0
EMPTY_HI = -1.0
# Parameters strictly inside (0, 1) when the segment endpoint itself is not free.
_TINY = 5e-324
_ONE_MINUS = 1.0 - 2.0**-53
_DISC_RTOL = 1e-12
_SHORTCUT_RTOL = 1e-10

# Indices into the recursion statistics vector.
STAT_VISITS = 0
STAT_WORK = 1
STAT_EMPTY_INPUT = 2
STAT_EMPTY_BLOCK = 3
STAT_FULL_BLOCK = 4
STAT_CELLS = 5
STAT_SPLITS = 6
N_STATS = 7

_SMALL_BLOCK = 64


def free_interval(ax, ay, bx, by, cx, cy, r):
    """Parameters of segment ``a->b`` within distance ``r`` of ``c``.

    ``lo == 0.0`` holds exactly when ``a`` is within ``r`` of ``c`` and
    ``hi == 1.0`` exactly when ``b`` is, so interval endpoints agree with the
    vertex distance tests used everywhere else.
    """
    fx = ax - cx
    fy = ay - cy
    gx = bx - cx
    gy = by - cy
    ff = fx * fx + fy * fy
    in_a = math.sqrt(ff) <= r
    in_b = math.sqrt(gx * gx + gy * gy) <= r
    if in_a and in_b:
        return 0.0, 1.0
    dx = bx - ax
    dy = by - ay
    aa = dx * dx + dy * dy
    if aa == 0.0:
        return EMPTY_LO, EMPTY_HI
    h = fx * dx + fy * dy
    # b^2 - ac rewritten via Lagrange's identity; avoids cancellation near tangency
    cr = fx * dy - fy * dx
    disc = aa * r * r - cr * cr
    if disc < 0.0:
        if disc < -_DISC_RTOL * aa * (ff + r * r):
            if in_a:
                return 0.0, 0.0
            if in_b:
                return 1.0, 1.0
            return EMPTY_LO, EMPTY_HI
        disc = 0.0
    s = math.sqrt(disc)
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
        return EMPTY_LO, EMPTY_HI
    return lo, hi


def _dist(ax, ay, bx, by):
    dx = ax - bx
    dy = ay - by
    return math.sqrt(dx * dx + dy * dy)


def greedy(px, py, qx, qy, delta):
    """True when the greedy vertex walk stays within ``delta``."""
    px, py, qx, qy = _lists(px, py, qx, qy)
    n = len(px)
    m = len(qx)
    if _dist(px[0], py[0], qx[0], qy[0]) > delta:
        return False
    i = 0
    j = 0
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


def negative(px, py, qx, qy, delta):
    """True when the relaxed monotone scan proves the distance exceeds ``delta``."""
    px, py, qx, qy = _lists(px, py, qx, qy)
    n = len(px)
    m = len(qx)
    j = 0
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


def _init_boundary(xs, ys, cx, cy, delta, lo, hi):
    # Free prefix of one outer boundary, contiguous from the corner.
    for k in range(len(xs) - 1):
        a, b = free_interval(xs[k], ys[k], xs[k + 1], ys[k + 1], cx, cy, delta)
        if a != 0.0:
            break
        lo[k] = a
        hi[k] = b
        if b < 1.0:
            break


def _lists(*arrays):
    return [a.tolist() if hasattr(a, "tolist") else list(a) for a in arrays]


def decide_standard(px, py, qx, qy, delta):
    """Row-by-row free-space reachability over all cells."""
    px, py, qx, qy = _lists(px, py, qx, qy)
    n = len(px)
    m = len(qx)
    if _dist(px[0], py[0], qx[0], qy[0]) > delta:
        return False
    if _dist(px[n - 1], py[n - 1], qx[m - 1], qy[m - 1]) > delta:
        return False
    llo = [EMPTY_LO] * (n - 1)
    lhi = [EMPTY_HI] * (n - 1)
    blo = [EMPTY_LO] * (m - 1)
    bhi = [EMPTY_HI] * (m - 1)
    _init_boundary(px, py, qx[0], qy[0], delta, llo, lhi)
    _init_boundary(qx, qy, px[0], py[0], delta, blo, bhi)
    for i in range(n - 1):
        a0, a1, b0, b1 = px[i], py[i], px[i + 1], py[i + 1]
        rl = llo[i]
        rh = lhi[i]
        alive = False
        for j in range(m - 1):
            bl = blo[j]
            bh = bhi[j]
            if rl > rh and bl > bh:
                continue
            alive = True
            fr_lo, fr_hi = free_interval(a0, a1, b0, b1, qx[j + 1], qy[j + 1], delta)
            ft_lo, ft_hi = free_interval(qx[j], qy[j], qx[j + 1], qy[j + 1], b0, b1, delta)
            if bl <= bh:
                out_r_lo = fr_lo
            elif rl <= rh:
                out_r_lo = fr_lo if fr_lo > rl else rl
            else:
                out_r_lo = EMPTY_LO
            if rl <= rh:
                out_t_lo = ft_lo
            elif bl <= bh:
                out_t_lo = ft_lo if ft_lo > bl else bl
            else:
                out_t_lo = EMPTY_LO
            rl = out_r_lo
            rh = fr_hi
            blo[j] = out_t_lo
            bhi[j] = ft_hi
        if not alive:
            return False
    return blo[m - 2] <= bhi[m - 2] and bhi[m - 2] >= 1.0


class _Recursion:
    __slots__ = (
        "px", "py", "pl", "qx", "qy", "ql", "delta", "full_bound",
        "llo", "lhi", "blo", "bhi", "stats", "check",
    )

    def solve(self, p, b, q, d):
        llo = self.llo
        lhi = self.lhi
        blo = self.blo
        bhi = self.bhi
        stats = self.stats
        stats[STAT_VISITS] += 1

        scanned = 0
        has_input = False
        for i in range(p, b):
            scanned += 1
            if llo[i] <= lhi[i]:
                has_input = True
                break
        if not has_input:
            for j in range(q, d):
                scanned += 1
                if blo[j] <= bhi[j]:
                    has_input = True
                    break
        stats[STAT_WORK] += 1 + scanned
        if not has_input:
            stats[STAT_EMPTY_INPUT] += 1
            return

        px = self.px
        py = self.py
        qx = self.qx
        qy = self.qy
        delta = self.delta
        corner = _dist(px[p], py[p], qx[q], qy[q])
        spread = (self.pl[b] - self.pl[p]) + (self.ql[d] - self.ql[q])
        # shortcuts must not fire on rounding noise; declining one only costs a split
        margin = _SHORTCUT_RTOL * (corner + self.pl[b] + self.ql[d] + delta)
        if corner - spread > delta + margin:
            stats[STAT_EMPTY_BLOCK] += 1
            if self.check:
                self._check_block(p, b, q, d, full=False)
            for i in range(p, b):
                llo[i] = EMPTY_LO
                lhi[i] = EMPTY_HI
            for j in range(q, d):
                blo[j] = EMPTY_LO
                bhi[j] = EMPTY_HI
            return
        if corner + spread <= self.full_bound - margin and (llo[p] == 0.0 or blo[q] == 0.0):
            stats[STAT_FULL_BLOCK] += 1
            if self.check:
                self._check_block(p, b, q, d, full=True)
            for i in range(p, b):
                llo[i] = 0.0
                lhi[i] = 1.0
            for j in range(q, d):
                blo[j] = 0.0
                bhi[j] = 1.0
            return

        if b - p == 1 and d - q == 1:
            stats[STAT_CELLS] += 1
            rl = llo[p]
            rh = lhi[p]
            bl = blo[q]
            bh = bhi[q]
            fr_lo, fr_hi = free_interval(px[p], py[p], px[b], py[b], qx[d], qy[d], delta)
            ft_lo, ft_hi = free_interval(qx[q], qy[q], qx[d], qy[d], px[b], py[b], delta)
            if bl <= bh:
                out_r_lo = fr_lo
            elif rl <= rh:
                out_r_lo = fr_lo if fr_lo > rl else rl
            else:
                out_r_lo = EMPTY_LO
            if rl <= rh:
                out_t_lo = ft_lo
            elif bl <= bh:
                out_t_lo = ft_lo if ft_lo > bl else bl
            else:
                out_t_lo = EMPTY_LO
            llo[p] = out_r_lo
            lhi[p] = fr_hi
            blo[q] = out_t_lo
            bhi[q] = ft_hi
            return

        stats[STAT_SPLITS] += 1
        if b - p >= d - q:
            r = (p + b) // 2
            self.solve(p, r, q, d)
            self.solve(r, b, q, d)
        else:
            r = (q + d) // 2
            self.solve(p, b, q, r)
            self.solve(p, b, r, d)

    def _check_block(self, p, b, q, d, full):
        if (b - p + 1) * (d - q + 1) > _SMALL_BLOCK:
            return
        # Shortcut predicates are exact consequences of the triangle inequality;
        # the slack only absorbs rounding in the prefix-length differences.
        slack = 1e-9 * (1.0 + self.delta)
        for i in range(p, b + 1):
            for j in range(q, d + 1):
                dij = _dist(self.px[i], self.py[i], self.qx[j], self.qy[j])
                if full and dij > self.delta + slack:
                    raise AssertionError(
                        f"full-block shortcut fired on [{p},{b}]x[{q},{d}] "
                        f"but vertices ({i},{j}) are {dij} apart (delta={self.delta})"
                    )
                if not full and dij < self.delta - slack:
                    raise AssertionError(
                        f"empty-block shortcut fired on [{p},{b}]x[{q},{d}] "
                        f"but vertices ({i},{j}) are {dij} apart (delta={self.delta})"
                    )


def make_state(px, py, pl, qx, qy, ql, delta, stats=None, full_scale=1.0, check=False):
    st = _Recursion()
    st.px, st.py, st.pl, st.qx, st.qy, st.ql = _lists(px, py, pl, qx, qy, ql)
    st.delta = delta
    st.full_bound = delta * full_scale
    st.stats = stats if stats is not None else [0] * N_STATS
    st.check = check
    return st


def decide_recursive(px, py, pl, qx, qy, ql, delta, stats=None, full_scale=1.0, check=False):
    """Block-recursive reachability with triangle-inequality shortcuts.

    ``stats`` (a mutable sequence of length ``N_STATS``) accumulates counters.
    ``full_scale`` multiplies the bound of the full-block test; values other
    than 1.0 exist only to mutation-test the self-test harness.
    """
    st = make_state(px, py, pl, qx, qy, ql, delta, None, full_scale, check)
    px, py, qx, qy = st.px, st.py, st.qx, st.qy
    n = len(px)
    m = len(qx)
    counters = [0] * N_STATS
    st.stats = counters
    try:
        if _dist(px[0], py[0], qx[0], qy[0]) > delta:
            return False
        if _dist(px[n - 1], py[n - 1], qx[m - 1], qy[m - 1]) > delta:
            return False
        st.llo = [EMPTY_LO] * (n - 1)
        st.lhi = [EMPTY_HI] * (n - 1)
        st.blo = [EMPTY_LO] * (m - 1)
        st.bhi = [EMPTY_HI] * (m - 1)
        _init_boundary(px, py, qx[0], qy[0], delta, st.llo, st.lhi)
        _init_boundary(qx, qy, px[0], py[0], delta, st.blo, st.bhi)
        st.solve(0, n - 1, 0, m - 1)
        return st.blo[m - 2] <= st.bhi[m - 2] and st.bhi[m - 2] >= 1.0
    finally:
        if stats is not None:
            for k in range(N_STATS):
                stats[k] += counters[k]
