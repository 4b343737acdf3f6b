"""Per-candidate decision cascade.

A candidate pair first meets the greedy positive filter, then the discrete
negative filter in both orientations, and only then the recursive free-space
decider.

Soundness of the greedy filter: the walk is a discrete coupling of the two
vertex sequences. Realize each step by moving linearly along the edge(s)
being advanced; the distance along such a move is a convex function of time
(a norm of an affine map), so it never exceeds the larger of the two endpoint
distances. A walk whose visited vertex pairs are all within ``delta`` is
therefore a continuous traversal within ``delta``.

Soundness of the negative filter: for each vertex of ``pi`` the scan keeps the
smallest ``sigma`` vertex index whose distance to it, minus the length of the
following ``sigma`` edge, is within ``delta``. That index never exceeds the
earliest real position on ``sigma`` any ``delta``-traversal can occupy while at
this vertex, so running off the end of ``sigma`` proves ``d_F > delta``.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, fields

from . import _backend
from ._pykernels import N_STATS
from .geometry import EMPTY, FULL, Curve, Interval

__all__ = [
    "FilterVerdict",
    "Stage",
    "Frontier",
    "RecursionStats",
    "CascadeTrace",
    "COMPLEXITY_CONSTANT",
    "complexity_bound",
    "greedy_filter",
    "negative_filter",
    "decide_recursive",
    "decide_cascade",
    "run_cascade",
    "propagate_block",
]


class FilterVerdict(enum.Enum):
    CERTIFIED_YES = "yes"
    CERTIFIED_NO = "no"
    UNKNOWN = "unknown"


class Stage(enum.Enum):
    GREEDY = "greedy"
    NEGATIVE = "negative"
    EXACT = "exact"


@dataclass
class RecursionStats:
    """Counters accumulated by :func:`decide_recursive`.

    ``visits`` counts recursion blocks entered; ``work`` adds the frontier
    intervals scanned while testing for empty input.
    """

    visits: int = 0
    work: int = 0
    empty_input: int = 0
    empty_block: int = 0
    full_block: int = 0
    cells: int = 0
    splits: int = 0

    def _vector(self) -> list[int]:
        return [getattr(self, f.name) for f in fields(self)]

    def _absorb(self, vec) -> None:
        for f, v in zip(fields(self), vec):
            setattr(self, f.name, getattr(self, f.name) + int(v))


#: Documented constant c of the step guard ``work <= c * N * max(1, log2 N)``,
#: with ``N = n * m``.
COMPLEXITY_CONSTANT = 4.0


def complexity_bound(n: int, m: int, c: float = COMPLEXITY_CONSTANT) -> float:
    nm = n * m
    return c * nm * max(1.0, math.log2(nm))


@dataclass(frozen=True)
class Frontier:
    """Reachability intervals along one block side, one per edge spanned."""

    intervals: tuple[Interval, ...]

    def __len__(self) -> int:
        return len(self.intervals)

    def __getitem__(self, k: int) -> Interval:
        return self.intervals[k]

    @classmethod
    def empty(cls, edges: int) -> "Frontier":
        return cls((EMPTY,) * edges)

    @classmethod
    def full(cls, edges: int) -> "Frontier":
        return cls((FULL,) * edges)


def greedy_filter(pi: Curve, sigma: Curve, delta: float, backend: str | None = None) -> FilterVerdict:
    """Greedy vertex walk from (1, 1) to (n, m); CERTIFIED_YES if it stays within ``delta``.

    Ties between successor pairs prefer the diagonal step, then advancing ``pi``.
    """
    k = _backend.get(backend)
    if k.greedy(pi.xs, pi.ys, sigma.xs, sigma.ys, float(delta)):
        return FilterVerdict.CERTIFIED_YES
    return FilterVerdict.UNKNOWN


def negative_filter(pi: Curve, sigma: Curve, delta: float, backend: str | None = None) -> FilterVerdict:
    """Discrete relaxed monotone scan of ``sigma`` against the vertices of ``pi``.

    One orientation only; the cascade also runs it with the curves swapped.
    """
    k = _backend.get(backend)
    if k.negative(pi.xs, pi.ys, sigma.xs, sigma.ys, float(delta)):
        return FilterVerdict.CERTIFIED_NO
    return FilterVerdict.UNKNOWN


def decide_recursive(
    pi: Curve,
    sigma: Curve,
    delta: float,
    stats: RecursionStats | None = None,
    *,
    backend: str | None = None,
    check: bool = False,
    _full_scale: float = 1.0,
) -> bool:
    """Decide ``d_F(pi, sigma) <= delta`` by recursive block decomposition.

    Blocks with no reachable input are skipped; blocks whose corner distance
    minus both subcurve lengths exceeds ``delta`` are empty; blocks whose
    corner distance plus both subcurve lengths is within ``delta`` and whose
    lower-left corner is reachable are full. Other blocks split the curve
    with more edges at its middle vertex, down to single cells.

    Parameters
    ----------
    stats : RecursionStats, optional
        Receives the recursion counters.
    check : bool
        Verify every shortcut on blocks of at most 64 vertex pairs by brute
        force; raises ``AssertionError`` on a violation.
    """
    k = _backend.get(backend)
    vec = [0] * N_STATS if stats is not None else None
    try:
        res = k.decide_recursive(
            pi.xs, pi.ys, pi.prefix, sigma.xs, sigma.ys, sigma.prefix,
            float(delta), vec, float(_full_scale), bool(check),
        )
    finally:
        if stats is not None:
            stats._absorb(vec)
    return bool(res)


def propagate_block(
    pi: Curve,
    sigma: Curve,
    delta: float,
    p: int,
    b: int,
    q: int,
    d: int,
    left: Frontier,
    bottom: Frontier,
    stats: RecursionStats | None = None,
) -> tuple[Frontier, Frontier]:
    """Run the block recursion on ``[p, b] x [q, d]`` (1-based vertex ranges).

    ``left`` holds the reachable intervals where ``sigma`` sits at vertex ``q``
    (one per ``pi`` edge ``p..b-1``); ``bottom`` those where ``pi`` sits at
    vertex ``p``. Returns the right and top frontiers.
    """
    from . import _pykernels as pk

    n, m = len(pi), len(sigma)
    if not (1 <= p < b <= n and 1 <= q < d <= m):
        raise IndexError(f"block [{p},{b}]x[{q},{d}] outside the {n}x{m} grid")
    if len(left) != b - p or len(bottom) != d - q:
        raise ValueError("frontier lengths must match the block's edge counts")
    st = pk.make_state(pi.xs, pi.ys, pi.prefix, sigma.xs, sigma.ys, sigma.prefix, float(delta))
    st.llo = [pk.EMPTY_LO] * (n - 1)
    st.lhi = [pk.EMPTY_HI] * (n - 1)
    st.blo = [pk.EMPTY_LO] * (m - 1)
    st.bhi = [pk.EMPTY_HI] * (m - 1)
    for k, iv in enumerate(left.intervals):
        st.llo[p - 1 + k], st.lhi[p - 1 + k] = iv.lo, iv.hi
    for k, iv in enumerate(bottom.intervals):
        st.blo[q - 1 + k], st.bhi[q - 1 + k] = iv.lo, iv.hi
    st.solve(p - 1, b - 1, q - 1, d - 1)
    if stats is not None:
        stats._absorb(st.stats)
    right = Frontier(tuple(Interval.from_pair((st.llo[i], st.lhi[i])) for i in range(p - 1, b - 1)))
    top = Frontier(tuple(Interval.from_pair((st.blo[j], st.bhi[j])) for j in range(q - 1, d - 1)))
    return right, top


@dataclass
class CascadeTrace:
    """Outcome of one cascade run; times are nanoseconds."""

    result: bool
    stage: Stage
    greedy_ns: int = 0
    negative_ns: int = 0
    exact_ns: int = 0


def run_cascade(
    pi: Curve,
    sigma: Curve,
    delta: float,
    *,
    use_greedy: bool = True,
    use_negative: bool = True,
    exact: str = "recursive",
    kernels=None,
) -> CascadeTrace:
    """Greedy filter, negative filter both ways, then the exact decider, with timings.

    ``exact`` is ``"recursive"`` or ``"standard"``; the switches exist for
    ablation runs.
    """
    k = kernels if kernels is not None else _backend.kernels
    clock = time.perf_counter_ns
    px, py, qx, qy = pi.xs, pi.ys, sigma.xs, sigma.ys
    delta = float(delta)
    trace = CascadeTrace(result=False, stage=Stage.EXACT)
    if use_greedy:
        t0 = clock()
        yes = k.greedy(px, py, qx, qy, delta)
        trace.greedy_ns = clock() - t0
        if yes:
            trace.result = True
            trace.stage = Stage.GREEDY
            return trace
    if use_negative:
        t0 = clock()
        no = k.negative(px, py, qx, qy, delta) or k.negative(qx, qy, px, py, delta)
        trace.negative_ns = clock() - t0
        if no:
            trace.stage = Stage.NEGATIVE
            return trace
    t0 = clock()
    if exact == "recursive":
        res = k.decide_recursive(px, py, pi.prefix, qx, qy, sigma.prefix, delta)
    elif exact == "standard":
        res = k.decide_standard(px, py, qx, qy, delta)
    else:
        raise ValueError(f"unknown exact decider {exact!r}")
    trace.exact_ns = clock() - t0
    trace.result = bool(res)
    return trace


def decide_cascade(pi: Curve, sigma: Curve, delta: float) -> bool:
    """Full three-stage decision of ``d_F(pi, sigma) <= delta``."""
    return run_cascade(pi, sigma, delta).result
