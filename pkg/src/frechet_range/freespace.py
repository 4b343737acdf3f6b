"""Free-space cells and the standard quadratic reachability decider.

Orientation: the first parameter runs along ``pi`` (vertex ``i``), the second
along ``sigma`` (vertex ``j``). For cell ``(i, j)``:

* ``left``   -- ``sigma`` fixed at vertex ``j``,   ``pi`` ranging over edge ``i``
* ``right``  -- ``sigma`` fixed at vertex ``j+1``, ``pi`` ranging over edge ``i``
* ``bottom`` -- ``pi`` fixed at vertex ``i``,      ``sigma`` ranging over edge ``j``
* ``top``    -- ``pi`` fixed at vertex ``i+1``,    ``sigma`` ranging over edge ``j``

Left/right intervals are parameterized along ``pi``'s edge, bottom/top along
``sigma``'s edge. Reachability flows from left and bottom to right and top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import _backend
from .geometry import EMPTY, Curve, Interval, lb_frechet, segment_circle_free_interval

__all__ = [
    "CellBoundaries",
    "cell_boundaries",
    "propagate_cell",
    "decide_standard",
    "distance_upper_bound",
    "estimate_distance",
]


@dataclass(frozen=True)
class CellBoundaries:
    left: Interval
    bottom: Interval
    right: Interval
    top: Interval


def cell_boundaries(pi: Curve, sigma: Curve, i: int, j: int, delta: float) -> CellBoundaries:
    """Free portions of the four sides of cell ``(i, j)`` (1-based edge indices)."""
    n, m = len(pi), len(sigma)
    if not (1 <= i <= n - 1 and 1 <= j <= m - 1):
        raise IndexError(f"cell ({i}, {j}) outside [1, {n - 1}] x [1, {m - 1}]")
    if delta < 0:
        raise ValueError("delta must be non-negative")
    p0, p1 = pi.vertex(i), pi.vertex(i + 1)
    s0, s1 = sigma.vertex(j), sigma.vertex(j + 1)
    return CellBoundaries(
        left=segment_circle_free_interval(p0, p1, s0, delta),
        bottom=segment_circle_free_interval(s0, s1, p0, delta),
        right=segment_circle_free_interval(p0, p1, s1, delta),
        top=segment_circle_free_interval(s0, s1, p1, delta),
    )


def propagate_cell(
    reach_left: Interval, reach_bottom: Interval, bounds: CellBoundaries
) -> tuple[Interval, Interval]:
    """Reachable parts of the right and top sides given reachable left and bottom.

    The cell is convex, so entering from the bottom reaches every free point of
    the right side, while entering from the left only reaches points at or
    above the lowest left entry. Symmetrically for the top side.
    """
    if not reach_bottom.is_empty:
        right = bounds.right
    elif not reach_left.is_empty:
        right = Interval.from_pair((max(bounds.right.lo, reach_left.lo), bounds.right.hi))
    else:
        right = EMPTY
    if not reach_left.is_empty:
        top = bounds.top
    elif not reach_bottom.is_empty:
        top = Interval.from_pair((max(bounds.top.lo, reach_bottom.lo), bounds.top.hi))
    else:
        top = EMPTY
    if right.is_empty:
        right = EMPTY
    if top.is_empty:
        top = EMPTY
    return right, top


def decide_standard(pi: Curve, sigma: Curve, delta: float, backend: str | None = None) -> bool:
    """Decide ``d_F(pi, sigma) <= delta`` by sweeping every free-space cell.

    Uses one rolling row of reachability intervals. This is the reference
    oracle for the faster deciders.
    """
    k = _backend.get(backend)
    return bool(k.decide_standard(pi.xs, pi.ys, sigma.xs, sigma.ys, float(delta)))


def distance_upper_bound(pi: Curve, sigma: Curve) -> float:
    """A value guaranteed to be at least ``d_F(pi, sigma)``.

    Diameter of the union of both bounding boxes plus both curve lengths.
    """
    a, b = pi.summary, sigma.summary
    w = max(a.max_x, b.max_x) - min(a.min_x, b.min_x)
    h = max(a.max_y, b.max_y) - min(a.min_y, b.min_y)
    return math.sqrt(w * w + h * h) + pi.length + sigma.length


def estimate_distance(
    pi: Curve,
    sigma: Curve,
    rtol: float = 1e-10,
    decide: Callable[[Curve, Curve, float], bool] | None = None,
    max_iter: int = 200,
) -> float:
    """Bisection estimate of ``d_F``: the smallest probed ``delta`` the decider accepts.

    The result is an upper bound of the true distance; the gap to the largest
    rejected probe is below ``rtol`` times the result.
    """
    decide = decide or decide_standard
    lo = lb_frechet(pi.summary, sigma.summary)
    if decide(pi, sigma, lo):
        return lo
    hi = distance_upper_bound(pi, sigma)
    while not decide(pi, sigma, hi):
        hi *= 2.0
    for _ in range(max_iter):
        if hi - lo <= rtol * hi:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if decide(pi, sigma, mid):
            hi = mid
        else:
            lo = mid
    return hi
