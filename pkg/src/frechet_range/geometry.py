"""Curves, summaries, and the low-level geometric primitives.

Coordinates are planar doubles; all distances are Euclidean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, NamedTuple, Sequence

import numpy as np

from . import _pykernels

__all__ = [
    "Point",
    "Interval",
    "CurveSummary",
    "Curve",
    "InvalidCurveError",
    "summarize",
    "lb_frechet",
    "interpolate",
    "subcurve_length",
    "segment_circle_free_interval",
]


class InvalidCurveError(ValueError):
    """A vertex sequence cannot form a curve."""


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Interval:
    """Closed parameter interval ``[lo, hi]`` on one edge; ``lo > hi`` is empty."""

    lo: float
    hi: float

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def __contains__(self, t: float) -> bool:
        return self.lo <= t <= self.hi

    def __bool__(self) -> bool:
        return not self.is_empty

    @classmethod
    def empty(cls) -> "Interval":
        return EMPTY

    @classmethod
    def from_pair(cls, pair: tuple[float, float]) -> "Interval":
        lo, hi = pair
        if lo > hi:
            return EMPTY
        return cls(lo, hi)

    def issubset(self, other: "Interval") -> bool:
        if self.is_empty:
            return True
        return other.lo <= self.lo and self.hi <= other.hi


EMPTY = Interval(_pykernels.EMPTY_LO, _pykernels.EMPTY_HI)
FULL = Interval(0.0, 1.0)


class CurveSummary(NamedTuple):
    """Start point, end point, and coordinate extrema of a curve."""

    start_x: float
    start_y: float
    end_x: float
    end_y: float
    min_x: float
    max_x: float
    min_y: float
    max_y: float


def _coords(vertices: Iterable[Sequence[float]]) -> tuple[np.ndarray, np.ndarray]:
    arr = np.asarray(list(vertices) if not isinstance(vertices, np.ndarray) else vertices,
                     dtype=np.float64)
    if arr.size == 0:
        raise InvalidCurveError("curve has no vertices")
    if arr.ndim != 2 or arr.shape[1] < 2:
        raise InvalidCurveError(f"vertices must be (x, y) pairs, got shape {arr.shape}")
    if not np.all(np.isfinite(arr[:, :2])):
        raise InvalidCurveError("vertex coordinates must be finite")
    return (np.ascontiguousarray(arr[:, 0]), np.ascontiguousarray(arr[:, 1]))


def summarize(vertices: Iterable[Sequence[float]]) -> CurveSummary:
    """Compute the 8-component summary vector of a vertex sequence.

    Raises
    ------
    InvalidCurveError
        If ``vertices`` is empty.
    """
    xs, ys = _coords(vertices)
    return _summary(xs, ys)


def _summary(xs: np.ndarray, ys: np.ndarray) -> CurveSummary:
    return CurveSummary(
        float(xs[0]), float(ys[0]), float(xs[-1]), float(ys[-1]),
        float(xs.min()), float(xs.max()), float(ys.min()), float(ys.max()),
    )


def lb_frechet(a: CurveSummary, b: CurveSummary) -> float:
    """Lower bound on the Fréchet distance of the summarized curves.

    Maximum of the start-point distance, the end-point distance and the four
    differences of coordinate extrema.
    """
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    start = math.sqrt(dx * dx + dy * dy)
    dx = a[2] - b[2]
    dy = a[3] - b[3]
    end = math.sqrt(dx * dx + dy * dy)
    return max(
        start,
        end,
        abs(a[4] - b[4]),
        abs(a[5] - b[5]),
        abs(a[6] - b[6]),
        abs(a[7] - b[7]),
    )


class Curve:
    """Immutable polygonal curve with prefix lengths and summary.

    Parameters
    ----------
    vertices : sequence of (x, y)
        At least two vertices with finite coordinates. Extra columns are ignored.
    id : hashable, optional
        Identifier, stable within a database.
    """

    __slots__ = ("id", "xs", "ys", "prefix", "summary")

    def __init__(self, vertices, id: Hashable = None):
        xs, ys = _coords(vertices)
        if xs.shape[0] < 2:
            raise InvalidCurveError(f"curve has fewer than 2 vertices ({xs.shape[0]})")
        dx = np.diff(xs)
        dy = np.diff(ys)
        prefix = np.empty_like(xs)
        prefix[0] = 0.0
        np.cumsum(np.sqrt(dx * dx + dy * dy), out=prefix[1:])
        for arr in (xs, ys, prefix):
            arr.setflags(write=False)
        object.__setattr__(self, "id", id)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "summary", _summary(xs, ys))

    def __setattr__(self, name, value):
        raise AttributeError("Curve is immutable")

    def __len__(self) -> int:
        return self.xs.shape[0]

    def __repr__(self) -> str:
        return f"Curve(id={self.id!r}, n={len(self)}, length={self.length:.6g})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Curve):
            return NotImplemented
        return (self.id == other.id and np.array_equal(self.xs, other.xs)
                and np.array_equal(self.ys, other.ys))

    def __hash__(self) -> int:
        return hash((self.id, len(self)))

    @property
    def vertices(self) -> list[Point]:
        return [Point(x, y) for x, y in zip(self.xs.tolist(), self.ys.tolist())]

    @property
    def length(self) -> float:
        return float(self.prefix[-1])

    def vertex(self, i: int) -> Point:
        """Vertex ``i`` (1-based)."""
        if not 1 <= i <= len(self):
            raise IndexError(f"vertex index {i} out of range [1, {len(self)}]")
        return Point(float(self.xs[i - 1]), float(self.ys[i - 1]))

    def translated(self, dx: float, dy: float, id: Hashable = None) -> "Curve":
        return Curve(np.column_stack([self.xs + dx, self.ys + dy]), id=id)

    def reversed(self, id: Hashable = None) -> "Curve":
        return Curve(np.column_stack([self.xs[::-1], self.ys[::-1]]), id=id)


def interpolate(curve: Curve, t: float) -> Point:
    """Point at parameter ``t`` in ``[1, n]``; integer ``t`` gives the vertex exactly."""
    n = len(curve)
    if not 1 <= t <= n:
        raise ValueError(f"parameter {t} outside [1, {n}]")
    i = min(int(math.floor(t)), n - 1)
    lam = t - i
    if lam == 0.0:
        return curve.vertex(i)
    ax, ay = curve.xs[i - 1], curve.ys[i - 1]
    bx, by = curve.xs[i], curve.ys[i]
    if lam == 1.0:
        return Point(float(bx), float(by))
    return Point(float((1 - lam) * ax + lam * bx), float((1 - lam) * ay + lam * by))


def subcurve_length(curve: Curve, p: int, b: int) -> float:
    """Length of the subcurve between vertices ``p`` and ``b`` (1-based, ``p <= b``)."""
    n = len(curve)
    if not 1 <= p <= b <= n:
        raise IndexError(f"need 1 <= p <= b <= {n}, got p={p}, b={b}")
    return float(curve.prefix[b - 1] - curve.prefix[p - 1])


def segment_circle_free_interval(seg_a, seg_b, center, radius: float) -> Interval:
    """Parameters ``λ`` in [0, 1] with ``|(1-λ)a + λb - center| <= radius``.

    A discriminant that is negative only by rounding noise (relative 1e-12)
    is treated as tangency. The endpoints are exactly 0 / 1 iff the segment
    endpoints themselves are within ``radius``.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    lo, hi = _pykernels.free_interval(
        float(seg_a[0]), float(seg_a[1]), float(seg_b[0]), float(seg_b[1]),
        float(center[0]), float(center[1]), float(radius),
    )
    return Interval.from_pair((lo, hi))
