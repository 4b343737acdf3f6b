"""Eight-dimensional point-region tree over curve summaries."""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

import numpy as np

from .geometry import CurveSummary, lb_frechet

__all__ = ["DEFAULT_CAPACITY", "SpatialIndex", "build", "candidates"]

DEFAULT_CAPACITY = 16
DIM = 8
_MAX_DEPTH = 60
_WEIGHTS = (1 << np.arange(DIM)).astype(np.int64)


class _Node:
    __slots__ = ("lo", "hi", "items", "child_lo", "child_hi", "children")

    def __init__(self, lo: np.ndarray, hi: np.ndarray):
        self.lo = lo
        self.hi = hi
        self.items: np.ndarray | None = None  # positions, for leaves
        self.child_lo: np.ndarray | None = None
        self.child_hi: np.ndarray | None = None
        self.children: list[_Node] = []

    @property
    def is_leaf(self) -> bool:
        return self.items is not None


class SpatialIndex:
    """Immutable point-region tree with 2**8 lazily materialized child slots per node.

    Each internal node splits its region at the center; a point goes to the
    child whose slot bit ``k`` is set iff coordinate ``k`` is at or above the
    center. Leaves hold at most ``capacity`` points unless all of them are
    identical.
    """

    def __init__(self, entries: Iterable[tuple[CurveSummary, Hashable]] = (),
                 capacity: int = DEFAULT_CAPACITY):
        if capacity < 1:
            raise ValueError("capacity must be positive")
        entries = list(entries)
        self.capacity = capacity
        self.ids: list[Hashable] = [e[1] for e in entries]
        self.points = np.array([tuple(e[0]) for e in entries], dtype=np.float64).reshape(-1, DIM)
        self.points.setflags(write=False)
        self._summaries = [CurveSummary(*e[0]) for e in entries]
        self.root: _Node | None = None
        if len(entries):
            lo = self.points.min(axis=0)
            hi = self.points.max(axis=0)
            pad = 0.01 * (hi - lo)
            # zero-extent dimensions still get a positive pad
            pad = np.where(pad > 0, pad, 0.01 * np.maximum(1.0, np.abs(lo)))
            self.root = self._build(np.arange(len(entries)), lo - pad, hi + pad, 0)

    def __len__(self) -> int:
        return len(self.ids)

    def _build(self, items: np.ndarray, lo: np.ndarray, hi: np.ndarray, depth: int) -> _Node:
        node = _Node(lo, hi)
        pts = self.points[items]
        if (len(items) <= self.capacity or depth >= _MAX_DEPTH
                or bool(np.all(pts == pts[0]))):
            node.items = items
            return node
        center = 0.5 * (lo + hi)
        upper = pts >= center
        codes = upper.astype(np.int64) @ _WEIGHTS
        order = np.argsort(codes, kind="stable")
        codes = codes[order]
        starts = np.flatnonzero(np.r_[True, codes[1:] != codes[:-1]])
        bounds = np.r_[starts, len(codes)]
        child_lo, child_hi = [], []
        for s, e in zip(bounds[:-1], bounds[1:]):
            bits = ((int(codes[s]) >> np.arange(DIM)) & 1).astype(bool)
            clo = np.where(bits, center, lo)
            chi = np.where(bits, hi, center)
            node.children.append(self._build(items[order[s:e]], clo, chi, depth + 1))
            child_lo.append(clo)
            child_hi.append(chi)
        node.child_lo = np.array(child_lo)
        node.child_hi = np.array(child_hi)
        return node

    def box_query(self, q: CurveSummary, delta: float) -> list[Hashable]:
        """Ids whose summary is within ``delta`` of ``q`` in every component."""
        return [self.ids[k] for k in self._box_positions(q, delta)]

    def _box_positions(self, q: CurveSummary, delta: float) -> list[int]:
        if self.root is None:
            return []
        qv = np.asarray(q, dtype=np.float64)
        # region pruning gets a hair of slack; the leaf test below is exact
        slack = 1e-12 * (np.abs(qv) + delta) + 1e-300
        qlo = qv - delta - slack
        qhi = qv + delta + slack
        out: list[np.ndarray] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.items is not None:
                pts = self.points[node.items]
                mask = np.all(np.abs(pts - qv) <= delta, axis=1)
                if mask.any():
                    out.append(node.items[mask])
                continue
            hit = np.all((node.child_hi >= qlo) & (node.child_lo <= qhi), axis=1)
            for k in np.flatnonzero(hit):
                stack.append(node.children[k])
        if not out:
            return []
        return sorted(np.concatenate(out).tolist())

    def candidates(self, q: CurveSummary, delta: float) -> list[Hashable]:
        """Ids of all stored curves with ``lb_frechet(q, summary) <= delta``."""
        return [self.ids[k] for k in self.candidate_positions(q, delta)]

    def candidate_positions(self, q: CurveSummary, delta: float) -> list[int]:
        if delta < 0:
            raise ValueError("delta must be non-negative")
        summaries = self._summaries
        return [k for k in self._box_positions(q, delta) if lb_frechet(q, summaries[k]) <= delta]

    def leaves(self) -> list[np.ndarray]:
        """Item positions per leaf (for invariant checks)."""
        if self.root is None:
            return []
        found, stack = [], [self.root]
        while stack:
            node = stack.pop()
            if node.items is not None:
                found.append(node.items)
            else:
                stack.extend(node.children)
        return found

    def depth(self) -> int:
        def walk(node: _Node) -> int:
            return 1 if node.is_leaf else 1 + max(walk(c) for c in node.children)
        return 0 if self.root is None else walk(self.root)


def build(summaries: Sequence[tuple[CurveSummary, Hashable]],
          capacity: int = DEFAULT_CAPACITY) -> SpatialIndex:
    return SpatialIndex(summaries, capacity=capacity)


def candidates(index: SpatialIndex, q: CurveSummary, delta: float) -> list[Hashable]:
    return index.candidates(q, delta)
