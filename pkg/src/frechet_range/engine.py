"""Range-search engine: index candidates, then the per-candidate cascade."""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _backend
from .dataset import Database, Query
from .decider import Stage, run_cascade
from .freespace import decide_standard
from .geometry import Curve
from .index import DEFAULT_CAPACITY, SpatialIndex

__all__ = ["QueryResult", "Engine", "generate_query", "naive_scan", "sort_ids"]


def sort_ids(ids: Iterable) -> list:
    return sorted(ids, key=str)


@dataclass
class QueryResult:
    """Answer and instrumentation for one query; times in microseconds."""

    index: int
    matches: list
    candidates: int
    false_positives: int
    time_index: float = 0.0
    time_greedy: float = 0.0
    time_negative: float = 0.0
    time_exact: float = 0.0
    time_total: float = 0.0
    resolved: dict = field(default_factory=lambda: {s.value: 0 for s in Stage})

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["count"] = len(self.matches)
        return rec

    def line(self) -> str:
        return " ".join([str(self.index), str(len(self.matches)), *map(str, self.matches)])


class Engine:
    """Immutable search structure over a database; safe for concurrent queries.

    Parameters
    ----------
    database : Database
    capacity : int
        Leaf capacity of the spatial index.
    backend : {"compiled", "python"}, optional
        Kernel backend; defaults to the one selected at import.
    """

    def __init__(self, database: Database | Sequence[Curve], capacity: int = DEFAULT_CAPACITY,
                 backend: str | None = None):
        self.database = database if isinstance(database, Database) else Database(tuple(database))
        self.kernels = _backend.get(backend)
        t0 = time.perf_counter()
        self.index = SpatialIndex(((c.summary, c.id) for c in self.database), capacity=capacity)
        self.build_seconds = time.perf_counter() - t0

    def __len__(self) -> int:
        return len(self.database)

    def query(self, curve: Curve, delta: float, *, index: int = 0, use_greedy: bool = True,
              use_negative: bool = True, exact: str = "recursive") -> QueryResult:
        """Run one instrumented query."""
        clock = time.perf_counter_ns
        t_start = clock()
        positions = self.index.candidate_positions(curve.summary, delta)
        t_index = clock() - t_start
        curves = self.database.curves
        matches = []
        g = ng = ex = 0
        resolved = {s.value: 0 for s in Stage}
        for k in positions:
            sigma = curves[k]
            tr = run_cascade(curve, sigma, delta, use_greedy=use_greedy,
                             use_negative=use_negative, exact=exact, kernels=self.kernels)
            g += tr.greedy_ns
            ng += tr.negative_ns
            ex += tr.exact_ns
            resolved[tr.stage.value] += 1
            if tr.result:
                matches.append(sigma.id)
        total = clock() - t_start
        return QueryResult(
            index=index,
            matches=sort_ids(matches),
            candidates=len(positions),
            false_positives=len(positions) - len(matches),
            time_index=t_index / 1e3,
            time_greedy=g / 1e3,
            time_negative=ng / 1e3,
            time_exact=ex / 1e3,
            time_total=total / 1e3,
            resolved=resolved,
        )

    def matches(self, curve: Curve, delta: float, limit: int | None = None) -> list:
        """Uninstrumented query; stops early once more than ``limit`` matches are found."""
        k = self.kernels
        px, py, pl = curve.xs, curve.ys, curve.prefix
        delta = float(delta)
        curves = self.database.curves
        out = []
        for pos in self.index.candidate_positions(curve.summary, delta):
            s = curves[pos]
            qx, qy = s.xs, s.ys
            if k.greedy(px, py, qx, qy, delta):
                ok = True
            elif k.negative(px, py, qx, qy, delta) or k.negative(qx, qy, px, py, delta):
                ok = False
            else:
                ok = k.decide_recursive(px, py, pl, qx, qy, s.prefix, delta)
            if ok:
                out.append(s.id)
                if limit is not None and len(out) > limit:
                    break
        return sort_ids(out)

    def count(self, curve: Curve, delta: float, limit: int | None = None) -> int:
        return len(self.matches(curve, delta, limit))

    def run(self, queries: Sequence[Query], threads: int = 1, **options) -> Iterator[QueryResult]:
        """Answer queries in order; ``threads > 1`` runs them concurrently."""
        if threads <= 1:
            for i, q in enumerate(queries):
                yield self.query(q.curve, q.delta, index=i, **options)
            return
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(self.query, q.curve, q.delta, index=i, **options)
                       for i, q in enumerate(queries)]
            for f in futures:
                yield f.result()

    def delta_upper_bound(self, curve: Curve) -> float:
        """Threshold at which every database curve is within range of ``curve``."""
        pts = self.index.points
        s = curve.summary
        if len(pts):
            w = max(s.max_x, pts[:, 5].max()) - min(s.min_x, pts[:, 4].min())
            h = max(s.max_y, pts[:, 7].max()) - min(s.min_y, pts[:, 6].min())
            longest = max(c.length for c in self.database)
        else:
            w, h, longest = s.max_x - s.min_x, s.max_y - s.min_y, 0.0
        return math.hypot(w, h) + curve.length + longest


def naive_scan(database: Iterable[Curve], curve: Curve, delta: float) -> list:
    """Reference answer: the standard decider against every curve."""
    return sort_ids(c.id for c in database if decide_standard(curve, c, delta))


def generate_query(engine: Engine, k: int, rng: np.random.Generator, *, noise: float = 1e-4,
                   max_iter: int = 200) -> Query | None:
    """Draw a random query whose answer has exactly ``k`` curves, or ``None`` to redraw.

    The query curve is a random database curve with every vertex displaced
    by Gaussian noise of ``noise`` times its bounding-box diagonal, so that
    ``k = 0`` is attainable. The threshold is found by bisection on the
    pipeline's result count.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if len(engine) == 0:
        raise ValueError("database is empty")
    src = engine.database[int(rng.integers(len(engine)))]
    s = src.summary
    scale = noise * math.hypot(s.max_x - s.min_x, s.max_y - s.min_y)
    pts = np.column_stack([src.xs, src.ys]) + rng.normal(scale=scale, size=(len(src), 2))
    curve = Curve(pts, id=f"query:{src.id}")
    lo, hi = 0.0, engine.delta_upper_bound(curve)
    width0 = hi
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        c = engine.count(curve, mid, limit=k)
        if c == k:
            return Query(curve, mid)
        if c < k:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * width0:
            break
    return None
