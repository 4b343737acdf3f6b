"""Range search over polygonal trajectories under the continuous Fréchet distance.

Typical use::

    from frechet_range import Engine, load_database, read_curve

    engine = Engine(load_database("data/manifest.txt"))
    result = engine.query(read_curve("query.txt"), delta=25.0)
    print(result.matches)
"""

from ._backend import NAME as BACKEND
from .dataset import Database, Query, generate_synthetic, load_database, load_queries, read_curve
from .decider import (
    FilterVerdict,
    RecursionStats,
    decide_cascade,
    decide_recursive,
    greedy_filter,
    negative_filter,
)
from .engine import Engine, QueryResult, generate_query, naive_scan
from .freespace import cell_boundaries, decide_standard, estimate_distance, propagate_cell
from .geometry import (
    Curve,
    CurveSummary,
    Interval,
    Point,
    interpolate,
    lb_frechet,
    segment_circle_free_interval,
    subcurve_length,
    summarize,
)
from .index import SpatialIndex

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Curve",
    "CurveSummary",
    "Database",
    "Engine",
    "FilterVerdict",
    "Interval",
    "Point",
    "Query",
    "QueryResult",
    "RecursionStats",
    "SpatialIndex",
    "cell_boundaries",
    "decide_cascade",
    "decide_recursive",
    "decide_standard",
    "estimate_distance",
    "generate_query",
    "generate_synthetic",
    "greedy_filter",
    "interpolate",
    "lb_frechet",
    "load_database",
    "load_queries",
    "naive_scan",
    "negative_filter",
    "propagate_cell",
    "read_curve",
    "segment_circle_free_interval",
    "subcurve_length",
    "summarize",
]
