"""Random curve pairs for oracle-equivalence checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .freespace import estimate_distance
from .geometry import Curve

DELTA_FACTORS = (0.5, 0.9, 1.0, 1.1, 2.0)
# adds thresholds just below the critical value, where a slightly wrong shortcut flips verdicts
NEAR_CRITICAL_FACTORS = (0.5, 0.9, 0.995, 0.999, 1.0, 1.1, 2.0)


@dataclass(frozen=True)
class Triple:
    pi: Curve
    sigma: Curve
    delta: float
    factor: float
    distance: float


def _walk(rng: np.random.Generator, n: int) -> np.ndarray:
    steps = rng.normal(size=(n - 1, 2))
    return np.vstack([rng.uniform(-1, 1, size=(1, 2)), steps]).cumsum(axis=0)


def _resample(base: np.ndarray, n: int, rng: np.random.Generator, noise: float) -> np.ndarray:
    # n points along the base polyline at arc-length positions, plus jitter
    seg = np.hypot(*np.diff(base, axis=0).T)
    arc = np.concatenate([[0.0], np.cumsum(seg)])
    t = np.linspace(0.0, arc[-1], n)
    pts = np.column_stack([np.interp(t, arc, base[:, 0]), np.interp(t, arc, base[:, 1])])
    return pts + rng.normal(scale=noise, size=pts.shape)


def random_pair(rng: np.random.Generator, max_vertices: int = 50) -> tuple[Curve, Curve]:
    """Draw a pair of curves from a mix of structured and unstructured families."""
    n = int(rng.integers(2, max_vertices + 1))
    m = int(rng.integers(2, max_vertices + 1))
    kind = int(rng.integers(0, 6))
    if kind == 0:
        # unrelated scattered points
        a = rng.uniform(0, 10, size=(n, 2))
        b = rng.uniform(0, 10, size=(m, 2))
    elif kind == 1:
        # unrelated random walks
        a = _walk(rng, n)
        b = _walk(rng, m)
    elif kind >= 4:
        # back-and-forth motion along one line: triangle-inequality bounds are tight
        direction = rng.normal(size=2)
        direction /= np.hypot(*direction)
        n = min(n, 8)
        m = min(m, 8)
        a = np.round(rng.uniform(-5, 5, size=(n, 1))) * direction
        b = np.round(rng.uniform(-5, 5, size=(m, 1))) * direction
    else:
        # two noisy samplings of a common route; most interesting free space
        k = int(rng.integers(2, 8))
        base = _walk(rng, k) * rng.uniform(1, 20)
        noise = rng.uniform(0.01, 0.5) * (1 if kind == 2 else 0.1)
        a = _resample(base, n, rng, noise)
        b = _resample(base, m, rng, noise)
    if rng.random() < 0.1 and len(a) < max_vertices:
        # repeated vertices exercise zero-length edges; stay within max_vertices
        extra = rng.choice(len(a), size=min(len(a), max_vertices - len(a)), replace=False)
        a = a[np.sort(np.concatenate([np.arange(len(a)), extra]))]
    return Curve(a, id="pi"), Curve(b, id="sigma")


def corpus(seed: int, pairs: int, max_vertices: int = 50, factors=DELTA_FACTORS) -> Iterator[Triple]:
    """Yield ``pairs * len(factors)`` triples with ``delta`` = factor x estimated distance."""
    rng = np.random.default_rng(seed)
    for _ in range(pairs):
        pi, sigma = random_pair(rng, max_vertices)
        dist = estimate_distance(pi, sigma)
        for f in factors:
            yield Triple(pi, sigma, f * dist, f, dist)


def tent_pair(h: float) -> tuple[Curve, Curve]:
    """Unit segment and the tent over it with apex height ``h``; distance is ``h``."""
    return Curve([(0.0, 0.0), (1.0, 0.0)], id="segment"), Curve(
        [(0.0, 0.0), (0.5, h), (1.0, 0.0)], id="tent"
    )
