"""Randomized oracle-equivalence checks packaged for the command line."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _backend
from .decider import FilterVerdict, greedy_filter, negative_filter, run_cascade
from .freespace import decide_standard
from .fuzz import NEAR_CRITICAL_FACTORS, corpus
from .geometry import lb_frechet
from .index import SpatialIndex


@dataclass
class Failure:
    check: str
    pi: list
    sigma: list
    delta: float
    detail: str = ""


@dataclass
class SelftestResult:
    counts: dict[str, int] = field(default_factory=dict)
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        lines = [f"{name}: {n} checked" for name, n in self.counts.items()]
        lines.append(f"counterexamples: {len(self.failures)}")
        for f in self.failures[:10]:
            lines.append(f"  FAIL {f.check}: delta={f.delta!r} {f.detail}")
        return "\n".join(lines)

    def write_repro(self, path: str | Path) -> None:
        data = [{"check": f.check, "pi": f.pi, "sigma": f.sigma, "delta": f.delta,
                 "detail": f.detail} for f in self.failures]
        Path(path).write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")


def run_selftest(seed: int = 0, iterations: int = 1000, *, backend: str | None = None,
                 mutate_full_block: float = 1.0, max_failures: int = 100) -> SelftestResult:
    """Run ``iterations`` random triples through every decider and filter.

    ``mutate_full_block`` inflates the full-block shortcut's threshold; values
    above 1 deliberately break the recursive decider and should be caught.
    """
    kernels = _backend.get(backend)
    res = SelftestResult()
    counts = res.counts
    for name in ("recursive=standard", "shortcut check", "cascade=standard", "greedy sound",
                 "negative sound", "symmetry", "lower bound", "monotone"):
        counts[name] = 0

    def fail(check, t, detail=""):
        if len(res.failures) < max_failures:
            res.failures.append(Failure(check, _pts(t.pi), _pts(t.sigma), t.delta, detail))

    factors = NEAR_CRITICAL_FACTORS
    pairs = max(1, iterations // len(factors))
    prev = None
    for t in corpus(seed, pairs, factors=factors):
        pi, sigma, delta = t.pi, t.sigma, t.delta
        oracle = decide_standard(pi, sigma, delta, backend)
        rec = bool(kernels.decide_recursive(pi.xs, pi.ys, pi.prefix, sigma.xs, sigma.ys,
                                            sigma.prefix, delta, None, mutate_full_block))
        counts["recursive=standard"] += 1
        if rec != oracle:
            fail("recursive=standard", t, f"recursive={rec} standard={oracle}")
        # brute-force verification of every shortcut taken on small blocks
        counts["shortcut check"] += 1
        try:
            kernels.decide_recursive(pi.xs, pi.ys, pi.prefix, sigma.xs, sigma.ys, sigma.prefix,
                                     delta, None, mutate_full_block, True)
        except AssertionError as exc:
            fail("shortcut check", t, str(exc))
        if mutate_full_block == 1.0:
            counts["cascade=standard"] += 1
            if run_cascade(pi, sigma, delta, kernels=kernels).result != oracle:
                fail("cascade=standard", t)
        counts["greedy sound"] += 1
        if greedy_filter(pi, sigma, delta, backend) is FilterVerdict.CERTIFIED_YES and not oracle:
            fail("greedy sound", t)
        counts["negative sound"] += 1
        for a, b in ((pi, sigma), (sigma, pi)):
            if negative_filter(a, b, delta, backend) is FilterVerdict.CERTIFIED_NO and oracle:
                fail("negative sound", t)
        counts["symmetry"] += 1
        if decide_standard(sigma, pi, delta, backend) != oracle:
            fail("symmetry", t)
        counts["lower bound"] += 1
        if oracle and lb_frechet(pi.summary, sigma.summary) > delta:
            fail("lower bound", t)
        # factors ascend within a pair, so verdicts must not flip back to False
        if prev is not None and prev[0] is pi:
            counts["monotone"] += 1
            if prev[1] and not oracle:
                fail("monotone", t, f"true at {prev[2]!r} but false at {delta!r}")
        prev = (pi, oracle, delta)

    _index_check(np.random.default_rng(seed + 1), max(10, iterations // 10), res)
    return res


def _index_check(rng: np.random.Generator, queries: int, res: SelftestResult) -> None:
    pts = rng.normal(size=(1000, 8)) * rng.uniform(0.1, 10, size=8)
    entries = [(tuple(p), k) for k, p in enumerate(pts.tolist())]
    index = SpatialIndex(entries, capacity=16)
    res.counts["index=scan"] = 0
    for _ in range(queries):
        q = tuple(pts[rng.integers(len(pts))] + rng.normal(size=8))
        delta = float(rng.uniform(0, 5))
        got = index.candidates(q, delta)
        want = [k for s, k in entries if lb_frechet(q, s) <= delta]
        res.counts["index=scan"] += 1
        if sorted(got) != want:
            res.failures.append(Failure("index=scan", [], [], delta,
                                        f"{len(got)} candidates vs {len(want)} by scan"))


def _pts(curve) -> list:
    return [[x, y] for x, y in zip(curve.xs.tolist(), curve.ys.tolist())]
