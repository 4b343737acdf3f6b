"""Compare the compiled kernels with the pure-Python fallback.

Times each kernel over the same batch of random curve pairs and prints the
per-call cost and speedup. Usage::

    python benchmarks/bench_backends.py [--pairs 200] [--max-vertices 50] [--seed 0]
"""

from __future__ import annotations

import argparse
import sys

from frechet_range import _backend
from frechet_range.bench import time_call
from frechet_range.fuzz import corpus


def _batch(kernels, name, triples):
    if name == "decide_recursive":
        return lambda: [kernels.decide_recursive(t.pi.xs, t.pi.ys, t.pi.prefix, t.sigma.xs, t.sigma.ys,
                                                 t.sigma.prefix, t.delta) for t in triples]
    fn = getattr(kernels, name)
    return lambda: [fn(t.pi.xs, t.pi.ys, t.sigma.xs, t.sigma.ys, t.delta) for t in triples]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--max-vertices", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _backend.compiled is None:
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1
    triples = list(corpus(args.seed, args.pairs, args.max_vertices))
    print(f"{len(triples)} decisions on curves with up to {args.max_vertices} vertices")
    print(f"{'kernel':<18} {'python':>12} {'compiled':>12} {'speedup':>9}")
    for name in ("greedy", "negative", "decide_standard", "decide_recursive"):
        t_py = time_call(_batch(_backend.python, name, triples), repeat=args.repeat)
        t_cc = time_call(_batch(_backend.compiled, name, triples), repeat=args.repeat)
        per = 1e6 / len(triples)
        print(f"{name:<18} {t_py * per:>9.1f} us {t_cc * per:>9.2f} us {t_py / t_cc:>8.0f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
