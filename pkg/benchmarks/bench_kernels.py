"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--edges 10000] [--solve-edges 2000]

Each row runs the same call on both backends and prints the best wall time of
``--repeat`` runs and the speed-up. Rows for the compiled backend are skipped
when the extension is not built.
"""
import argparse
import random
import time

import numpy as np

from gammagraphic import kernels
from gammagraphic.abelian import CyclicMod
from gammagraphic.delta_matroid import enumerate_gamma_graphic
from gammagraphic.gf_repr import GF
from gammagraphic.greedy import solve_max_weight
from gammagraphic.labelled_graph import LabelledGraph
from gammagraphic.separation import base_kappa


def connected_graph(rng, n, m, k=3):
    vertices = [f"v{i}" for i in range(n)]
    edges = {f"e{i}": (vertices[rng.randrange(i)], vertices[i]) for i in range(1, n)}
    for i in range(n, m + 1):
        edges[f"e{i}"] = (rng.choice(vertices), rng.choice(vertices))
    return LabelledGraph(CyclicMod(k), {v: rng.randrange(k) for v in vertices}, edges)


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def cases(args, rng):
    big = connected_graph(rng, args.edges // 5, args.edges)
    kv = big.kernel_view
    kappa = base_kappa(big)
    in_x = np.zeros(len(big.edge_ids), dtype=np.uint8)
    in_y = np.zeros(len(big.edge_ids), dtype=np.uint8)
    # the first n-1 edges form the generating spanning tree, so X stays acyclic
    in_x[: len(big.vertices) - 1] = 1
    yield (f"separable x100, |E|={len(big.edge_ids)}",
           lambda b: [b.separable(kv.n, kv.eu, kv.ev, kv.labels, kv.moduli, in_x, in_y, kappa) for _ in range(100)])

    small = connected_graph(rng, 9, 16)
    sv = small.kernel_view
    yield ("enumerate_feasible, 16 edges",
           lambda b: b.enumerate_feasible(sv.n, sv.eu, sv.ev, sv.labels, sv.moduli))

    masks = enumerate_gamma_graphic(connected_graph(rng, 8, 11, k=2)).sorted_masks()
    yield (f"exchange_violation, {len(masks)} feasible sets", lambda b: b.exchange_violation(masks, 11))

    field = GF(3, 2)
    mat = np.random.default_rng(0).integers(0, field.q, size=(12, 12)).astype(np.int64)
    yield ("principal_nonsingular, 12x12 over GF(9)", lambda b: b.principal_nonsingular(mat, *field.tables))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--edges", type=int, default=10_000)
    parser.add_argument("--solve-edges", type=int, default=2000,
                        help="graph size for the end-to-end solve (pure Python is quadratic)")
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    backends = kernels.available_backends()
    rng = random.Random(args.seed)
    print(f"{'kernel':44} {'python':>10} {'cython':>10} {'speed-up':>9}")
    for name, fn in cases(args, rng):
        py = best_of(args.repeat, lambda: fn(backends["python"]))
        if "cython" in backends:
            cy = best_of(args.repeat, lambda: fn(backends["cython"]))
            print(f"{name:44} {py:10.4f} {cy:10.4f} {py / cy:8.1f}x")
        else:
            print(f"{name:44} {py:10.4f} {'-':>10} {'-':>9}")

    g = connected_graph(rng, args.solve_edges // 5, args.solve_edges)
    w = {e: rng.randint(-50, 50) for e in g.edge_ids}
    row = []
    for name in ("python", "cython"):
        if name in backends:
            row.append(best_of(1, lambda: solve_max_weight(g, w, backend=name)))
    label = f"solve_max_weight end to end, |E|={len(g.edge_ids)}"
    if len(row) == 2:
        print(f"{label:44} {row[0]:10.4f} {row[1]:10.4f} {row[0] / row[1]:8.1f}x")
    else:
        print(f"{label:44} {row[0]:10.4f} {'-':>10} {'-':>9}")


if __name__ == "__main__":
    main()
