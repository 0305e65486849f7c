"""Separation oracle for labelled-graph delta-matroids.

Some acyclic gamma-nonzero set contains X and avoids Y exactly when X is
acyclic and contracting X then deleting Y leaves the number of all-zero
components unchanged. The contraction is done virtually: union-find classes
over X with summed labels, components over E - Y.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np

from .labelled_graph import GraphError, LabelledGraph, UnionFind, edge_mask_array, natural_key
from .abelian import sum_elements


class SeparationError(ValueError):
    pass


def base_kappa(g: LabelledGraph, backend: str | None = None) -> int:
    kv = g.kernel_view
    zeros = np.zeros(len(g.edge_ids), dtype=np.uint8)
    return kv.backend(backend).contracted_kappa(kv.n, kv.eu, kv.ev, kv.labels, kv.moduli, zeros, zeros)


def contracted_kappa(g: LabelledGraph, x: Iterable, y: Iterable, backend: str | None = None) -> int:
    """kappa((G, gamma)/X minus Y) without building the minor."""
    x, y = _check_pair(g, x, y)
    kv = g.kernel_view
    return kv.backend(backend).contracted_kappa(
        kv.n, kv.eu, kv.ev, kv.labels, kv.moduli, edge_mask_array(g, x), edge_mask_array(g, y))


class SeparationOracle:
    """Answers separability queries on one fixed graph.

    kappa of the graph itself is computed once; every query then costs one
    kernel call over the edge arrays. ``query_masks`` takes uint8 membership
    arrays in ``g.edge_ids`` order and is what the greedy loop uses.
    """

    def __init__(self, g: LabelledGraph, backend: str | None = None):
        self.graph = g
        self._view = g.kernel_view
        self._kernel = self._view.backend(backend)
        self.kappa = base_kappa(g, backend)
        self.calls = 0

    def query_masks(self, in_x: np.ndarray, in_y: np.ndarray) -> bool:
        self.calls += 1
        kv = self._view
        return bool(self._kernel.separable(kv.n, kv.eu, kv.ev, kv.labels, kv.moduli, in_x, in_y, self.kappa))

    def __call__(self, x: Iterable, y: Iterable) -> bool:
        x, y = _check_pair(self.graph, x, y)
        return self.query_masks(edge_mask_array(self.graph, x), edge_mask_array(self.graph, y))


def _check_pair(g, x, y):
    try:
        x, y = g.check_edges(x), g.check_edges(y)
    except GraphError as exc:
        raise SeparationError(str(exc)) from None
    if x & y:
        raise SeparationError(f"X and Y overlap on {sorted(map(str, x & y))}")
    return x, y


def is_separable(g: LabelledGraph, x: Iterable = (), y: Iterable = (), backend: str | None = None) -> bool:
    """Is there an acyclic gamma-nonzero set F with X inside F and F disjoint from Y?"""
    return SeparationOracle(g, backend)(x, y)


def extend_to_feasible(g: LabelledGraph, x: Iterable = (), y: Iterable = ()) -> frozenset:
    """A concrete feasible set containing X and avoiding Y.

    Each component of (G, gamma)/X minus Y gets a spanning tree (edges taken in
    natural id order). A tree whose contracted labels sum to zero without all
    being zero loses one edge that splits off exactly one nonzero class; the
    smallest such edge id is dropped.
    """
    x, y = _check_pair(g, x, y)
    if not is_separable(g, x, y):
        raise SeparationError("no feasible set contains X and avoids Y")
    cls = UnionFind(g.vertices)
    for e in x:
        cls.union(*g.endpoints(e))
    members = cls.classes()
    class_label = {r: sum_elements((g.label(v) for v in vs), g.descriptor) for r, vs in members.items()}

    # spanning forest of the contracted graph over the remaining edges
    forest = UnionFind(members)
    tree_edges = []
    for e in g.sorted_edges(set(g.edge_ids) - x - y):
        a, b = (cls.find(v) for v in g.endpoints(e))
        if forest.union(a, b):
            tree_edges.append((e, a, b))

    chosen = set(x)
    by_comp: dict = {}
    for e, a, b in tree_edges:
        by_comp.setdefault(forest.find(a), []).append((e, a, b))
    for root, nodes in forest.classes().items():
        edges = by_comp.get(root, [])
        labels = [class_label[c] for c in nodes]
        total = sum_elements(labels, g.descriptor)
        chosen.update(e for e, _, _ in edges)
        if total.is_zero() and not all(lab.is_zero() for lab in labels):
            chosen.discard(_splitting_edge(nodes, edges, {c for c in nodes if not class_label[c].is_zero()}))
    return frozenset(chosen)


def _splitting_edge(nodes, edges, nonzero):
    """Smallest tree edge whose removal leaves exactly one nonzero node on one side."""
    adj: dict = {c: [] for c in nodes}
    for e, a, b in edges:
        adj[a].append((e, b))
        adj[b].append((e, a))
    root = nodes[0]
    order, parent_edge, seen = [], {root: None}, {root}
    stack = [root]
    while stack:
        c = stack.pop()
        order.append(c)
        for e, d in adj[c]:
            if d not in seen:
                seen.add(d)
                parent_edge[d] = (e, c)
                stack.append(d)
    below = {c: int(c in nonzero) for c in nodes}
    for c in reversed(order):
        if parent_edge[c] is not None:
            below[parent_edge[c][1]] += below[c]
    total = len(nonzero)
    candidates = [parent_edge[c][0] for c in nodes
                  if parent_edge[c] is not None and (below[c] == 1 or total - below[c] == 1)]
    return min(candidates, key=natural_key)
