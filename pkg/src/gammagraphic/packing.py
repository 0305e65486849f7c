"""Tree-packing problems solved through group labellings.

Trees of order not divisible by k: label every vertex 1 in Z_k. Spanning
S-tree packings: label vertices of S by 1 and the rest by 0 in Z. In both
cases the feasible edge sets are exactly the edge sets of valid packings, so
the greedy solution decodes directly into trees.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from .abelian import CyclicMod, Integers
from .greedy import solve_max_weight
from .labelled_graph import LabelledGraph, Multigraph, components, natural_key


class PackingError(ValueError):
    pass


class Tree(NamedTuple):
    vertices: frozenset
    edges: frozenset


class Packing(NamedTuple):
    trees: list
    total: Fraction
    edges: frozenset


def decode_trees(g: Multigraph, f: Iterable) -> list[Tree]:
    """Components of (V(g), f) as trees, including single-vertex ones."""
    trees = [Tree(vs, es) for vs, es in components(g, f)]
    return sorted(trees, key=lambda t: min(natural_key(v) for v in t.vertices))


def pack_trees_mod_k(g: Multigraph, k: int, weights: Mapping, backend: str | None = None) -> Packing:
    """Maximum-weight vertex-disjoint trees, none of order divisible by k.

    Every component of the chosen forest is reported, isolated vertices as
    order-1 trees; the packing does not have to cover V(g).
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 2:
        raise PackingError(f"k must be an integer >= 2, got {k!r}")
    zk = CyclicMod(k)
    lg = LabelledGraph(zk, {v: 1 for v in g.vertices}, g.edges)
    sol = solve_max_weight(lg, weights, backend)
    return Packing(decode_trees(g, sol.edges), sol.total, sol.edges)


def pack_s_trees(g: Multigraph, s: Iterable, weights: Mapping, backend: str | None = None) -> Packing:
    """Maximum-weight partition of V(g) into vertex-disjoint trees each meeting S."""
    s = frozenset(s)
    if not s:
        raise PackingError("S must be non-empty")
    unknown = s.difference(g.vertices)
    if unknown:
        raise PackingError(f"S contains unknown vertices {sorted(map(str, unknown))}")
    for vs, _ in components(g):
        if not vs & s:
            raise PackingError(f"component {sorted(map(str, vs))} has no vertex in S")
    lg = LabelledGraph(Integers(), {v: int(v in s) for v in g.vertices}, g.edges)
    sol = solve_max_weight(lg, weights, backend)
    return Packing(decode_trees(g, sol.edges), sol.total, sol.edges)
