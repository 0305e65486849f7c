"""Symmetric greedy algorithm over the labelled-graph delta-matroid."""
from __future__ import annotations

import enum
from fractions import Fraction
from typing import Mapping, NamedTuple

import numpy as np

from .labelled_graph import LabelledGraph, natural_key
from .separation import SeparationOracle


class WeightError(ValueError):
    pass


class Decision(enum.Enum):
    KEPT_IN_X = "kept-in-X"
    FORCED_TO_Y = "forced-to-Y"
    KEPT_IN_Y = "kept-in-Y"
    FORCED_TO_X = "forced-to-X"


class Solution(NamedTuple):
    edges: frozenset
    total: Fraction
    trace: list  # [(edge id, Decision)] in processing order


def as_weights(g: LabelledGraph, weights: Mapping) -> dict:
    """Validate and convert a weight map to exact ``Fraction`` values on every edge."""
    missing = [e for e in g.edge_ids if e not in weights]
    if missing:
        raise WeightError(f"no weight for edge(s) {sorted(map(str, missing))}")
    extra = set(weights) - set(g.edge_ids)
    if extra:
        raise WeightError(f"weights given for unknown edge(s) {sorted(map(str, extra))}")
    out = {}
    for e in g.edge_ids:
        w = weights[e]
        if isinstance(w, float):
            raise WeightError(f"weight of {e!r} is a float; use an int or Fraction")
        try:
            out[e] = Fraction(w)
        except (TypeError, ValueError):
            raise WeightError(f"weight of {e!r} is not a rational number: {w!r}") from None
    return out


def processing_order(g: LabelledGraph, weights: Mapping) -> list:
    """Edges by non-increasing |w|, ties by ascending (natural) edge id."""
    return sorted(g.edge_ids, key=lambda e: (-abs(weights[e]), natural_key(e)))


def solve_max_weight(g: LabelledGraph, weights: Mapping, backend: str | None = None) -> Solution:
    """Maximum-weight acyclic gamma-nonzero edge set.

    Runs the symmetric greedy algorithm with one separation query per edge.
    Among optimal sets, which one is returned depends on the tie-breaking
    order; the total is always the optimum.
    """
    w = as_weights(g, weights)
    oracle = SeparationOracle(g, backend)
    index = g.edge_index
    in_x = np.zeros(len(g.edge_ids), dtype=np.uint8)
    in_y = np.zeros(len(g.edge_ids), dtype=np.uint8)
    trace = []
    for e in processing_order(g, w):
        i = index[e]
        if w[e] >= 0:
            in_x[i] = 1
            if oracle.query_masks(in_x, in_y):
                trace.append((e, Decision.KEPT_IN_X))
            else:
                in_x[i] = 0
                in_y[i] = 1
                trace.append((e, Decision.FORCED_TO_Y))
        else:
            in_y[i] = 1
            if oracle.query_masks(in_x, in_y):
                trace.append((e, Decision.KEPT_IN_Y))
            else:
                in_y[i] = 0
                in_x[i] = 1
                trace.append((e, Decision.FORCED_TO_X))
    chosen = frozenset(e for e in g.edge_ids if in_x[index[e]])
    return Solution(chosen, sum((w[e] for e in chosen), Fraction(0)), trace)
