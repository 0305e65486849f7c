"""Multigraphs whose vertices carry labels in an abelian group.

Loops and parallel edges are allowed everywhere; parallel edges keep distinct
edge ids. Graph values are immutable: every minor operation returns a new
graph and leaves edge ids untouched, so edge sets can be compared across
minors directly.
"""
from __future__ import annotations

import re
from functools import cached_property
from typing import Any, Hashable, Iterable, Mapping, NamedTuple

import numpy as np

from .abelian import GroupDescriptor, GroupElement, GroupError, descriptor_from_json, sum_elements


class GraphError(ValueError):
    """Structural problem: unknown ids, duplicate ids, bad preconditions."""


class GraphFormatError(GraphError):
    """Malformed graph document; ``field`` names the offending location."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def natural_key(item: Hashable) -> tuple:
    """Sort key ordering ids like ``e2 < e10`` and ``2 < 10``."""
    return tuple((0, int(tok), "") if tok.isdigit() else (1, 0, tok)
                 for tok in re.split(r"(\d+)", str(item)) if tok)


class UnionFind:
    """Disjoint sets over arbitrary hashable items, with path halving."""

    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        """Merge the classes of a and b; False if they were already merged."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


class Multigraph:
    """Unlabelled multigraph: ordered vertex ids and ordered ``edge id -> (u, v)``."""

    def __init__(self, vertices: Iterable[Hashable], edges: Mapping | Iterable):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex id")
        vset = set(self.vertices)
        items = edges.items() if isinstance(edges, Mapping) else ((e, (u, v)) for e, u, v in edges)
        self._edges: dict = {}
        for e, (u, v) in items:
            if e in self._edges:
                raise GraphError(f"duplicate edge id {e!r}")
            if u not in vset or v not in vset:
                raise GraphError(f"edge {e!r} references an unknown vertex")
            self._edges[e] = (u, v)

    @property
    def edges(self) -> Mapping:
        return dict(self._edges)

    @cached_property
    def edge_ids(self) -> tuple:
        return tuple(self._edges)

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> dict:
        return {e: i for i, e in enumerate(self._edges)}

    @cached_property
    def endpoint_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        vi = self.vertex_index
        eu = np.fromiter((vi[u] for u, _ in self._edges.values()), dtype=np.int64, count=len(self._edges))
        ev = np.fromiter((vi[v] for _, v in self._edges.values()), dtype=np.int64, count=len(self._edges))
        return eu, ev

    def endpoints(self, e) -> tuple:
        try:
            return self._edges[e]
        except KeyError:
            raise GraphError(f"unknown edge {e!r}") from None

    def is_loop(self, e) -> bool:
        u, v = self.endpoints(e)
        return u == v

    def check_edges(self, edges: Iterable | None) -> frozenset:
        """Validate an edge set against this graph; ``None`` means all edges."""
        if edges is None:
            return frozenset(self._edges)
        out = frozenset(edges)
        unknown = out.difference(self._edges)
        if unknown:
            raise GraphError(f"unknown edge id(s): {sorted(map(str, unknown))}")
        return out

    def sorted_edges(self, edges: Iterable) -> list:
        return sorted(edges, key=natural_key)

    def incident(self, v) -> list:
        return [e for e, (a, b) in self._edges.items() if v in (a, b)]

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(|V|={len(self.vertices)}, |E|={len(self._edges)})"


class LabelledGraph(Multigraph):
    """A multigraph with a group label on every vertex.

    ``labels`` maps vertex id to a ``GroupElement`` (or a raw value, which is
    canonicalised through ``descriptor``); its order fixes the vertex order.
    """

    def __init__(self, descriptor: GroupDescriptor, labels: Mapping, edges: Mapping | Iterable):
        self.descriptor = descriptor
        lab = {}
        for v, x in labels.items():
            if isinstance(x, GroupElement):
                if x.descriptor != descriptor:
                    raise GraphError(f"label of vertex {v!r} is in {x.descriptor}, graph group is {descriptor}")
                lab[v] = x
            else:
                lab[v] = descriptor.element(x)
        self._labels = lab
        super().__init__(lab, edges)

    def label(self, v) -> GroupElement:
        try:
            return self._labels[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    @property
    def labels(self) -> dict:
        return dict(self._labels)

    def with_structure(self, labels: Mapping, edges: Mapping) -> "LabelledGraph":
        return LabelledGraph(self.descriptor, labels, edges)

    @cached_property
    def kernel_view(self) -> "KernelView":
        return KernelView.of(self)

    def __eq__(self, other):
        if not isinstance(other, LabelledGraph):
            return NotImplemented
        return (self.descriptor == other.descriptor and list(self._labels.items()) == list(other._labels.items())
                and list(self._edges.items()) == list(other._edges.items()))

    def __hash__(self):
        return hash((self.descriptor, tuple(self._labels.items()), tuple(self._edges.items())))

    # JSON graph document

    def to_json(self) -> dict:
        d = self.descriptor
        return {
            "group": d.to_json(),
            "vertices": [{"id": v, "label": d.value_to_json(x.value)} for v, x in self._labels.items()],
            "edges": [{"id": e, "u": u, "v": v} for e, (u, v) in self._edges.items()],
        }

    @classmethod
    def from_json(cls, doc: Any, *, unlabelled: bool = False) -> "LabelledGraph":
        """Parse a graph document.

        With ``unlabelled=True`` the group and labels may be omitted; missing
        labels default to zero in the given group (or Z_2 if none is given).
        """
        if not isinstance(doc, dict):
            raise GraphFormatError("<root>", "expected a JSON object")
        if "group" in doc:
            try:
                descriptor = descriptor_from_json(doc["group"])
            except GroupError as exc:
                raise GraphFormatError("group", str(exc)) from None
        elif unlabelled:
            from .abelian import CyclicMod
            descriptor = CyclicMod(2)
        else:
            raise GraphFormatError("group", "missing group descriptor")
        for field in ("vertices", "edges"):
            if not isinstance(doc.get(field), list):
                raise GraphFormatError(field, "expected an array")
        labels: dict = {}
        for i, item in enumerate(doc["vertices"]):
            where = f"vertices[{i}]"
            if not isinstance(item, dict) or "id" not in item:
                raise GraphFormatError(where, "expected an object with an 'id'")
            vid = _check_id(item["id"], f"{where}.id")
            if vid in labels:
                raise GraphFormatError(f"{where}.id", f"duplicate vertex id {vid!r}")
            if "label" in item:
                try:
                    labels[vid] = descriptor.value_from_json(item["label"])
                except GroupError as exc:
                    raise GraphFormatError(f"{where}.label", str(exc)) from None
            elif unlabelled:
                labels[vid] = descriptor.zero()
            else:
                raise GraphFormatError(f"{where}.label", "missing label")
        edges: dict = {}
        for i, item in enumerate(doc["edges"]):
            where = f"edges[{i}]"
            if not isinstance(item, dict):
                raise GraphFormatError(where, "expected an object")
            for field in ("id", "u", "v"):
                if field not in item:
                    raise GraphFormatError(f"{where}.{field}", "missing field")
            eid = _check_id(item["id"], f"{where}.id")
            if eid in edges:
                raise GraphFormatError(f"{where}.id", f"duplicate edge id {eid!r}")
            u, v = _check_id(item["u"], f"{where}.u"), _check_id(item["v"], f"{where}.v")
            for end, field in ((u, "u"), (v, "v")):
                if end not in labels:
                    raise GraphFormatError(f"{where}.{field}", f"unknown vertex {end!r}")
            edges[eid] = (u, v)
        return cls(descriptor, labels, edges)


def _check_id(value, field):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise GraphFormatError(field, f"ids must be strings or integers, got {value!r}")
    return value


class KernelView(NamedTuple):
    """Flat arrays handed to the kernel backends."""

    n: int
    eu: np.ndarray
    ev: np.ndarray
    labels: Any  # int64[n, d], or nested lists of Python ints when int64 could overflow
    moduli: np.ndarray
    exact_only: bool  # True forces the pure-Python backend

    @classmethod
    def of(cls, g: LabelledGraph) -> "KernelView":
        d = g.descriptor
        moduli = d.moduli()
        rows = [d.flatten(x.value) for x in g._labels.values()]
        n = len(rows)
        exact_only = False
        if any(m == 0 for m in moduli) and rows:
            # integer coordinates: class sums must stay far from int64 overflow
            biggest = max(abs(c) for row in rows for c, m in zip(row, moduli) if m == 0)
            exact_only = biggest * max(n, 1) >= 1 << 62
        eu, ev = g.endpoint_arrays
        if exact_only:
            labels = [list(r) for r in rows]
        else:
            labels = np.array(rows, dtype=np.int64).reshape(n, len(moduli))
        return cls(n, eu, ev, labels, np.array(moduli, dtype=np.int64), exact_only)

    def backend(self, preferred=None):
        from . import kernels

        if self.exact_only:
            return kernels.get_backend("python")
        return kernels.get_backend(preferred)


def edge_mask_array(g: Multigraph, edges: Iterable) -> np.ndarray:
    out = np.zeros(len(g.edge_ids), dtype=np.uint8)
    idx = g.edge_index
    for e in edges:
        out[idx[e]] = 1
    return out


# --- structure ---------------------------------------------------------------

def components(g: Multigraph, restrict_to: Iterable | None = None) -> list[tuple[frozenset, frozenset]]:
    """Components of the spanning subgraph (V(g), restrict_to), in vertex order."""
    edges = g.check_edges(restrict_to)
    uf = UnionFind(g.vertices)
    for e in edges:
        uf.union(*g.endpoints(e))
    verts: dict = {}
    for v in g.vertices:
        verts.setdefault(uf.find(v), []).append(v)
    eds: dict = {r: [] for r in verts}
    for e in edges:
        eds[uf.find(g.endpoints(e)[0])].append(e)
    return [(frozenset(vs), frozenset(eds[r])) for r, vs in verts.items()]


def is_acyclic(g: Multigraph, f: Iterable) -> bool:
    """True iff (V(g), f) is a forest. Loops and parallel pairs are cycles."""
    f = g.check_edges(f)
    uf = UnionFind(g.vertices)
    return all(uf.union(*g.endpoints(e)) for e in f)


def kappa(g: LabelledGraph) -> int:
    """Number of components of g all of whose labels are zero."""
    return sum(1 for vs, _ in components(g) if all(g.label(v).is_zero() for v in vs))


def is_gamma_nonzero(g: LabelledGraph, f: Iterable) -> bool:
    f = g.check_edges(f)
    whole = {v: vs for vs, _ in components(g) for v in vs}
    for vs, _ in components(g, f):
        labels = [g.label(v) for v in vs]
        if all(x.is_zero() for x in labels):
            # (G2): an all-zero part must be a whole component of g
            if whole[next(iter(vs))] != vs:
                return False
        elif sum_elements(labels, g.descriptor).is_zero():
            return False
    return True


def is_feasible(g: LabelledGraph, f: Iterable) -> bool:
    """Acyclic and gamma-nonzero, i.e. a feasible set of the labelled-graph delta-matroid."""
    return is_acyclic(g, f) and is_gamma_nonzero(g, f)


# --- minors ------------------------------------------------------------------

class Contraction(NamedTuple):
    graph: LabelledGraph
    merge_map: dict  # original vertex id -> vertex id in ``graph``


def _fresh_vertex_id(taken, u, v):
    new = f"{u}+{v}"
    while new in taken:
        new += "'"
    return new


def delete_edge(g: LabelledGraph, e) -> LabelledGraph:
    g.endpoints(e)
    edges = {k: uv for k, uv in g._edges.items() if k != e}
    return g.with_structure(g._labels, edges)


def delete_edges(g: LabelledGraph, edges: Iterable) -> LabelledGraph:
    drop = g.check_edges(edges)
    return g.with_structure(g._labels, {k: uv for k, uv in g._edges.items() if k not in drop})


def _contract_one(g: LabelledGraph, e) -> tuple[LabelledGraph, dict]:
    u, v = g.endpoints(e)
    if u == v:
        return delete_edge(g, e), {x: x for x in g.vertices}
    new = _fresh_vertex_id(g._labels, u, v)
    merged = g.label(u) + g.label(v)
    labels = {}
    for x, lab in g._labels.items():
        if x == u or x == v:
            if new not in labels:
                labels[new] = merged
        else:
            labels[x] = lab
    rename = {x: (new if x in (u, v) else x) for x in g.vertices}
    edges = {k: (rename[a], rename[b]) for k, (a, b) in g._edges.items() if k != e}
    return g.with_structure(labels, edges), rename


def contract(g: LabelledGraph, x: Iterable) -> Contraction:
    """Contract the edges of x one at a time (in natural id order), tracking vertices."""
    x = g.sorted_edges(g.check_edges(x))
    merge = {v: v for v in g.vertices}
    for e in x:
        g, rename = _contract_one(g, e)
        merge = {k: rename[w] for k, w in merge.items()}
    return Contraction(g, merge)


def contract_edge(g: LabelledGraph, e) -> LabelledGraph:
    return _contract_one(g, e)[0]


def contract_set(g: LabelledGraph, x: Iterable, order: Iterable | None = None) -> LabelledGraph:
    """Contract all edges of x; ``order`` optionally fixes the sequence used."""
    if order is None:
        return contract(g, x).graph
    seq = list(order)
    if set(seq) != set(g.check_edges(x)) or len(seq) != len(set(seq)):
        raise GraphError("order must list each edge of x exactly once")
    for e in seq:
        g = contract_edge(g, e)
    return g


def delete_isolated_vertex(g: LabelledGraph, v) -> LabelledGraph:
    g.label(v)
    if g.incident(v):
        raise GraphError(f"vertex {v!r} is not isolated")
    return g.with_structure({x: lab for x, lab in g._labels.items() if x != v}, g._edges)


def canonical_form(g: LabelledGraph, names: Mapping) -> tuple:
    """Structure of g with each vertex renamed through ``names``; for isomorphism checks."""
    labels = frozenset((names[v], lab) for v, lab in g._labels.items())
    edges = frozenset((e, frozenset((names[a], names[b]))) for e, (a, b) in g._edges.items())
    return labels, edges


# --- gamma-bridges and gamma-tunnels -----------------------------------------

def is_gamma_bridge(g: LabelledGraph, e) -> bool:
    """True iff deleting e increases the number of all-zero components."""
    if g.is_loop(e):
        return False
    return kappa(delete_edge(g, e)) > kappa(g)


def is_gamma_tunnel(g: LabelledGraph, e) -> bool:
    """Non-loop e = uv whose component has nonzero labels exactly at u, v, summing to zero."""
    u, v = g.endpoints(e)
    if u == v:
        return False
    comp = next(vs for vs, _ in components(g) if u in vs)
    for x in comp:
        if (not g.label(x).is_zero()) != (x in (u, v)):
            return False
    return (g.label(u) + g.label(v)).is_zero()
