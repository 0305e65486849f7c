"""Explicit set systems and the brute-force labelled-graph delta-matroid.

Feasible families are stored as frozensets of bitmasks over an ordered ground
set, which makes twisting a single XOR and equality a set comparison. This
module is the reference the polynomial algorithms are checked against, so it
always works by exhaustive enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

import numpy as np

from .abelian import CyclicMod
from .labelled_graph import LabelledGraph

ENUMERATION_CAP = 20


class SetSystemError(ValueError):
    pass


@dataclass(frozen=True)
class SetSystem:
    """Ground set ``ground`` (ordered) with feasible sets as bitmasks over it."""

    ground: tuple
    masks: frozenset

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(self.ground))
        object.__setattr__(self, "masks", frozenset(int(x) for x in self.masks))
        if not self.masks:
            raise SetSystemError("a set system needs at least one feasible set")
        if len(set(self.ground)) != len(self.ground):
            raise SetSystemError("duplicate ground element")
        if max(self.masks) >> len(self.ground):
            raise SetSystemError("feasible set outside the ground set")

    @classmethod
    def from_sets(cls, ground: Iterable[Hashable], feasibles: Iterable[Iterable[Hashable]]) -> "SetSystem":
        ground = tuple(ground)
        index = {x: i for i, x in enumerate(ground)}
        masks = set()
        for f in feasibles:
            mask = 0
            for x in f:
                if x not in index:
                    raise SetSystemError(f"feasible set element {x!r} not in ground set")
                mask |= 1 << index[x]
            masks.add(mask)
        return cls(ground, frozenset(masks))

    @property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.ground)}

    def mask_of(self, items: Iterable[Hashable]) -> int:
        index = self.index
        mask = 0
        for x in items:
            try:
                mask |= 1 << index[x]
            except KeyError:
                raise SetSystemError(f"{x!r} is not in the ground set") from None
        return mask

    def set_of(self, mask: int) -> frozenset:
        return frozenset(x for i, x in enumerate(self.ground) if mask >> i & 1)

    @property
    def feasibles(self) -> frozenset:
        return frozenset(self.set_of(x) for x in self.masks)

    def sorted_masks(self) -> np.ndarray:
        return np.array(sorted(self.masks), dtype=np.uint32)

    def __contains__(self, items) -> bool:
        return self.mask_of(items) in self.masks

    def __len__(self) -> int:
        return len(self.masks)

    def relabel(self, mapping: Mapping) -> "SetSystem":
        return SetSystem(tuple(mapping[x] for x in self.ground), self.masks)

    def same_as(self, other: "SetSystem", correspondence: Mapping | None = None) -> bool:
        """Equality as set systems, optionally mapping this system's ids first."""
        mine = self.relabel(correspondence) if correspondence is not None else self
        return set(mine.ground) == set(other.ground) and mine.feasibles == other.feasibles

    def __repr__(self) -> str:
        sets = sorted((sorted(map(str, s)) for s in self.feasibles), key=lambda s: (len(s), s))
        return f"SetSystem(ground={list(self.ground)!r}, feasibles={sets!r})"


@dataclass(frozen=True)
class ExchangeViolation:
    """Counterexample to the symmetric exchange axiom; falsy so ``if check(...)`` reads naturally."""

    x: frozenset
    y: frozenset
    e: Hashable

    def __bool__(self) -> bool:
        return False


def enumerate_gamma_graphic(g: LabelledGraph, cap: int = ENUMERATION_CAP, backend: str | None = None) -> SetSystem:
    """All acyclic gamma-nonzero edge sets of g, found by testing every subset."""
    m = len(g.edge_ids)
    if m > cap:
        raise SetSystemError(f"{m} edges exceeds the enumeration cap of {cap}")
    kv = g.kernel_view
    masks = kv.backend(backend).enumerate_feasible(kv.n, kv.eu, kv.ev, kv.labels, kv.moduli)
    return SetSystem(g.edge_ids, frozenset(masks.tolist()))


def check_exchange_axiom(m: SetSystem, backend: str | None = None):
    """True if the symmetric exchange axiom holds, else the first ``ExchangeViolation``."""
    from . import kernels

    if len(m.ground) > 24:
        raise SetSystemError("exchange check supports at most 24 ground elements")
    found = kernels.get_backend(backend).exchange_violation(m.sorted_masks(), len(m.ground))
    if found is None:
        return True
    x, y, e = found
    return ExchangeViolation(m.set_of(x), m.set_of(y), m.ground[e])


def _check_subset(m: SetSystem, x: Iterable) -> int:
    x = frozenset(x)
    if not x <= set(m.ground):
        raise SetSystemError(f"{sorted(map(str, x - set(m.ground)))} not in the ground set")
    return m.mask_of(x)


def twist(m: SetSystem, x: Iterable) -> SetSystem:
    mask = _check_subset(m, x)
    return SetSystem(m.ground, frozenset(f ^ mask for f in m.masks))


def delete(m: SetSystem, x: Iterable) -> SetSystem:
    """Restrict to feasible sets avoiding x and drop x from the ground set."""
    mask = _check_subset(m, x)
    keep = [i for i in range(len(m.ground)) if not mask >> i & 1]
    survivors = [f for f in m.masks if not f & mask]
    if not survivors:
        raise SetSystemError("deletion undefined: every feasible set meets the deleted set")
    masks = set()
    for f in survivors:
        out = 0
        for j, i in enumerate(keep):
            if f >> i & 1:
                out |= 1 << j
        masks.add(out)
    return SetSystem(tuple(m.ground[i] for i in keep), frozenset(masks))


def minor(m: SetSystem, x: Iterable, y: Iterable) -> SetSystem:
    """Twist by x, then delete y."""
    return delete(twist(m, x), y)


def is_even(m: SetSystem) -> bool:
    # |X^Y| = |X| + |Y| - 2|X&Y|, so evenness means all feasible sets share a parity
    return len({bin(f).count("1") & 1 for f in m.masks}) == 1


def loops_and_coloops(m: SetSystem) -> tuple[frozenset, frozenset]:
    """(elements in no feasible set, elements in every feasible set)."""
    union, inter = 0, (1 << len(m.ground)) - 1
    for f in m.masks:
        union |= f
        inter &= f
    full = (1 << len(m.ground)) - 1
    return m.set_of(full & ~union), m.set_of(inter)


def z2_reduction(g: LabelledGraph) -> LabelledGraph:
    """Same graph over Z_2, labelling each vertex by whether its label is nonzero."""
    z2 = CyclicMod(2)
    labels = {v: z2.element(0 if g.label(v).is_zero() else 1) for v in g.vertices}
    return LabelledGraph(z2, labels, g.edges)
