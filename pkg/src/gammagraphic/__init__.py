"""Maximum-weight acyclic gamma-nonzero edge sets in group-labelled graphs."""
from .abelian import CyclicMod, GroupElement, Integers, Product, VectorMod
from .delta_matroid import SetSystem, check_exchange_axiom, enumerate_gamma_graphic
from .greedy import solve_max_weight
from .kernels import BACKEND
from .labelled_graph import LabelledGraph, Multigraph
from .packing import pack_s_trees, pack_trees_mod_k
from .separation import extend_to_feasible, is_separable

__all__ = [
    "BACKEND", "CyclicMod", "GroupElement", "Integers", "LabelledGraph", "Multigraph", "Product",
    "SetSystem", "VectorMod", "check_exchange_axiom", "enumerate_gamma_graphic", "extend_to_feasible",
    "is_separable", "pack_s_trees", "pack_trees_mod_k", "solve_max_weight",
]
