"""Command-line interface.

Exit codes: 0 success, 1 infeasible or undefined input (for example a
component missing S, or a failed representation check), 2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import delta_matroid as dm
from .greedy import WeightError, solve_max_weight
from .gf_repr import FieldError, GF, build_representation, nonzero_gadget, principal_nonsingular_masks
from .io import InputError, read_graph, read_weights
from .labelled_graph import contract_edge, is_gamma_tunnel, natural_key
from .packing import PackingError, pack_s_trees, pack_trees_mod_k
from .separation import SeparationError, extend_to_feasible, is_separable


class Infeasible(Exception):
    """Well-formed input on which the requested operation is undefined."""


def _ids(text, known, what):
    """Resolve a comma-separated id list against ``known`` ids by string form."""
    if not text:
        return []
    lookup = {str(x): x for x in known}
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok not in lookup:
            raise InputError(f"unknown {what} id {tok!r}")
        out.append(lookup[tok])
    return out


def _sorted(ids):
    return sorted(ids, key=natural_key)


def _frac(x: Fraction) -> str:
    return str(x)


def _weights(args, g):
    if args.weights is None:
        return {e: Fraction(1) for e in g.edge_ids}
    return read_weights(args.weights, g)


def _emit(args, payload, lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def cmd_solve(args):
    g = read_graph(args.graph)
    sol = solve_max_weight(g, _weights(args, g))
    edges = _sorted(sol.edges)
    payload = {"edges": edges, "total": _frac(sol.total)}
    lines = [f"edges: {', '.join(map(str, edges)) or '(none)'}", f"total: {_frac(sol.total)}"]
    if args.trace:
        payload["trace"] = [{"edge": e, "decision": d.value} for e, d in sol.trace]
        lines += [f"  {e}: {d.value}" for e, d in sol.trace]
    _emit(args, payload, lines)


def cmd_separate(args):
    g = read_graph(args.graph)
    x = _ids(args.in_, g.edge_ids, "edge")
    y = _ids(args.out, g.edge_ids, "edge")
    if set(x) & set(y):
        raise InputError("--in and --out overlap")
    ok = is_separable(g, x, y)
    payload = {"separable": ok}
    lines = [f"separable: {str(ok).lower()}"]
    if ok and args.witness:
        w = _sorted(extend_to_feasible(g, x, y))
        payload["witness"] = w
        lines.append(f"witness: {', '.join(map(str, w)) or '(empty)'}")
    _emit(args, payload, lines)


def _packing_output(args, packing):
    trees = [{"vertices": _sorted(t.vertices), "edges": _sorted(t.edges)} for t in packing.trees]
    lines = [f"tree: vertices [{', '.join(map(str, t['vertices']))}] edges [{', '.join(map(str, t['edges']))}]"
             for t in trees]
    lines.append(f"total: {_frac(packing.total)}")
    _emit(args, {"trees": trees, "total": _frac(packing.total)}, lines)


def cmd_pack_mod_k(args):
    g = read_graph(args.graph, unlabelled=True)
    if args.k < 2:
        raise InputError("--k must be at least 2")
    _packing_output(args, pack_trees_mod_k(g, args.k, _weights(args, g)))


def cmd_pack_stree(args):
    g = read_graph(args.graph, unlabelled=True)
    s = _ids(args.s, g.vertices, "vertex")
    if not s:
        raise InputError("--s must name at least one vertex")
    try:
        packing = pack_s_trees(g, s, _weights(args, g))
    except PackingError as exc:
        raise Infeasible(str(exc)) from None
    _packing_output(args, packing)


def _family(m):
    return sorted((_sorted(f) for f in m.feasibles), key=lambda f: (len(f), [natural_key(e) for e in f]))


def cmd_enumerate(args):
    g = read_graph(args.graph)
    try:
        m = dm.enumerate_gamma_graphic(g, cap=args.cap)
    except dm.SetSystemError as exc:
        raise Infeasible(str(exc)) from None
    fam = _family(m)
    lines = [f"{len(fam)} feasible sets"] + ["{" + ", ".join(map(str, f)) + "}" for f in fam]
    _emit(args, {"ground": list(m.ground), "feasibles": fam}, lines)


def cmd_check_axioms(args):
    g = read_graph(args.graph)
    try:
        m = dm.enumerate_gamma_graphic(g, cap=args.cap)
    except dm.SetSystemError as exc:
        raise Infeasible(str(exc)) from None
    verdict = dm.check_exchange_axiom(m)
    even = dm.is_even(m)
    loops, coloops = dm.loops_and_coloops(m)
    payload = {"delta_matroid": bool(verdict), "even": even, "feasible_sets": len(m),
               "loops": _sorted(loops), "coloops": _sorted(coloops)}
    lines = [f"delta-matroid: {'yes' if verdict else 'no'}"]
    if not verdict:
        payload["counterexample"] = {"X": _sorted(verdict.x), "Y": _sorted(verdict.y), "e": verdict.e}
        lines.append(f"  counterexample: X={_sorted(verdict.x)} Y={_sorted(verdict.y)} e={verdict.e}")
    lines += [f"even: {'yes' if even else 'no'}", f"feasible sets: {len(m)}",
              f"loops: {', '.join(map(str, _sorted(loops))) or '(none)'}",
              f"coloops: {', '.join(map(str, _sorted(coloops))) or '(none)'}"]
    _emit(args, payload, lines)
    if not verdict:
        return 1


def _gadget_minor(h, pendants, m):
    """The minor of m = G(h) equal to G(h / pendants), one pendant edge at a time."""
    for e in _sorted(pendants):
        if h.is_loop(e) or is_gamma_tunnel(h, e):
            m = dm.delete(m, [e])
        else:
            m = dm.delete(dm.twist(m, [e]), [e])
        h = contract_edge(h, e)
    return m


def cmd_represent(args):
    g = read_graph(args.graph)
    try:
        field = GF(args.p, args.ell)
    except FieldError as exc:
        raise InputError(str(exc)) from None
    h, pendants = nonzero_gadget(g)
    try:
        a = build_representation(h, field)
    except FieldError as exc:
        raise Infeasible(str(exc)) from None
    payload = {"matrix": a.to_json(), "gadget_edges": _sorted(pendants)}
    lines = [f"field: {field} modulus {list(field.modulus)} (low degree first)"]
    if pendants:
        lines.append(f"zero labels removed by pendant edges: {', '.join(map(str, _sorted(pendants)))}")
        payload["gadget_graph"] = h.to_json()
    lines.append("rows/cols: " + " ".join(map(str, a.col_ids)))
    for rid, row in zip(a.row_ids, a.entries):
        lines.append(f"{rid}: " + " ".join("(" + ",".join(map(str, field.coeffs(x))) + ")" for x in row))
    status = 0
    if args.check:
        try:
            mh = dm.enumerate_gamma_graphic(h, cap=args.cap)
        except dm.SetSystemError as exc:
            raise Infeasible(str(exc)) from None
        rep_ok = principal_nonsingular_masks(a) == set(mh.masks)
        minor_ok = _gadget_minor(h, pendants, mh).same_as(dm.enumerate_gamma_graphic(g, cap=args.cap))
        payload["check"] = {"representation": rep_ok, "minor": minor_ok}
        lines.append(f"check: principal minors {'match' if rep_ok else 'DO NOT match'} "
                     f"all {2 ** len(h.edge_ids)} subsets")
        if pendants:
            lines.append(f"check: contracting the pendant edges {'recovers' if minor_ok else 'DOES NOT recover'} "
                         "the input delta-matroid")
        status = 0 if rep_ok and minor_ok else 1
    _emit(args, payload, lines)
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="gammagraphic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="maximum-weight acyclic gamma-nonzero set")
    p.add_argument("--graph", required=True)
    p.add_argument("--weights", help="weights file (default: every edge weighs 1)")
    p.add_argument("--trace", action="store_true", help="print the greedy decisions")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("separate", parents=[common], help="separation oracle query")
    p.add_argument("--graph", required=True)
    p.add_argument("--in", dest="in_", default="", help="comma-separated edges to include")
    p.add_argument("--out", default="", help="comma-separated edges to avoid")
    p.add_argument("--witness", action="store_true", help="print a feasible set when separable")
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("pack-mod-k", parents=[common], help="trees of order not divisible by k")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--weights")
    p.set_defaults(func=cmd_pack_mod_k)

    p = sub.add_parser("pack-stree", parents=[common], help="spanning packing by S-trees")
    p.add_argument("--graph", required=True)
    p.add_argument("--s", required=True, help="comma-separated vertices of S")
    p.add_argument("--weights")
    p.set_defaults(func=cmd_pack_stree)

    for name, func, text in (("enumerate", cmd_enumerate, "list all feasible sets"),
                             ("check-axioms", cmd_check_axioms, "verify the delta-matroid axioms")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--graph", required=True)
        p.add_argument("--cap", type=int, default=dm.ENUMERATION_CAP, help="maximum number of edges")
        p.set_defaults(func=func)

    p = sub.add_parser("represent", parents=[common], help="symmetric matrix over GF(p^ell)")
    p.add_argument("--graph", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--check", action="store_true", help="verify against enumeration")
    p.add_argument("--cap", type=int, default=dm.ENUMERATION_CAP)
    p.set_defaults(func=cmd_represent)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or 0
    except (InputError, WeightError, SeparationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (Infeasible, PackingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
