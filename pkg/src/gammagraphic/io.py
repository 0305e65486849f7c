"""Reading and writing graph and weight documents."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .labelled_graph import GraphFormatError, LabelledGraph


class InputError(ValueError):
    """Malformed input file; the message carries the file and a line or field location."""


def _load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def read_graph(path, *, unlabelled: bool = False) -> LabelledGraph:
    doc = _load_json(path)
    try:
        return LabelledGraph.from_json(doc, unlabelled=unlabelled)
    except GraphFormatError as exc:
        raise InputError(f"{path}: field {exc}") from None
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def write_graph(g: LabelledGraph, path) -> None:
    Path(path).write_text(json.dumps(g.to_json(), indent=2) + "\n")


def weights_from_json(doc, graph: LabelledGraph | None = None, where: str = "<weights>") -> dict:
    """Map edge id -> Fraction from ``{"e1": 3, "e2": {"num": -1, "den": 2}}``.

    Keys are JSON strings; when ``graph`` is given they are matched to its
    edge ids by string form, so integer edge ids work too.
    """
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected an object mapping edge ids to weights")
    lookup = {str(e): e for e in graph.edge_ids} if graph is not None else None
    out = {}
    for key, value in doc.items():
        field = f"{where}: field {key!r}"
        if lookup is not None:
            if key not in lookup:
                raise InputError(f"{field}: unknown edge id")
            key = lookup[key]
        if isinstance(value, bool):
            raise InputError(f"{field}: expected an integer or {{num, den}}")
        if isinstance(value, int):
            out[key] = Fraction(value)
        elif isinstance(value, dict) and set(value) == {"num", "den"}:
            num, den = value["num"], value["den"]
            if any(isinstance(x, bool) or not isinstance(x, int) for x in (num, den)):
                raise InputError(f"{field}: num and den must be integers")
            if den <= 0:
                raise InputError(f"{field}: den must be positive")
            out[key] = Fraction(num, den)
        else:
            raise InputError(f"{field}: expected an integer or {{num, den}}")
    return out


def read_weights(path, graph: LabelledGraph | None = None) -> dict:
    return weights_from_json(_load_json(path), graph, str(path))


def weight_to_json(w: Fraction):
    return w.numerator if w.denominator == 1 else {"num": w.numerator, "den": w.denominator}
