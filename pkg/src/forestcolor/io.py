"""JSON graph and coloring documents.

A graph document looks like::

    {"params": {"d1": 1, "d2": 4},
     "vertices": [{"id": 0, "w1": 0, "w2": 0}, ...],
     "edges": [{"u": 0, "v": 1, "multiplicity": 1}, ...]}

Serialization is canonical (vertices and edges sorted by id), so
``serialize(parse(text))`` is stable for any canonical ``text``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .graph import GraphError, Params, WeightedMultigraph
from .verify import Coloring


class DocumentError(ValueError):
    """Raised for malformed graph or coloring documents."""


def _int(obj: Mapping[str, Any], key: str, where: str, default: int | None = None) -> int:
    if key not in obj:
        if default is not None:
            return default
        raise DocumentError(f"{where}: missing field {key!r}")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where}: field {key!r} must be an integer, got {value!r}")
    return value


def graph_from_dict(doc: Any) -> WeightedMultigraph:
    if not isinstance(doc, Mapping):
        raise DocumentError("a graph document must be a JSON object")
    for key in ("params", "vertices"):
        if key not in doc:
            raise DocumentError(f"missing top-level field {key!r}")
    params_doc = doc["params"]
    if not isinstance(params_doc, Mapping):
        raise DocumentError("'params' must be an object")
    try:
        params = Params(_int(params_doc, "d1", "params"), _int(params_doc, "d2", "params"))
    except GraphError as exc:
        raise DocumentError(str(exc)) from exc

    if not isinstance(doc["vertices"], list):
        raise DocumentError("'vertices' must be a list")
    weights: dict[int, tuple[int, int]] = {}
    for k, item in enumerate(doc["vertices"]):
        if not isinstance(item, Mapping):
            raise DocumentError(f"vertices[{k}] must be an object")
        where = f"vertices[{k}]"
        v = _int(item, "id", where)
        if v in weights:
            raise DocumentError(f"duplicate vertex id {v}")
        weights[v] = (_int(item, "w1", where, 0), _int(item, "w2", where, 0))

    edges_doc = doc.get("edges", [])
    if not isinstance(edges_doc, list):
        raise DocumentError("'edges' must be a list")
    edges = []
    for k, item in enumerate(edges_doc):
        if not isinstance(item, Mapping):
            raise DocumentError(f"edges[{k}] must be an object")
        where = f"edges[{k}]"
        edges.append((_int(item, "u", where), _int(item, "v", where), _int(item, "multiplicity", where, 1)))
    try:
        return WeightedMultigraph.build(params, weights, edges)
    except GraphError as exc:
        raise DocumentError(str(exc)) from exc


def graph_to_dict(g: WeightedMultigraph) -> dict[str, Any]:
    return {
        "params": {"d1": g.params.d1, "d2": g.params.d2},
        "vertices": [{"id": v, "w1": g.weight(v, 1), "w2": g.weight(v, 2)} for v in g.vertices],
        "edges": [{"u": u, "v": v, "multiplicity": k} for u, v, k in g.edges()],
    }


def parse(text: str) -> WeightedMultigraph:
    """Parse a graph document; normalization notes land in ``.warnings``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(doc)


def serialize(g: WeightedMultigraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2) + "\n"


def load(path: str | Path) -> WeightedMultigraph:
    return parse(Path(path).read_text())


def dump(g: WeightedMultigraph, path: str | Path) -> None:
    Path(path).write_text(serialize(g))


def coloring_to_dict(coloring: Mapping[int, int], trace: list[dict[str, Any]] | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"assignments": [{"id": v, "class": coloring[v]} for v in sorted(coloring)]}
    if trace is not None:
        doc["trace"] = trace
    return doc


def coloring_from_dict(doc: Any) -> Coloring:
    if not isinstance(doc, Mapping) or not isinstance(doc.get("assignments"), list):
        raise DocumentError("a coloring document needs an 'assignments' list")
    out: Coloring = {}
    for k, item in enumerate(doc["assignments"]):
        if not isinstance(item, Mapping):
            raise DocumentError(f"assignments[{k}] must be an object")
        v = _int(item, "id", f"assignments[{k}]")
        c = _int(item, "class", f"assignments[{k}]")
        if v in out:
            raise DocumentError(f"vertex {v} is assigned twice")
        out[v] = c
    return out


def parse_coloring(text: str) -> Coloring:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return coloring_from_dict(doc)


def serialize_coloring(coloring: Mapping[int, int], trace: list[dict[str, Any]] | None = None) -> str:
    return json.dumps(coloring_to_dict(coloring, trace), indent=2) + "\n"
