"""JSON file formats and DOT export.

* graph:     ``{"vertices": n, "edges": [[a, b], ...]}``
* colouring: ``{"k": k, "colours": [c_0, ...]}``
* partition: ``{"sides": ["D", "U", ...]}``
* witness:   ``{"k": k, "sides": [...], "colours": [...]}``
* lists:     ``{"lists": [[...], ...]}``
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .constructions import Witness
from .errors import GalvinError
from .graph import EdgeColouring, MultiGraph, VertexPartition, build_graph
from .orientation import Digraph, GalvinOrientation


class FormatError(GalvinError, ValueError):
    """A JSON document does not match the expected schema."""


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _field(obj: Any, key: str, kind: type | tuple[type, ...]) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise FormatError(f"field {key!r} has the wrong type")
    return val


def graph_to_json(g: MultiGraph) -> dict:
    return {"vertices": g.vertex_count, "edges": [list(e) for e in g.edges]}


def graph_from_json(obj: Any) -> MultiGraph:
    n = _field(obj, "vertices", int)
    edges = _field(obj, "edges", list)
    for pair in edges:
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, int) for x in pair)):
            raise FormatError(f"bad edge entry {pair!r}")
    try:
        return build_graph(n, edges)
    except GalvinError as exc:
        raise FormatError(str(exc)) from None


def dumps_graph(g: MultiGraph) -> str:
    return json.dumps(graph_to_json(g))


def colouring_to_json(c: EdgeColouring) -> dict:
    return {"k": c.k, "colours": list(c.colours)}


def colouring_from_json(obj: Any) -> EdgeColouring:
    k = _field(obj, "k", int)
    cols = _field(obj, "colours", list)
    if not all(isinstance(x, int) for x in cols):
        raise FormatError("colours must be integers")
    try:
        return EdgeColouring(k, tuple(cols))
    except GalvinError as exc:
        raise FormatError(str(exc)) from None


def partition_to_json(p: VertexPartition) -> dict:
    return {"sides": [s.value for s in p.sides]}


def partition_from_json(obj: Any) -> VertexPartition:
    sides = _field(obj, "sides", list)
    try:
        return VertexPartition.from_sides(sides)
    except GalvinError as exc:
        raise FormatError(str(exc)) from None


def witness_from_json(obj: Any) -> Witness:
    c = colouring_from_json(obj)
    return Witness(partition_from_json(obj), c, c.k)


def lists_from_json(obj: Any) -> list[list[int]]:
    lists = _field(obj, "lists", list)
    for entry in lists:
        if not (isinstance(entry, list) and all(isinstance(x, int) for x in entry)):
            raise FormatError(f"bad list entry {entry!r}")
    return lists


def orientation_to_dot(o: Digraph, name: str = "L") -> str:
    """DOT digraph with nodes ``e{id}:c{colour}`` and arcs labelled by witness vertex."""
    colours = o.colours if isinstance(o, GalvinOrientation) else ()
    lines = [f"digraph {name} {{"]
    for v in range(o.node_count):
        label = f"e{v}:c{colours[v]}" if colours else f"e{v}"
        lines.append(f'  e{v} [label="{label}"];')
    for a in sorted(o.arcs):
        lines.append(f'  e{a.tail} -> e{a.head} [label="{a.witness}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
