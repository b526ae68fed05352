"""JSON and DOT formats for graphs, links, weight systems, cones and K0 data.

Rationals are written as ``"p/q"`` (or ``"n"``), integers as decimal strings,
vertices by their canonical key string.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .extension import ExtTruncation, ExtVertex, GroupElement, ext_dim
from .graph import ExplicitGraph, GraphError, Truncation, Vertex, format_key, parse_key
from .harmonic import CoherentSystem, ExtendedHarmonic
from .k0 import K0Element
from .link import Link, WeightSystem
from .rational import format_ratio, parse_ratio


class SchemaError(ValueError):
    """Input data does not match the expected JSON schema."""


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON: {exc}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _ratio(x: Any, where: str) -> Fraction:
    try:
        return parse_ratio(x)
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool):
        raise SchemaError(f"{where}: expected an integer")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and x.strip().lstrip("-").isdigit():
        return int(x)
    raise SchemaError(f"{where}: expected an integer, got {x!r}")


def vertex_index(t: Truncation) -> dict[str, Vertex]:
    return {str(v): v for v in t.vertices()}


def lookup(index: dict[str, Vertex], key: Any, where: str) -> Vertex:
    if not isinstance(key, str):
        raise SchemaError(f"{where}: vertex key must be a string")
    v = index.get(format_key(parse_key(key)))
    if v is None:
        raise SchemaError(f"{where}: unknown vertex {key!r}")
    return v


# graphs


def graph_from_json(data: Any) -> ExplicitGraph:
    if not isinstance(data, dict) or not isinstance(data.get("levels"), list):
        raise SchemaError("graph JSON needs a 'levels' list")
    levels = []
    for n, row in enumerate(data["levels"]):
        if not isinstance(row, list) or not all(isinstance(k, str) for k in row):
            raise SchemaError(f"levels[{n}] must be a list of key strings")
        levels.append([parse_key(k) for k in row])
    edges = []
    for i, e in enumerate(data.get("edges", [])):
        if not isinstance(e, dict) or not {"child", "parent"} <= set(e):
            raise SchemaError(f"edges[{i}] needs 'child' and 'parent'")
        if not isinstance(e["child"], str) or not isinstance(e["parent"], str):
            raise SchemaError(f"edges[{i}]: keys must be strings")
        m = _int(e.get("m", 1), f"edges[{i}].m")
        edges.append((parse_key(e["child"]), parse_key(e["parent"]), m))
    try:
        return ExplicitGraph(levels, edges)
    except GraphError as exc:
        raise SchemaError(str(exc)) from None


def graph_to_json(t: Truncation) -> dict:
    return {
        "levels": [[str(v) for v in row] for row in t.levels],
        "edges": [
            {"child": str(c), "parent": str(p), "m": str(m)} for (c, p), m in sorted(t.edges.items())
        ],
        "dims": {str(v): str(t.dim(v)) for v in t.vertices()},
    }


def _dot_id(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def truncation_dot(t: Truncation) -> str:
    lines = ["digraph truncation {", "  rankdir=BT;"]
    for n, row in enumerate(t.levels):
        ids = " ".join(_dot_id(str(v)) for v in row)
        lines.append(f"  {{ rank=same; {ids} }}  // level {n}")
    for v in t.vertices():
        lines.append(f"  {_dot_id(str(v))} [label={_dot_id(f'{v} dim={t.dim(v)}')}];")
    for (c, p), m in sorted(t.edges.items()):
        label = f" [label={m}]" if m > 1 else ""
        lines.append(f"  {_dot_id(str(c))} -> {_dot_id(str(p))}{label};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# links and weights


def link_from_json(data: Any, t: Truncation) -> Link:
    if not isinstance(data, dict) or not isinstance(data.get("edges"), list):
        raise SchemaError("link JSON needs an 'edges' list")
    idx = vertex_index(t)
    kernel = {}
    for i, e in enumerate(data["edges"]):
        if not isinstance(e, dict) or not {"child", "parent", "kappa"} <= set(e):
            raise SchemaError(f"edges[{i}] needs 'child', 'parent', 'kappa'")
        c = lookup(idx, e["child"], f"edges[{i}].child")
        p = lookup(idx, e["parent"], f"edges[{i}].parent")
        kernel[(c, p)] = _ratio(e["kappa"], f"edges[{i}].kappa")
    return Link(kernel)


def link_to_json(k: Link) -> dict:
    return {
        "edges": [
            {"child": str(c), "parent": str(p), "kappa": format_ratio(x)}
            for (c, p), x in sorted(k.kernel.items())
        ]
    }


def weights_to_json(w: WeightSystem) -> dict:
    return {
        "kdim": {str(v): format_ratio(x) for v, x in sorted(w.kdim.items())},
        "kdim_sq": {str(v): format_ratio(x) for v, x in sorted(w.kdim_sq.items())},
        "rho": [
            {"child": str(c), "parent": str(p), "rho": format_ratio(x)}
            for (c, p), x in sorted(w.rho.items())
        ],
        "generators": [format_ratio(g) for g in w.generators],
        "base": None if w.base is None else format_ratio(w.base),
    }


# extended vertices


def ext_vertex_to_json(v: ExtVertex, base: Fraction | None) -> dict:
    out: dict[str, Any] = {"z": str(v.z), "gamma": str(v.gamma)}
    if base is not None:
        out["grade"] = v.gamma.grade(base)
    return out


def ext_vertex_from_json(data: Any, idx: dict[str, Vertex], base: Fraction | None, where: str) -> ExtVertex:
    if not isinstance(data, dict) or "z" not in data:
        raise SchemaError(f"{where}: extended vertex needs 'z'")
    z = lookup(idx, data["z"], where)
    if "gamma" in data:
        g = _ratio(data["gamma"], f"{where}.gamma")
        if g <= 0:
            raise SchemaError(f"{where}.gamma must be positive")
        gamma = GroupElement(g)
    elif "grade" in data and base is not None:
        gamma = GroupElement.of(base, _int(data["grade"], f"{where}.grade"))
    else:
        raise SchemaError(f"{where}: needs 'gamma' (or 'grade' with a base)")
    return ExtVertex(z, gamma)


def ext_to_json(x: ExtTruncation, base: Fraction | None = None) -> dict:
    return {
        "levels": [
            [dict(ext_vertex_to_json(v, base), dim=str(ext_dim(x, v))) for v in row]
            for row in x.levels
        ],
        "edges": [
            {"child": ext_vertex_to_json(a, base), "parent": ext_vertex_to_json(b, base)}
            for a, b in sorted(x.edges)
        ],
    }


def ext_dot(x: ExtTruncation) -> str:
    lines = ["digraph extension {", "  rankdir=BT;"]
    for n, row in enumerate(x.levels):
        ids = " ".join(_dot_id(str(v)) for v in row)
        lines.append(f"  {{ rank=same; {ids} }}  // level {n}")
    for a, b in sorted(x.edges):
        lines.append(f"  {_dot_id(str(a))} -> {_dot_id(str(b))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# harmonic data


def coherent_to_json(nu: CoherentSystem) -> dict:
    return {
        "depth": nu.depth,
        "levels": [{str(v): format_ratio(x) for v, x in sorted(row.items())} for row in nu.levels],
    }


def coherent_from_json(data: Any, t: Truncation) -> CoherentSystem:
    if not isinstance(data, dict) or not isinstance(data.get("levels"), list):
        raise SchemaError("coherent system JSON needs 'levels'")
    idx = vertex_index(t)
    levels = []
    for n, row in enumerate(data["levels"]):
        if not isinstance(row, dict):
            raise SchemaError(f"levels[{n}] must be an object")
        vals = {}
        for key, x in row.items():
            v = lookup(idx, key, f"levels[{n}]")
            if v.level != n:
                raise SchemaError(f"levels[{n}]: vertex {key} is at level {v.level}")
            val = _ratio(x, f"levels[{n}][{key}]")
            if val:
                vals[v] = val
        levels.append(dict(sorted(vals.items())))
    if "depth" in data and _int(data["depth"], "depth") != len(levels) - 1:
        raise SchemaError("depth does not match the number of levels")
    return CoherentSystem(tuple(levels))


def extended_to_json(nt: ExtendedHarmonic, base: Fraction | None = None) -> dict:
    return {
        "depth": nt.depth,
        "beta": nt.beta,
        "levels": [
            [dict(ext_vertex_to_json(v, base), value=format_ratio(x)) for v, x in sorted(row.items())]
            for row in nt.levels
        ],
    }


def extended_from_json(data: Any, t: Truncation, base: Fraction | None = None) -> ExtendedHarmonic:
    if not isinstance(data, dict) or not isinstance(data.get("levels"), list):
        raise SchemaError("extended harmonic JSON needs 'levels'")
    idx = vertex_index(t)
    beta = _int(data.get("beta", -1), "beta")
    levels = []
    for n, row in enumerate(data["levels"]):
        if not isinstance(row, list):
            raise SchemaError(f"levels[{n}] must be a list")
        vals = {}
        for i, item in enumerate(row):
            v = ext_vertex_from_json(item, idx, base, f"levels[{n}][{i}]")
            vals[v] = _ratio(item.get("value"), f"levels[{n}][{i}].value")
        levels.append(dict(sorted(vals.items())))
    return ExtendedHarmonic(tuple(levels), beta)


def k0_to_json(f: K0Element, base: Fraction | None = None) -> dict:
    return {
        "level": f.level,
        "values": [dict(ext_vertex_to_json(v, base), value=format_ratio(x)) for v, x in f.values.items()],
    }


def k0_from_json(data: Any, t: Truncation, base: Fraction | None = None) -> K0Element:
    if not isinstance(data, dict) or "level" not in data or not isinstance(data.get("values"), list):
        raise SchemaError("K0 element JSON needs 'level' and 'values'")
    idx = vertex_index(t)
    level = _int(data["level"], "level")
    vals = {}
    for i, item in enumerate(data["values"]):
        v = ext_vertex_from_json(item, idx, base, f"values[{i}]")
        if v.level != level:
            raise SchemaError(f"values[{i}]: vertex not at level {level}")
        vals[v] = _ratio(item.get("value"), f"values[{i}].value")
    return K0Element(level, vals)


def matrix_rows(m: list[list[Fraction]]) -> list[list[str]]:
    return [[format_ratio(x) for x in row] for row in m]
