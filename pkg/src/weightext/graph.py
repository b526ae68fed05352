"""Graded branching graphs, finite downward cones and dimensions.

A graph is given by a *provider*: an object that can list the (finitely many)
parents of any vertex, and optionally enumerate a level or list the children
of a vertex.  Level sets may be infinite, so every computation happens on a
:class:`Truncation`, the finite downward closure of a set of seeds.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Union

Key = Union[tuple, str]


class Vertex(NamedTuple):
    level: int
    key: Key

    def __str__(self) -> str:
        return format_key(self.key)


def format_key(key: Key) -> str:
    if isinstance(key, str):
        return key
    return "(" + ",".join(str(k) for k in key) + ")"


_TUPLE_RE = re.compile(r"^\(\s*(-?\d+(\s*,\s*-?\d+)*)?\s*,?\s*\)$")


def parse_key(text: str) -> Key:
    """``"(1,0)"`` -> ``(1, 0)``; ``"()"`` and ``"∅"`` -> ``()``; other strings verbatim."""
    s = text.strip()
    if s in ("()", "∅"):
        return ()
    if _TUPLE_RE.match(s):
        return tuple(int(p) for p in s[1:-1].split(",") if p.strip())
    return s


class GraphError(ValueError):
    """Raised for malformed graph queries or graph data."""


@dataclass
class Report:
    """Outcome of a validation pass: hard errors plus advisory warnings."""

    name: str
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def fail(self, msg: str) -> None:
        self.errors.append(msg)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "errors": list(self.errors),
            "warnings": list(self.warnings),
            "notes": list(self.notes),
        }


class GraphProvider:
    """Base class for branching graphs.

    Subclasses implement :meth:`parents`; :meth:`children` returns None when
    a vertex has infinitely many (or unknown) children, and
    :meth:`level_vertices` may yield forever.
    """

    name = "graph"
    root: Vertex

    def parents(self, v: Vertex) -> list[tuple[Vertex, int]]:
        raise NotImplementedError

    def children(self, v: Vertex) -> list[Vertex] | None:
        return None

    def level_vertices(self, n: int) -> Iterator[Vertex]:
        raise NotImplementedError

    def checked_parents(self, v: Vertex) -> list[tuple[Vertex, int]]:
        if v.level == 0:
            if v != self.root:
                raise GraphError(f"vertex not in graph: {v}")
            raise GraphError("root has no parents")
        ps = self.parents(v)
        if not ps:
            raise GraphError(f"vertex not in graph: {v}")
        for p, m in ps:
            if p.level != v.level - 1 or m < 1:
                raise GraphError(f"bad parent {p} (m={m}) for {v}")
        return ps


class PascalGraph(GraphProvider):
    """Pascal's triangle: vertex ``(n, k)`` covers ``(n-1, k-1)`` and ``(n-1, k)``."""

    name = "pascal"
    root = Vertex(0, (0, 0))

    def _check(self, v: Vertex) -> tuple[int, int]:
        if not isinstance(v.key, tuple) or len(v.key) != 2:
            raise GraphError(f"vertex not in graph: {v}")
        n, k = v.key
        if n != v.level or not 0 <= k <= n:
            raise GraphError(f"vertex not in graph: {v}")
        return n, k

    def parents(self, v: Vertex) -> list[tuple[Vertex, int]]:
        n, k = self._check(v)
        if n == 0:
            return []
        out = []
        for j in (k - 1, k):
            if 0 <= j <= n - 1:
                out.append((Vertex(n - 1, (n - 1, j)), 1))
        return out

    def children(self, v: Vertex) -> list[Vertex]:
        n, k = self._check(v)
        return [Vertex(n + 1, (n + 1, k)), Vertex(n + 1, (n + 1, k + 1))]

    def level_vertices(self, n: int) -> Iterator[Vertex]:
        return iter([Vertex(n, (n, k)) for k in range(n + 1)])

    @staticmethod
    def vertex(n: int, k: int) -> Vertex:
        return Vertex(n, (n, k))


class ExplicitGraph(GraphProvider):
    """A finite graph listed level by level, e.g. loaded from JSON."""

    name = "explicit"

    def __init__(self, levels: list[list[Key]], edges: Iterable[tuple[Key, Key, int]]):
        if not levels or len(levels[0]) != 1:
            raise GraphError("level 0 must contain exactly one vertex")
        self._where: dict[Key, Vertex] = {}
        self._levels: list[list[Vertex]] = []
        for n, keys in enumerate(levels):
            if not keys:
                raise GraphError(f"level {n} is empty")
            row = []
            for key in keys:
                if key in self._where:
                    raise GraphError(f"duplicate vertex key {format_key(key)}")
                v = Vertex(n, key)
                self._where[key] = v
                row.append(v)
            self._levels.append(sorted(row))
        self.root = self._levels[0][0]
        self._parents: dict[Vertex, dict[Vertex, int]] = {}
        self._children: dict[Vertex, list[Vertex]] = {}
        for child, parent, m in edges:
            c, p = self.lookup(child), self.lookup(parent)
            if p.level != c.level - 1:
                raise GraphError(f"edge {format_key(child)}->{format_key(parent)} skips a level")
            if m < 1:
                raise GraphError(f"edge {format_key(child)}->{format_key(parent)} has m={m} < 1")
            row = self._parents.setdefault(c, {})
            if p in row:
                raise GraphError(f"duplicate edge {format_key(child)}->{format_key(parent)}")
            row[p] = m
            self._children.setdefault(p, []).append(c)
        for row in self._levels[1:]:
            for v in row:
                if v not in self._parents:
                    raise GraphError(f"vertex {v} has no parent")

    @property
    def top_level(self) -> int:
        return len(self._levels) - 1

    def lookup(self, key: Key) -> Vertex:
        try:
            return self._where[key]
        except KeyError:
            raise GraphError(f"vertex not in graph: {format_key(key)}") from None

    def parents(self, v: Vertex) -> list[tuple[Vertex, int]]:
        if self._where.get(v.key) != v:
            raise GraphError(f"vertex not in graph: {v}")
        return sorted(self._parents.get(v, {}).items())

    def children(self, v: Vertex) -> list[Vertex] | None:
        if v.level >= self.top_level:
            return None
        return sorted(self._children.get(v, []))

    def level_vertices(self, n: int) -> Iterator[Vertex]:
        if n > self.top_level:
            raise GraphError(f"graph has no level {n}")
        return iter(self._levels[n])


@dataclass(frozen=True)
class Truncation:
    """A finite downward-closed cone ``levels[0..top_level]`` of a graph."""

    graph: GraphProvider = field(repr=False, compare=False)
    levels: tuple[tuple[Vertex, ...], ...]
    edges: dict[tuple[Vertex, Vertex], int] = field(repr=False)
    cover_complete: frozenset[Vertex] = field(repr=False)
    dims: dict[Vertex, int] = field(repr=False, compare=False)
    _parents: dict[Vertex, tuple[tuple[Vertex, int], ...]] = field(repr=False, compare=False)
    _children: dict[Vertex, tuple[Vertex, ...]] = field(repr=False, compare=False)

    @property
    def top_level(self) -> int:
        return len(self.levels) - 1

    @property
    def root(self) -> Vertex:
        return self.levels[0][0]

    def __contains__(self, v: object) -> bool:
        return v in self.dims

    def vertices(self) -> Iterator[Vertex]:
        for row in self.levels:
            yield from row

    def parents(self, v: Vertex) -> tuple[tuple[Vertex, int], ...]:
        self._require(v)
        return self._parents[v]

    def children(self, v: Vertex) -> tuple[Vertex, ...]:
        """Children of ``v`` that lie inside the truncation."""
        self._require(v)
        return self._children.get(v, ())

    def dim(self, v: Vertex) -> int:
        self._require(v)
        return self.dims[v]

    def _require(self, v: Vertex) -> None:
        if v not in self.dims:
            raise GraphError(f"vertex not in truncation: {v}")


def truncate(g: GraphProvider, seeds: Iterable[Vertex]) -> Truncation:
    """Downward closure of ``seeds`` under ``g.parents``."""
    seeds = sorted(set(seeds))
    if not seeds:
        raise GraphError("no seeds")
    top = seeds[0].level
    if any(s.level != top for s in seeds):
        raise GraphError("seeds must share a level")

    levels: list[set[Vertex]] = [set() for _ in range(top + 1)]
    levels[top] = set(seeds)
    parents: dict[Vertex, tuple[tuple[Vertex, int], ...]] = {}
    for n in range(top, 0, -1):
        for v in sorted(levels[n]):
            ps = tuple(sorted(g.checked_parents(v)))
            parents[v] = ps
            levels[n - 1].update(p for p, _ in ps)
    if levels[0] != {g.root}:
        raise GraphError(f"level 0 must be the root, got {sorted(levels[0])}")
    parents[g.root] = ()

    ordered = tuple(tuple(sorted(row)) for row in levels)
    edges = {(c, p): m for c, ps in parents.items() for p, m in ps}
    children: dict[Vertex, list[Vertex]] = {}
    for (c, p) in sorted(edges):
        children.setdefault(p, []).append(c)

    members = set().union(*levels)
    complete = set()
    for row in ordered[:-1]:
        for v in row:
            ch = g.children(v)
            if ch is not None and all(c in members for c in ch):
                complete.add(v)

    dims: dict[Vertex, int] = {}
    for row in ordered:
        for v in row:
            dims[v] = 1 if v.level == 0 else sum(m * dims[p] for p, m in parents[v])

    return Truncation(
        graph=g,
        levels=ordered,
        edges=edges,
        cover_complete=frozenset(complete),
        dims=dims,
        _parents=parents,
        _children={p: tuple(cs) for p, cs in children.items()},
    )


def dim(t: Truncation, v: Vertex) -> int:
    return t.dim(v)


def root_paths(t: Truncation, v: Vertex) -> Iterator[tuple[Vertex, ...]]:
    """Enumerate every path ``(v, ..., root)``; multiplicities are not expanded."""
    if v.level == 0:
        yield (v,)
        return
    for p, _ in t.parents(v):
        for rest in root_paths(t, p):
            yield (v,) + rest


def path_dim(t: Truncation, v: Vertex) -> int:
    """Multiplicity-weighted path count by explicit enumeration (no memoisation)."""
    total = 0
    for path in root_paths(t, v):
        w = 1
        for a, b in zip(path, path[1:]):
            w *= t.edges[(a, b)]
        total += w
    return total


def validate(t: Truncation) -> Report:
    rep = Report("graph")
    for v in t.vertices():
        if v.level == 0:
            continue
        if not t.parents(v):
            rep.fail(f"vertex {v} has no parent edge")
    checked = 0
    for row in t.levels[:-1]:
        for v in row:
            if v in t.cover_complete:
                checked += 1
                if not t.children(v):
                    rep.warnings.append(f"vertex {v} has no child in the truncation")
            else:
                rep.notes.append(f"vertex {v}: child condition not checkable")
    rep.notes.insert(0, f"{checked} cover-complete vertices checked for children")
    return rep


def full_levels(g: GraphProvider, top: int) -> Truncation:
    """Truncation seeded by every vertex of level ``top`` (finite levels only)."""
    return truncate(g, list(g.level_vertices(top)))

