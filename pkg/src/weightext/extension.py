"""Finite cones of the weight-extended branching graph and the translation action.

Vertices are pairs ``(z, gamma)`` with ``gamma`` in the weight group; there is
an edge ``(z, gamma) -> (z', gamma')`` exactly when ``z -> z'`` is an edge and
``gamma' = gamma * rho(z, z')``.  Each extended vertex therefore has finitely
many parents, and downward cones are finite even though every extended level
is infinite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Union

from .graph import GraphError, Truncation, Vertex
from .link import LinkError, WeightSystem
from .rational import format_ratio, integer_log, prime_exponents


@dataclass(frozen=True, order=True)
class GroupElement:
    """An element of the weight group, a positive rational."""

    value: Fraction

    def __post_init__(self) -> None:
        v = Fraction(self.value)
        if v <= 0:
            raise ValueError(f"weight group elements are positive, got {v}")
        object.__setattr__(self, "value", v)

    def __mul__(self, other: GroupElement) -> GroupElement:
        return GroupElement(self.value * other.value)

    def __truediv__(self, other: GroupElement) -> GroupElement:
        return GroupElement(self.value / other.value)

    def __pow__(self, k: int) -> GroupElement:
        return GroupElement(self.value**k)

    def inverse(self) -> GroupElement:
        return GroupElement(1 / self.value)

    def exponents(self) -> dict[int, int]:
        return prime_exponents(self.value)

    def grade(self, base: Fraction) -> int:
        k = integer_log(self.value, base)
        if k is None:
            raise ValueError(f"{format_ratio(self.value)} is not a power of {format_ratio(base)}")
        return k

    def power_value(self, beta: int) -> Fraction:
        """``gamma ** beta`` as a rational (integer ``beta`` only)."""
        return self.value**beta

    @classmethod
    def of(cls, base: Fraction, k: int) -> GroupElement:
        return cls(Fraction(base) ** k)

    def __str__(self) -> str:
        return format_ratio(self.value)


ONE = GroupElement(Fraction(1))


class ExtVertex(NamedTuple):
    z: Vertex
    gamma: GroupElement

    @property
    def level(self) -> int:
        return self.z.level

    def __str__(self) -> str:
        return f"({self.z}, {self.gamma})"


ExtEdge = tuple[ExtVertex, ExtVertex]


def ext_parents(t: Truncation, w: WeightSystem, v: ExtVertex) -> list[ExtVertex]:
    """``[(z', gamma * rho(z, z')) for z' parent of z]``."""
    if v.level == 0:
        raise GraphError("root-level extended vertex has no parents")
    if not w.rho:
        raise LinkError("weight system has no edge weights")
    return [ExtVertex(p, v.gamma * GroupElement(w.rho[(v.z, p)])) for p, _ in t.parents(v.z)]


@dataclass(frozen=True)
class ExtTruncation:
    """A finite downward-closed cone of the weight-extended graph."""

    base: Truncation = field(repr=False)
    weights: WeightSystem = field(repr=False)
    levels: tuple[tuple[ExtVertex, ...], ...]
    edges: frozenset[ExtEdge] = field(repr=False)
    dims: dict[ExtVertex, int] = field(repr=False, compare=False)

    @property
    def top_level(self) -> int:
        return len(self.levels) - 1

    def vertices(self):
        for row in self.levels:
            yield from row

    def __contains__(self, v: object) -> bool:
        return v in self.dims

    def parents(self, v: ExtVertex) -> list[ExtVertex]:
        if v not in self.dims:
            raise GraphError(f"extended vertex not in cone: {v}")
        return ext_parents(self.base, self.weights, v)

    def m_tilde(self, a: ExtVertex, b: ExtVertex) -> int:
        return m_tilde(self.base, self.weights, a, b)

    def mu_tilde(self, a: ExtVertex, b: ExtVertex) -> Fraction:
        return mu_tilde(self.base, self.weights, a, b)


def extend(
    t: Truncation, w: WeightSystem, seeds: Iterable[tuple[Vertex, GroupElement] | ExtVertex]
) -> ExtTruncation:
    """Downward closure of ``seeds`` under :func:`ext_parents`."""
    seeds = sorted({ExtVertex(z, g) for z, g in seeds})
    if not seeds:
        raise GraphError("no seeds")
    top = seeds[0].level
    if any(s.level != top for s in seeds):
        raise GraphError("seeds must share a level")
    if not w.complete or not w.rho:
        raise LinkError("extension needs a complete weight system (κ-dims and weights)")
    for s in seeds:
        if s.z not in t:
            raise GraphError(f"vertex not in truncation: {s.z}")

    levels: list[set[ExtVertex]] = [set() for _ in range(top + 1)]
    levels[top] = set(seeds)
    edges = set()
    for n in range(top, 0, -1):
        for v in sorted(levels[n]):
            for p in ext_parents(t, w, v):
                edges.add((v, p))
                levels[n - 1].add(p)
    ordered = tuple(tuple(sorted(row)) for row in levels)

    parents: dict[ExtVertex, list[ExtVertex]] = {}
    for a, b in edges:
        parents.setdefault(a, []).append(b)
    dims: dict[ExtVertex, int] = {}
    for row in ordered:
        for v in row:
            dims[v] = 1 if v.level == 0 else sum(dims[p] for p in parents[v])
    return ExtTruncation(t, w, ordered, frozenset(edges), dims)


def ext_dim(x: ExtTruncation, v: ExtVertex) -> int:
    """Number of paths from ``v`` down to level 0 of the cone."""
    if v not in x.dims:
        raise GraphError(f"extended vertex not in cone: {v}")
    return x.dims[v]


def m_tilde(t: Truncation, w: WeightSystem, a: ExtVertex, b: ExtVertex) -> int:
    if b.level != a.level - 1 or (a.z, b.z) not in t.edges:
        return 0
    return int(b.gamma.value == a.gamma.value * w.rho[(a.z, b.z)])


def mu_tilde(t: Truncation, w: WeightSystem, a: ExtVertex, b: ExtVertex) -> Fraction:
    """Standard link of the extended graph: ``dim(z') / dim(z)`` on edges."""
    if m_tilde(t, w, a, b):
        return Fraction(t.dim(b.z), t.dim(a.z))
    return Fraction(0)


Translatable = Union[ExtVertex, tuple, ExtTruncation]


def translate(obj: Translatable, gamma: GroupElement):
    """Apply ``T_gamma(z, g) = (z, gamma * g)`` to a vertex, an edge or a whole cone."""
    if isinstance(obj, ExtVertex):
        return ExtVertex(obj.z, gamma * obj.gamma)
    if isinstance(obj, ExtTruncation):
        moved = {v: translate(v, gamma) for v in obj.vertices()}
        return ExtTruncation(
            obj.base,
            obj.weights,
            tuple(tuple(sorted(moved[v] for v in row)) for row in obj.levels),
            frozenset((moved[a], moved[b]) for a, b in obj.edges),
            {moved[v]: d for v, d in obj.dims.items()},
        )
    if isinstance(obj, tuple) and len(obj) == 2:
        return (translate(obj[0], gamma), translate(obj[1], gamma))
    raise TypeError(f"cannot translate {type(obj).__name__}")


def is_isomorphic_to_base(x: ExtTruncation) -> bool:
    """True when ``(z, g) -> z`` is a bijection of vertices and edges onto the base."""
    t = x.base
    proj = {v: v.z for v in x.vertices()}
    if len(set(proj.values())) != len(proj) or set(proj.values()) != set(t.vertices()):
        return False
    return {(proj[a], proj[b]) for a, b in x.edges} == set(t.edges)
