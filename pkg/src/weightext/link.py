"""Links on truncations, kappa-dimensions, edge weights and the weight group."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .graph import GraphError, Report, Truncation, Vertex, root_paths
from .rational import cyclic_base, exact_sqrt

Edge = tuple[Vertex, Vertex]


class LinkError(ValueError):
    """Raised when a link or weight system cannot support the requested operation."""


@dataclass(frozen=True)
class Link:
    """A kernel ``kappa(child, parent)`` on the edges of a truncation."""

    kernel: dict[Edge, Fraction]
    _by_child: dict[Vertex, tuple[tuple[Vertex, Fraction], ...]] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        rows: dict[Vertex, list[tuple[Vertex, Fraction]]] = {}
        for (c, p), val in sorted(self.kernel.items()):
            rows.setdefault(c, []).append((p, val))
        object.__setattr__(self, "_by_child", {c: tuple(r) for c, r in rows.items()})

    def __call__(self, child: Vertex, parent: Vertex) -> Fraction:
        return self.kernel.get((child, parent), Fraction(0))

    def row(self, child: Vertex) -> tuple[tuple[Vertex, Fraction], ...]:
        return self._by_child.get(child, ())

    def parents_of(self, vertices) -> set[Vertex]:
        return {p for c in vertices for p, _ in self.row(c)}


@dataclass
class WeightSystem:
    kdim_sq: dict[Vertex, Fraction]
    kdim: dict[Vertex, Fraction]
    rho: dict[Edge, Fraction] = field(default_factory=dict)
    generators: tuple[Fraction, ...] = ()
    base: Fraction | None = None

    @property
    def complete(self) -> bool:
        return len(self.kdim) == len(self.kdim_sq)

    @property
    def trivial(self) -> bool:
        return all(g == 1 for g in self.generators)

    def kappa_dim(self, v: Vertex) -> Fraction:
        try:
            return self.kdim[v]
        except KeyError:
            if v in self.kdim_sq:
                raise LinkError(
                    f"κ-dimension irrational at {v}; use numeric backend or "
                    "kdim_sq-level identities"
                ) from None
            raise GraphError(f"vertex not in truncation: {v}") from None


def _reject_multiplicities(t: Truncation, rep: Report | None = None) -> None:
    bad = sorted(e for e, m in t.edges.items() if m > 1)
    if not bad:
        return
    c, p = bad[0]
    msg = f"edge {c}->{p} has multiplicity {t.edges[(c, p)]} > 1; links need m in {{0,1}}"
    if rep is None:
        raise LinkError(msg)
    rep.fail(msg)


def standard_link(t: Truncation) -> Link:
    """``mu(z, z') = m(z, z') dim(z') / dim(z)``."""
    return Link({(c, p): Fraction(m * t.dim(p), t.dim(c)) for (c, p), m in t.edges.items()})


def validate_link(t: Truncation, k: Link) -> Report:
    rep = Report("link")
    _reject_multiplicities(t, rep)
    for (c, p), val in sorted(k.kernel.items()):
        if (c, p) not in t.edges:
            rep.fail(f"support mismatch: kernel value on non-edge {c}->{p}")
        elif val < 0:
            rep.fail(f"negative value {val} at {c}->{p}")
    for (c, p) in sorted(t.edges):
        if k(c, p) == 0:
            rep.fail(f"support mismatch: κ = 0 on edge {c}->{p}")
    for v in t.vertices():
        if v.level == 0:
            continue
        s = sum((k(v, p) for p, _ in t.parents(v)), Fraction(0))
        if s != 1:
            rep.fail(f"row sum {s} ≠ 1 at {v}")
    return rep


def _require_valid(t: Truncation, k: Link) -> None:
    rep = validate_link(t, k)
    if not rep.ok:
        raise LinkError("invalid link: " + "; ".join(rep.errors[:3]))


def kappa_dim(t: Truncation, k: Link) -> WeightSystem:
    """Squared kappa-dimensions by the path recursion, with exact roots where rational."""
    _require_valid(t, k)
    sq: dict[Vertex, Fraction] = {}
    for v in t.vertices():
        if v.level == 0:
            sq[v] = Fraction(1)
        else:
            sq[v] = sum((sq[p] / k(v, p) for p, _ in t.parents(v)), Fraction(0))
    roots = {v: r for v, s in sq.items() if (r := exact_sqrt(s)) is not None}
    return WeightSystem(kdim_sq=sq, kdim=roots)


def weights(t: Truncation, k: Link, w: WeightSystem) -> WeightSystem:
    """Edge weights ``kdim(z) kappa(z, z') / kdim(z')`` and the weight group."""
    missing = [v for v in t.vertices() if v not in w.kdim]
    if missing:
        raise LinkError(
            f"κ-dimension irrational at {missing[0]}; use numeric backend or "
            "kdim_sq-level identities"
        )
    rho = {(c, p): w.kdim[c] * k(c, p) / w.kdim[p] for (c, p) in sorted(t.edges)}
    gens = tuple(sorted(set(rho.values())))
    return WeightSystem(
        kdim_sq=dict(w.kdim_sq),
        kdim=dict(w.kdim),
        rho=rho,
        generators=gens,
        base=cyclic_base(gens),
    )


def weight_system(t: Truncation, k: Link) -> WeightSystem:
    """``kappa_dim`` followed by ``weights``."""
    return weights(t, k, kappa_dim(t, k))


def link_from_weights(
    t: Truncation, rho: Mapping[Edge, Fraction], kdim: Mapping[Vertex, Fraction]
) -> Link:
    """Invert the weight formula: ``kappa = rho kdim(z') / kdim(z)``.

    Row sums are not enforced here; run :func:`validate_link` on the result.
    """
    _reject_multiplicities(t)
    kernel = {}
    for (c, p) in sorted(t.edges):
        if kdim[c] <= 0 or kdim[p] <= 0 or rho[(c, p)] <= 0:
            raise LinkError(f"weights and κ-dimensions must be positive at {c}->{p}")
        kernel[(c, p)] = rho[(c, p)] * kdim[p] / kdim[c]
    return Link(kernel)


def kappa_dim_oracle(t: Truncation, k: Link, v: Vertex) -> Fraction:
    """Brute-force squared kappa-dimension: sum over root paths of ``1 / prod kappa``."""
    total = Fraction(0)
    for path in root_paths(t, v):
        prod = Fraction(1)
        for a, b in zip(path, path[1:]):
            prod *= k(a, b)
        total += 1 / prod
    return total


def path_weight_sums(t: Truncation, w: WeightSystem, v: Vertex) -> tuple[Fraction, Fraction]:
    """Sums over root paths of ``prod rho`` and of ``1 / prod rho``."""
    direct = inverse = Fraction(0)
    for path in root_paths(t, v):
        prod = Fraction(1)
        for a, b in zip(path, path[1:]):
            prod *= w.rho[(a, b)]
        direct += prod
        inverse += 1 / prod
    return direct, inverse
