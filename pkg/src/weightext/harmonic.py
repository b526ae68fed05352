"""Finite-depth coherent systems and their extended (power-scaling) counterparts.

A coherent system for a link ``kappa`` is a family of level distributions
``nu_n`` with ``nu_n(z') = sum_z nu_{n+1}(z) kappa(z, z')``.  Its extended
form lives on the weight-extended graph:

    nu~(z, gamma) = dim(z) / kdim(z) * nu(z) * gamma**beta

which is harmonic for the extended standard link when ``beta = -1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping

from .extension import ONE, ExtVertex, GroupElement, extend
from .graph import GraphError, Report, Truncation, Vertex
from .link import Link, LinkError, WeightSystem


class HarmonicError(ValueError):
    pass


@dataclass(frozen=True)
class CoherentSystem:
    """Level distributions ``levels[0..depth]``, zero values omitted."""

    levels: tuple[dict[Vertex, Fraction], ...]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def __call__(self, v: Vertex) -> Fraction:
        if v.level > self.depth:
            raise HarmonicError(f"level {v.level} beyond depth {self.depth}")
        return self.levels[v.level].get(v, Fraction(0))

    def support(self, n: int) -> list[Vertex]:
        return sorted(self.levels[n])

    def combine(self, lam: Fraction, other: CoherentSystem) -> CoherentSystem:
        """``lam * self + (1 - lam) * other``."""
        if other.depth != self.depth:
            raise HarmonicError("depths differ")
        out = []
        for a, b in zip(self.levels, other.levels):
            row = {}
            for v in sorted(set(a) | set(b)):
                val = lam * a.get(v, 0) + (1 - lam) * b.get(v, 0)
                if val:
                    row[v] = val
            out.append(row)
        return CoherentSystem(tuple(out))


def _clean(values: Mapping) -> dict:
    return {v: Fraction(x) for v, x in sorted(values.items()) if x != 0}


def pullback(t: Truncation, k: Link, top: Mapping[Vertex, Fraction]) -> CoherentSystem:
    """Transport a distribution on the top level down through ``kappa``."""
    top = {v: Fraction(x) for v, x in top.items()}
    N = t.top_level
    for v, x in top.items():
        if v not in t or v.level != N:
            raise HarmonicError(f"support outside truncation top level: {v}")
        if x < 0:
            raise HarmonicError(f"negative mass {x} at {v}")
    if sum(top.values(), Fraction(0)) != 1:
        raise HarmonicError("top distribution must sum to 1")
    levels = [_clean(top)]
    for _ in range(N):
        below: dict[Vertex, Fraction] = {}
        for z, x in levels[-1].items():
            for p, kv in k.row(z):
                below[p] = below.get(p, Fraction(0)) + x * kv
        levels.append(_clean(below))
    return CoherentSystem(tuple(reversed(levels)))


def check_harmonic(nu: CoherentSystem, k: Link) -> Report:
    rep = Report("harmonic")
    root = nu.levels[0]
    if len(root) != 1 or next(iter(root.values())) != 1:
        rep.fail(f"normalization failure at root: {root}")
    for n, row in enumerate(nu.levels):
        for v, x in row.items():
            if x < 0:
                rep.fail(f"negative value {x} at {v}")
        s = sum(row.values(), Fraction(0))
        if s != 1:
            rep.fail(f"level {n} sums to {s}")
    for n in range(nu.depth):
        pushed: dict[Vertex, Fraction] = {}
        for z, x in nu.levels[n + 1].items():
            if not k.row(z):
                rep.fail(f"no link row for {z}")
            for p, kv in k.row(z):
                pushed[p] = pushed.get(p, Fraction(0)) + x * kv
        for v in sorted(set(pushed) | set(nu.levels[n])):
            lhs = nu.levels[n].get(v, Fraction(0))
            rhs = pushed.get(v, Fraction(0))
            if lhs != rhs:
                rep.fail(f"harmonicity fails at {v}: ν = {lhs}, Σν·κ = {rhs}")
                break
    return rep


@dataclass(frozen=True)
class ExtendedHarmonic:
    """Values of a power-scaling harmonic function on a finite set of extended vertices.

    Values at unstored grades of a supported ``z`` follow from the scaling law
    ``nu~(z, gamma) = gamma**beta * nu~(z, 1)``; unsupported ``z`` give 0.
    """

    levels: tuple[dict[ExtVertex, Fraction], ...]
    beta: int = -1
    _anchor: dict[Vertex, ExtVertex] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        anchor = {}
        for row in self.levels:
            for v in sorted(row):
                if v.z not in anchor or v.gamma == ONE:
                    anchor[v.z] = v
        object.__setattr__(self, "_anchor", anchor)

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def z_support(self, n: int) -> list[Vertex]:
        return sorted({v.z for v in self.levels[n]})

    def value(self, z: Vertex, gamma: GroupElement = ONE) -> Fraction:
        if z.level > self.depth:
            raise HarmonicError(f"level {z.level} beyond depth {self.depth}")
        v = ExtVertex(z, gamma)
        row = self.levels[z.level]
        if v in row:
            return row[v]
        a = self._anchor.get(z)
        if a is None:
            return Fraction(0)
        return row[a] * (gamma / a.gamma).power_value(self.beta)

    def __call__(self, v: ExtVertex) -> Fraction:
        return self.value(v.z, v.gamma)


def _check_beta(beta: int, w: WeightSystem) -> int:
    if isinstance(beta, bool) or not isinstance(beta, int):
        raise HarmonicError(f"β must be an integer for exact γ**β, got {beta!r}")
    if beta != -1 and not w.trivial:
        raise HarmonicError(
            f"β = {beta} is incompatible with κ-dimensions of a non-trivial weight group; use β = -1"
        )
    return beta


def to_extended(nu: CoherentSystem, t: Truncation, w: WeightSystem, beta: int = -1) -> ExtendedHarmonic:
    """Map a coherent system to its extended harmonic function.

    Values are stored on the extension cone over the top-level support seeded
    at ``gamma = 1``, plus ``(z, 1)`` for every supported ``z``.
    """
    beta = _check_beta(beta, w)
    if not w.complete:
        raise LinkError("κ-dimension missing; to_extended needs exact κ-dimensions")
    top = [(z, ONE) for z in nu.support(nu.depth)]
    if not top:
        raise HarmonicError("empty coherent system")
    cone = extend(t, w, top)
    levels = []
    for n in range(nu.depth + 1):
        pts = set(cone.levels[n]) | {ExtVertex(z, ONE) for z in nu.levels[n]}
        row = {}
        for v in sorted(pts):
            x = nu(v.z)
            if x:
                row[v] = Fraction(t.dim(v.z)) / w.kappa_dim(v.z) * x * v.gamma.power_value(beta)
        levels.append(row)
    return ExtendedHarmonic(tuple(levels), beta)


def from_extended(nt: ExtendedHarmonic, t: Truncation, w: WeightSystem) -> CoherentSystem:
    """Inverse of :func:`to_extended`: ``nu(z) = kdim(z) / dim(z) * nu~(z, 1)``."""
    rep = _check_scaling(nt)
    if not rep.ok:
        raise HarmonicError(rep.errors[0])
    levels = []
    for n in range(nt.depth + 1):
        row = {}
        for z in nt.z_support(n):
            x = w.kappa_dim(z) / t.dim(z) * nt.value(z, ONE)
            if x:
                row[z] = x
        levels.append(row)
    nu = CoherentSystem(tuple(levels))
    root = nu.levels[0]
    if sum(root.values(), Fraction(0)) != 1:
        raise HarmonicError("normalization failure at root")
    return nu


def _check_scaling(nt: ExtendedHarmonic, rep: Report | None = None) -> Report:
    rep = rep or Report("extended")
    for row in nt.levels:
        base: dict[Vertex, Fraction] = {}
        for v in sorted(row):
            if row[v] < 0:
                rep.fail(f"negative value at {v}")
            at_one = row[v] / v.gamma.power_value(nt.beta)
            if v.z in base and base[v.z] != at_one:
                rep.fail(f"scaling law fails at {v}: γ^-β·ν~ = {at_one}, expected {base[v.z]}")
            base.setdefault(v.z, at_one)
    return rep


def check_extended(nt: ExtendedHarmonic, t: Truncation, w: WeightSystem) -> Report:
    """Harmonicity, scaling, root normalisation and the level-sum identity."""
    rep = Report("extended")
    _check_scaling(nt, rep)
    root_val = nt.value(t.root, ONE)
    if root_val != 1:
        rep.fail(f"normalization: ν~(root, 1) = {root_val}")
    for n in range(nt.depth):
        children_support = set(nt.z_support(n + 1))
        for v in sorted(nt.levels[n]):
            total = Fraction(0)
            for c in t.children(v.z):
                if c not in children_support:
                    continue
                g = v.gamma / GroupElement(w.rho[(c, v.z)])
                total += nt.value(c, g) * Fraction(t.dim(v.z), t.dim(c))
            if total != nt.levels[n][v]:
                rep.fail(f"harmonicity fails at {v}: ν~ = {nt.levels[n][v]}, Σ ν~·μ~ = {total}")
    for n in range(nt.depth + 1):
        s = sum(
            (w.kappa_dim(z) / t.dim(z) * nt.value(z, ONE) for z in nt.z_support(n)),
            Fraction(0),
        )
        if s != 1:
            rep.fail(f"level {n}: Σ (kdim/dim)·ν~(z,1) = {s} ≠ 1")
    return rep


def binomial_system(t: Truncation, p: Fraction, depth: int | None = None) -> CoherentSystem:
    """``nu(n, k) = C(n, k) p**k (1-p)**(n-k)`` on a Pascal truncation."""
    depth = t.top_level if depth is None else depth
    if depth > t.top_level:
        raise GraphError(f"truncation has no level {depth}")
    levels = []
    for n in range(depth + 1):
        row = {}
        for v in t.levels[n]:
            _, k = v.key
            x = comb(n, k) * p**k * (1 - p) ** (n - k)
            if x:
                row[v] = x
        levels.append(row)
    return CoherentSystem(tuple(levels))
