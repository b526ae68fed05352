"""Finite windows of the dimension group of the weight-extended graph.

A level-``n`` element is a finitely supported function ``f`` on extended
vertices with ``dim(z) * f(z, gamma)`` an integer.  Levels are linked by the
extended standard link,

    (iota f)(z, gamma) = sum over parents (z', gamma') of mu~ * f(z', gamma'),

whose matrix has finite columns but infinite rows, so images are evaluated
on demand and only materialised on finite windows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .extension import ExtVertex, GroupElement, ext_parents
from .graph import GraphError, Report, Truncation, Vertex
from .harmonic import CoherentSystem, ExtendedHarmonic, HarmonicError, to_extended
from .link import WeightSystem


class K0Error(ValueError):
    pass


@dataclass(frozen=True)
class K0Element:
    level: int
    values: dict[ExtVertex, Fraction]

    def __post_init__(self) -> None:
        vals = {}
        for v, x in sorted(self.values.items()):
            if v.level != self.level:
                raise K0Error(f"{v} is not at level {self.level}")
            if x:
                vals[v] = Fraction(x)
        object.__setattr__(self, "values", vals)

    def __call__(self, v: ExtVertex) -> Fraction:
        return self.values.get(v, Fraction(0))

    def __add__(self, other: K0Element) -> K0Element:
        if other.level != self.level:
            raise K0Error("levels differ")
        vals = dict(self.values)
        for v, x in other.values.items():
            vals[v] = vals.get(v, Fraction(0)) + x
        return K0Element(self.level, vals)

    def __neg__(self) -> K0Element:
        return K0Element(self.level, {v: -x for v, x in self.values.items()})

    def __sub__(self, other: K0Element) -> K0Element:
        return self + (-other)

    def scale(self, c: int | Fraction) -> K0Element:
        return K0Element(self.level, {v: c * x for v, x in self.values.items()})

    @property
    def support(self) -> list[ExtVertex]:
        return list(self.values)


def delta(z: Vertex, gamma: GroupElement, coeff: int | Fraction = 1) -> K0Element:
    return K0Element(z.level, {ExtVertex(z, gamma): Fraction(coeff)})


def zero(level: int) -> K0Element:
    return K0Element(level, {})


def check_element(f: K0Element, t: Truncation) -> Report:
    """Denominator constraint: every value lies in ``Z / dim(z)``."""
    rep = Report("k0-element")
    for v, x in f.values.items():
        if v.z not in t:
            rep.fail(f"{v.z} not in truncation")
            continue
        if (x * t.dim(v.z)).denominator != 1:
            rep.fail(f"value {x} at {v} not in Z/{t.dim(v.z)}")
    return rep


def scale_by_dim(f: K0Element, t: Truncation) -> K0Element:
    """``h = dim * f``, an integer-valued function."""
    return K0Element(f.level, {v: x * t.dim(v.z) for v, x in f.values.items()})


def in_positive_cone(f: K0Element) -> bool:
    return all(x >= 0 for x in f.values.values())


def gamma_action(f: K0Element, gamma: GroupElement) -> K0Element:
    """``(gamma . f)(z, g) = f(z, g / gamma)``: translate the support by ``gamma``."""
    return K0Element(f.level, {ExtVertex(v.z, gamma * v.gamma): x for v, x in f.values.items()})


class K0Image:
    """Lazily evaluated image of a level-``n`` element at level ``n + 1``."""

    def __init__(
        self,
        source: K0Element,
        t: Truncation,
        w: WeightSystem,
        coeff: Callable[[ExtVertex, ExtVertex], Fraction],
    ):
        self.source = source
        self.level = source.level + 1
        self._t = t
        self._w = w
        self._coeff = coeff

    def __call__(self, v: ExtVertex) -> Fraction:
        if v.level != self.level:
            raise K0Error(f"query {v} is not at level {self.level}")
        if v.z not in self._t:
            raise GraphError(f"query outside graph: {v.z}")
        total = Fraction(0)
        for p in ext_parents(self._t, self._w, v):
            x = self.source(p)
            if x:
                total += self._coeff(v, p) * x
        return total

    def candidates(self, zs: Iterable[Vertex] | None = None) -> list[ExtVertex]:
        """Extended vertices of the truncation where the image can be non-zero.

        Restricted to base vertices ``zs`` when given.
        """
        keep = None if zs is None else set(zs)
        out = set()
        for s in self.source.values:
            for c in self._t.children(s.z):
                if keep is not None and c not in keep:
                    continue
                out.add(ExtVertex(c, s.gamma / GroupElement(self._w.rho[(c, s.z)])))
        return sorted(out)

    def materialize(self, window: Iterable[ExtVertex] | None = None) -> K0Element:
        """Evaluate on ``window`` (default: every candidate point in the truncation)."""
        pts = self.candidates() if window is None else sorted(set(window))
        return K0Element(self.level, {v: self(v) for v in pts})


def embed_mu(f: K0Element, t: Truncation, w: WeightSystem) -> K0Image:
    return K0Image(f, t, w, lambda a, b: Fraction(t.dim(b.z), t.dim(a.z)))


def embed_m_integer(h: K0Element, t: Truncation, w: WeightSystem) -> K0Image:
    """Image under the integer matrix of extended multiplicities (all 0 or 1)."""
    for v, x in h.values.items():
        if x.denominator != 1:
            raise K0Error(f"non-integer input {x} at {v}")
    return K0Image(h, t, w, lambda a, b: Fraction(1))


def embed_steps(f: K0Element, t: Truncation, w: WeightSystem, steps: int) -> K0Element:
    """Iterate :func:`embed_mu`, materialising each level on the whole truncation."""
    for _ in range(steps):
        if f.level >= t.top_level:
            raise K0Error(f"truncation has no level {f.level + 1}")
        f = embed_mu(f, t, w).materialize()
    return f


def equal_through(
    f: K0Element, g: K0Element, t: Truncation, w: WeightSystem, steps: int
) -> int | None:
    """Smallest ``d <= steps`` at which the ``d``-fold embeddings agree, else None."""
    if f.level != g.level:
        raise K0Error("levels differ")
    for d in range(steps + 1):
        if (f - g).values == {}:
            return d
        if f.level >= t.top_level:
            return None
        f = embed_mu(f, t, w).materialize()
        g = embed_mu(g, t, w).materialize()
    return None


@dataclass(frozen=True)
class K0Functional:
    """Additive functional ``psi(f) = sum nu~(z, gamma) f(z, gamma)``."""

    source: ExtendedHarmonic

    @property
    def beta(self) -> int:
        return self.source.beta

    def __call__(self, f: K0Element) -> Fraction:
        return psi_eval(self, f)


def psi_eval(psi: K0Functional, f: K0Element) -> Fraction:
    if f.level > psi.source.depth:
        raise K0Error(f"level {f.level} beyond stored depth {psi.source.depth}")
    try:
        return sum((psi.source(v) * x for v, x in f.values.items()), Fraction(0))
    except HarmonicError as exc:
        raise K0Error(str(exc)) from exc


def psi_from_state(nu: CoherentSystem, t: Truncation, w: WeightSystem, beta: int = -1) -> K0Functional:
    return K0Functional(to_extended(nu, t, w, beta))


def psi_on_image(psi: K0Functional, f: K0Element, t: Truncation, w: WeightSystem) -> Fraction:
    """``sum nu~ * (iota f)`` over the level-``n+1`` support of ``nu~``."""
    img = embed_mu(f, t, w)
    pts = img.candidates(psi.source.z_support(f.level + 1))
    return sum((psi.source(v) * img(v) for v in pts), Fraction(0))


def window_matrix(
    t: Truncation,
    w: WeightSystem,
    rows: Iterable[ExtVertex],
    cols: Iterable[ExtVertex],
    integer: bool = False,
) -> list[list[Fraction]]:
    """Finite block of the embedding matrix (mu~ or, with ``integer``, m~)."""
    rows, cols = list(rows), list(cols)
    out = []
    for a in rows:
        parents = set(ext_parents(t, w, a))
        line = []
        for b in cols:
            if b in parents:
                line.append(Fraction(1) if integer else Fraction(t.dim(b.z), t.dim(a.z)))
            else:
                line.append(Fraction(0))
        out.append(line)
    return out

