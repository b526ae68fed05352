"""The Gelfand-Tsetlin graph of non-negative signatures with q-deformed weights.

Level ``n`` holds the signatures ``lambda_1 >= ... >= lambda_n >= 0``; a
signature of length ``n + 1`` covers the length-``n`` signatures interlacing
it.  The edge weight is ``q ** (n|lambda| - (n+1)|lambda'|)`` and the
kappa-dimensions come out as principal specialisations of Schur polynomials,
``s_lambda(q^(n-1), q^(n-3), ..., q^(1-n))``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator

from .graph import GraphError, GraphProvider, Truncation, Vertex, truncate
from .rational import integer_log
from .link import Link, LinkError, WeightSystem, link_from_weights, validate_link, weight_system

Signature = tuple[int, ...]


def is_signature(lam: Signature) -> bool:
    return all(x >= 0 for x in lam) and all(a >= b for a, b in zip(lam, lam[1:]))


def _require_signature(lam: Signature) -> Signature:
    lam = tuple(lam)
    if not is_signature(lam):
        raise GraphError(f"not a non-negative signature: {lam}")
    return lam


def interlaces(inner: Signature, outer: Signature) -> bool:
    """``inner ≺ outer``: ``outer_1 >= inner_1 >= outer_2 >= ... >= inner_n >= outer_{n+1}``."""
    if len(outer) != len(inner) + 1:
        raise ValueError(f"length mismatch: {len(inner)} vs {len(outer)}")
    return all(outer[i] >= inner[i] >= outer[i + 1] for i in range(len(inner)))


def interlacing_below(lam: Signature) -> list[Signature]:
    """All length ``len(lam) - 1`` signatures interlacing ``lam``, in lexicographic order."""
    ranges = [range(lam[i + 1], lam[i] + 1) for i in range(len(lam) - 1)]
    return sorted(tuple(p) for p in product(*ranges))


def size(lam: Signature) -> int:
    return sum(lam)


def signatures(n: int, max_size: int) -> list[Signature]:
    """Signatures of length ``n`` with ``|lambda| <= max_size``, by size then lexicographically."""
    out = []

    def rec(prefix: list[int], remaining: int, cap: int) -> None:
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for x in range(min(cap, remaining), -1, -1):
            rec(prefix + [x], remaining - x, x)

    rec([], max_size, max_size)
    return sorted(out, key=lambda s: (size(s), s))


class GTGraph(GraphProvider):
    """Gelfand-Tsetlin branching graph; every level is infinite."""

    name = "uq"
    root = Vertex(0, ())

    def parents(self, v: Vertex) -> list[tuple[Vertex, int]]:
        lam = v.key
        if not isinstance(lam, tuple) or len(lam) != v.level or not is_signature(lam):
            raise GraphError(f"vertex not in graph: {v}")
        if v.level == 0:
            return []
        return [(Vertex(v.level - 1, p), 1) for p in interlacing_below(lam)]

    def children(self, v: Vertex) -> None:
        return None

    def level_vertices(self, n: int) -> Iterator[Vertex]:
        s = 0
        while True:
            for lam in signatures(n, s):
                if size(lam) == s:
                    yield Vertex(n, lam)
            if n == 0:
                return
            s += 1

    @staticmethod
    def vertex(lam: Iterable[int]) -> Vertex:
        lam = _require_signature(tuple(lam))
        return Vertex(len(lam), lam)


@lru_cache(maxsize=None)
def _gt_count(lam: Signature) -> int:
    if len(lam) <= 1:
        return 1
    return sum(_gt_count(p) for p in interlacing_below(lam))


def weyl_dim(lam: Signature) -> int:
    n = len(lam)
    num = den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


def gt_dim(lam: Signature) -> int:
    """Number of GT patterns with top row ``lam``, cross-checked by Weyl's product."""
    lam = _require_signature(lam)
    count = _gt_count(lam)
    w = weyl_dim(lam)
    if count != w:
        raise AssertionError(f"GT count {count} != Weyl product {w} for {lam}")
    return count


def _check_q(q: Fraction) -> Fraction:
    q = Fraction(q)
    if q <= 0 or q == 1:
        raise ValueError(f"q must be a positive rational different from 1, got {q}")
    return q


def weight_exponent(lam: Signature, inner: Signature) -> int:
    """``n|lambda| - (n+1)|lambda'|`` with ``n = len(lambda')``."""
    n = len(inner)
    return n * size(lam) - (n + 1) * size(inner)


def q_weight(lam: Signature, inner: Signature, q: Fraction) -> Fraction:
    q = _check_q(q)
    if not interlaces(inner, lam):
        raise ValueError(f"{inner} does not interlace {lam}")
    return q ** weight_exponent(lam, inner)


def gt_patterns(lam: Signature) -> Iterator[tuple[Signature, ...]]:
    """Every GT pattern with top row ``lam``, as rows from longest to empty."""
    if not lam:
        yield ((),)
        return
    for inner in interlacing_below(lam):
        for rest in gt_patterns(inner):
            yield (lam,) + rest


def q_schur_principal(lam: Signature, q: Fraction) -> Fraction:
    """``s_lambda(q^(n-1), q^(n-3), ..., q^(1-n))`` by explicit GT-pattern enumeration.

    Row ``i`` of a pattern (length ``i``) contributes ``x_i ** (|row_i| - |row_(i-1)|)``
    with ``x_i = q ** (n + 1 - 2i)``; for ``(1, 0)`` this gives ``q + 1/q``.
    """
    lam = _require_signature(lam)
    q = Fraction(q)
    n = len(lam)
    total = Fraction(0)
    for pattern in gt_patterns(lam):
        rows = pattern[::-1]
        e = sum((size(rows[i]) - size(rows[i - 1])) * (n + 1 - 2 * i) for i in range(1, n + 1))
        total += q**e
    return total


def uq_rho(t: Truncation, q: Fraction) -> dict[tuple[Vertex, Vertex], Fraction]:
    return {(c, p): q_weight(c.key, p.key, q) for (c, p) in sorted(t.edges)}


def recursive_kdim(t: Truncation, rho) -> dict[Vertex, Fraction]:
    """``kdim(z) = sum_{z'} rho(z, z') kdim(z')`` with ``kdim(root) = 1``."""
    out: dict[Vertex, Fraction] = {}
    for v in t.vertices():
        if v.level == 0:
            out[v] = Fraction(1)
        else:
            out[v] = sum((rho[(v, p)] * out[p] for p, _ in t.parents(v)), Fraction(0))
    return out


def build_uq(
    q: Fraction, seeds: Iterable[Signature | Vertex]
) -> tuple[Truncation, Link, WeightSystem]:
    """Truncation of the GT graph with its q-deformed link and weight system.

    The link is reconstructed from the closed-form weights; the generic
    kappa-dimension and weight computations are then rerun on it and must
    reproduce the same data.
    """
    q = _check_q(q)
    g = GTGraph()
    vs = [s if isinstance(s, Vertex) else GTGraph.vertex(s) for s in seeds]
    t = truncate(g, vs)
    rho = uq_rho(t, q)
    kd = recursive_kdim(t, rho)
    link = link_from_weights(t, rho, kd)
    rep = validate_link(t, link)
    if not rep.ok:
        raise LinkError("U_q link failed validation: " + "; ".join(rep.errors[:3]))
    w = weight_system(t, link)
    if w.kdim != kd:
        bad = next(v for v in kd if w.kdim.get(v) != kd[v])
        raise LinkError(f"κ-dimension mismatch at {bad}: {w.kdim.get(bad)} vs {kd[bad]}")
    if w.rho != rho:
        raise LinkError("recomputed weights differ from the closed-form weights")
    if w.base is not None and integer_log(w.base, canonical_q(q)) is None:
        raise LinkError(f"weight group base {w.base} is not a power of q = {q}")
    return t, link, w


def canonical_q(q: Fraction) -> Fraction:
    """The generator of ``q**Z`` lying in (0, 1)."""
    q = _check_q(q)
    return q if q < 1 else 1 / q


def uq_full(q: Fraction, n: int, max_size: int) -> tuple[Truncation, Link, WeightSystem]:
    """Truncation seeded by all length-``n`` signatures with ``|lambda| <= max_size``."""
    return build_uq(q, signatures(n, max_size))
