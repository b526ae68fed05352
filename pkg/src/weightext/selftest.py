"""Deterministic invariant suites with a machine-readable report.

Every suite draws its random choices from a ``random.Random`` seeded with a
fixed value, and the report holds no timings, so repeated runs are
byte-identical.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

from .extension import (
    ONE,
    ExtTruncation,
    ExtVertex,
    GroupElement,
    ext_dim,
    extend,
    is_isomorphic_to_base,
    m_tilde,
    mu_tilde,
    translate,
)
from .graph import PascalGraph, Truncation, full_levels, path_dim, validate
from .harmonic import CoherentSystem, binomial_system, check_extended, check_harmonic, from_extended, pullback, to_extended
from .io import graph_from_json
from .k0 import (
    K0Element,
    check_element,
    delta,
    embed_m_integer,
    embed_mu,
    gamma_action,
    in_positive_cone,
    psi_from_state,
    psi_on_image,
    scale_by_dim,
)
from .link import Link, WeightSystem, kappa_dim_oracle, path_weight_sums, standard_link, weight_system
from .rational import exact_sqrt, format_ratio
from .uq import build_uq, canonical_q, q_schur_principal, signatures, uq_full, weight_exponent

SEED = 20240611
Q_VALUES = (Fraction(1, 2), Fraction(2, 3), Fraction(3))
MAX_FAILURES = 5


@dataclass
class Tally:
    id: int
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    def check(self, ok: bool, msg: str | Callable[[], str]) -> bool:
        self.checks += 1
        if not ok:
            self.failures.append(msg() if callable(msg) else msg)
        return ok

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "passed": not self.failures and self.checks > 0,
            "checks": self.checks,
            "failures": self.failures[:MAX_FAILURES],
            "failure_count": len(self.failures),
        }


# fixtures


def random_graph_json(rng: random.Random, depth: int, max_width: int = 4) -> dict:
    """A random graded graph with simple edges, every vertex reaching the top level."""
    levels = [["r"]]
    for n in range(1, depth + 1):
        levels.append([f"v{n}_{i}" for i in range(rng.randint(1, max_width))])
    edges = set()
    for n in range(1, depth + 1):
        below, here = levels[n - 1], levels[n]
        for c in here:
            for p in rng.sample(below, rng.randint(1, len(below))):
                edges.add((c, p))
        for p in below:
            if not any((c, p) in edges for c in here):
                edges.add((rng.choice(here), p))
    return {
        "levels": levels,
        "edges": [{"child": c, "parent": p, "m": "1"} for c, p in sorted(edges)],
    }


def standard_cases() -> list[tuple[str, Truncation]]:
    rng = random.Random(SEED)
    cases = [("pascal-8", full_levels(PascalGraph(), 8))]
    for i in range(2):
        g = graph_from_json(random_graph_json(rng, depth=rng.randint(4, 6)))
        cases.append((f"random-{i}", full_levels(g, g.top_level)))
    return cases


def uq_cases() -> list[tuple[Fraction, Truncation, Link, WeightSystem]]:
    return [(q, *uq_full(q, 3, 4)) for q in Q_VALUES]


def top_cone(t: Truncation, w: WeightSystem) -> ExtTruncation:
    return extend(t, w, [(z, ONE) for z in t.levels[t.top_level]])


def sample_gamma(rng: random.Random, w: WeightSystem) -> GroupElement:
    if w.base is None:
        return ONE
    return GroupElement.of(w.base, rng.choice([k for k in range(-3, 4) if k]))


def random_top(rng: random.Random, t: Truncation) -> dict:
    top = list(t.levels[t.top_level])
    chosen = rng.sample(top, rng.randint(1, min(4, len(top))))
    mass = {z: rng.randint(1, 9) for z in chosen}
    total = sum(mass.values())
    return {z: Fraction(x, total) for z, x in mass.items()}


# suites


def suite_collapse() -> Tally:
    tal = Tally(1, "standard-link collapse")
    for name, t in standard_cases():
        tal.check(validate(t).ok, f"{name}: graph validation failed")
        w = weight_system(t, standard_link(t))
        for v in t.vertices():
            tal.check(w.kdim.get(v) == t.dim(v), lambda: f"{name}: kdim({v}) = {w.kdim.get(v)} ≠ dim {t.dim(v)}")
        for e, r in w.rho.items():
            tal.check(r == 1, lambda: f"{name}: ρ{e} = {r}")
        tal.check(w.generators == (Fraction(1),) and w.base is None, f"{name}: Γ ≠ {{1}}")
        tal.check(is_isomorphic_to_base(top_cone(t, w)), f"{name}: extension cone not isomorphic to base")
    return tal


def suite_kdim_triple() -> Tally:
    tal = Tally(2, "κ-dimension triple agreement")
    for q, t, k, w in uq_cases():
        for v in t.vertices():
            kd = w.kdim[v]
            direct, recip = path_weight_sums(t, w, v)
            root = exact_sqrt(kappa_dim_oracle(t, k, v))
            schur = q_schur_principal(v.key, q)
            tal.check(
                kd == direct == recip == root == schur,
                lambda: f"q={q} {v}: recursion {kd}, Σ∏ρ {direct}, Σ∏ρ⁻¹ {recip}, sqrt {root}, schur {schur}",
            )
    return tal


def _all_cones() -> list[tuple[str, ExtTruncation]]:
    cones = []
    for name, t in standard_cases():
        cones.append((name, top_cone(t, weight_system(t, standard_link(t)))))
    for q, t, _, w in uq_cases():
        cones.append((f"uq q={format_ratio(q)}", top_cone(t, w)))
    return cones


def suite_ext_dim() -> Tally:
    tal = Tally(3, "extension preserves dimensions")
    for name, x in _all_cones():
        for v in x.vertices():
            tal.check(ext_dim(x, v) == x.base.dim(v.z), lambda: f"{name}: ext_dim{v} = {ext_dim(x, v)}")
    return tal


def suite_translation() -> Tally:
    tal = Tally(4, "translation invariance of m~ and mu~")
    rng = random.Random(SEED + 4)
    for name, x in _all_cones():
        t, w = x.base, x.weights
        for _ in range(5):
            g = sample_gamma(rng, w)
            moved = translate(x, g)
            tal.check(
                moved == extend(t, w, [translate(v, g) for v in x.levels[-1]]),
                f"{name}: T_γ(cone) ≠ cone(T_γ seeds) for γ = {g}",
            )
            for n in range(1, len(x.levels)):
                for a in x.levels[n]:
                    for b in x.levels[n - 1]:
                        ta, tb = translate(a, g), translate(b, g)
                        tal.check(
                            m_tilde(t, w, a, b) == m_tilde(t, w, ta, tb)
                            and mu_tilde(t, w, a, b) == mu_tilde(t, w, ta, tb),
                            lambda: f"{name}: invariance fails on {a} → {b} for γ = {g}",
                        )
    return tal


def suite_grade_law() -> Tally:
    tal = Tally(5, "grade law and weight-group base")
    for q, t, _, w in uq_cases():
        tal.check(w.base == canonical_q(q), f"q={q}: detected base {w.base}")
        x = top_cone(t, w)
        for a, b in sorted(x.edges):
            diff = b.gamma.grade(q) - a.gamma.grade(q)
            tal.check(
                diff == weight_exponent(a.z.key, b.z.key),
                lambda: f"q={q}: edge {a} → {b} has grade step {diff}",
            )
    return tal


def _values_agree(a, b, pts) -> bool:
    return all(a(v) == b(v) for v in pts)


def suite_harmonic_correspondence() -> Tally:
    tal = Tally(6, "harmonic correspondence")
    rng = random.Random(SEED + 6)
    lam = Fraction(1, 3)
    tp = full_levels(PascalGraph(), 5)
    kp = standard_link(tp)
    tu, ku, wu = build_uq(Fraction(1, 2), signatures(5, 3))
    settings = [("pascal", tp, kp, weight_system(tp, kp)), ("uq", tu, ku, wu)]
    for name, t, k, w in settings:
        systems = [pullback(t, k, random_top(rng, t)) for _ in range(10)]
        exts = []
        for i, nu in enumerate(systems):
            tal.check(check_harmonic(nu, k).ok, f"{name}[{i}]: pullback not coherent")
            nt = to_extended(nu, t, w)
            exts.append(nt)
            rep = check_extended(nt, t, w)
            tal.check(rep.ok, lambda: f"{name}[{i}]: " + "; ".join(rep.errors[:2]))
            tal.check(from_extended(nt, t, w) == nu, f"{name}[{i}]: round trip is not the identity")
        for i in range(len(systems)):
            j = (i + 1) % len(systems)
            mixed = to_extended(systems[i].combine(lam, systems[j]), t, w)
            pts = set()
            for e in (mixed, exts[i], exts[j]):
                for row in e.levels:
                    pts |= set(row)
            tal.check(
                _values_agree(mixed, lambda v: lam * exts[i](v) + (1 - lam) * exts[j](v), sorted(pts)),
                f"{name}: affinity fails for systems {i}, {j}",
            )
    return tal


def suite_de_finetti() -> Tally:
    tal = Tally(7, "binomial coherent system")
    p = Fraction(1, 3)
    t = full_levels(PascalGraph(), 8)
    nu = binomial_system(t, p)
    for v in t.vertices():
        n, kk = v.key
        tal.check(nu(v) == comb(n, kk) * p**kk * (1 - p) ** (n - kk), f"binomial value at {v}")
    rep = check_harmonic(nu, standard_link(t))
    tal.check(rep.ok, lambda: "; ".join(rep.errors[:2]))
    return tal


def _random_cone_element(rng: random.Random, t: Truncation, w: WeightSystem, level: int) -> K0Element:
    vals = {}
    for z in rng.sample(list(t.levels[level]), min(3, len(t.levels[level]))):
        g = GroupElement.of(w.base, rng.randint(-2, 2))
        vals[ExtVertex(z, g)] = Fraction(rng.randint(1, 6), t.dim(z))
    return K0Element(level, vals)


def suite_k0() -> Tally:
    tal = Tally(8, "K0 window suite")
    rng = random.Random(SEED + 8)
    q = Fraction(1, 2)
    t, k, w = uq_full(q, 3, 4)
    elements = [
        delta(z, GroupElement.of(w.base, g)) for n in range(3) for z in t.levels[n] for g in (-1, 0, 2)
    ]
    elements += [_random_cone_element(rng, t, w, rng.randint(0, 2)) for _ in range(10)]
    elements += [e - _random_cone_element(rng, t, w, e.level) for e in elements[-5:]]
    for f in elements:
        img = embed_mu(f, t, w).materialize()
        lhs = scale_by_dim(img, t)
        rhs = embed_m_integer(scale_by_dim(f, t), t, w).materialize()
        tal.check(lhs == rhs, f"dim·ι(f) ≠ ι_m(dim·f) for {f.support}")
        tal.check(check_element(img, t).ok, f"image of {f.support} violates Z/dim")
        if in_positive_cone(f):
            tal.check(in_positive_cone(img), f"image of cone element {f.support} leaves the cone")
        g = sample_gamma(rng, w)
        tal.check(
            embed_mu(gamma_action(f, g), t, w).materialize() == gamma_action(img, g),
            f"ι does not commute with γ = {g} on {f.support}",
        )

    nu = pullback(t, k, random_top(rng, t))
    psi = psi_from_state(nu, t, w)
    tal.check(psi(delta(t.root, ONE)) == 1, "ψ(δ_(root,1)) ≠ 1")
    for _ in range(20):
        z = rng.choice([v for v in t.vertices()])
        f = delta(z, GroupElement.of(w.base, rng.randint(-3, 3)))
        g = sample_gamma(rng, w)
        tal.check(
            psi(gamma_action(f, g)) == g.power_value(psi.beta) * psi(f),
            f"ψ scaling fails for δ at {z}, γ = {g}",
        )
    for _ in range(10):
        f = _random_cone_element(rng, t, w, rng.randint(0, 2))
        tal.check(psi(f) == psi_on_image(psi, f, t, w), f"ψ(f) ≠ ψ(ι f) for {f.support}")
    return tal


SUITES: tuple[Callable[[], Tally], ...] = (
    suite_collapse,
    suite_kdim_triple,
    suite_ext_dim,
    suite_translation,
    suite_grade_law,
    suite_harmonic_correspondence,
    suite_de_finetti,
    suite_k0,
)


def _run(suite: Callable[[], Tally]) -> dict:
    try:
        return suite().to_dict()
    except Exception as exc:  # reported, not raised: the gate must list every suite
        tal = Tally(0, suite.__name__)
        tal.failures.append(f"{type(exc).__name__}: {exc}")
        return tal.to_dict()


def run_selftest(threads: int = 1) -> dict:
    """Run every suite; results are ordered by suite regardless of ``threads``."""
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run, SUITES))
    else:
        results = [_run(s) for s in SUITES]
    return {
        "seed": SEED,
        "passed": all(r["passed"] for r in results),
        "criteria": results,
    }
