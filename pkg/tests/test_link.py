import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weightext.graph import ExplicitGraph, PascalGraph, full_levels, root_paths, truncate
from weightext.io import graph_from_json
from weightext.link import (
    Link,
    LinkError,
    kappa_dim,
    kappa_dim_oracle,
    link_from_weights,
    path_weight_sums,
    standard_link,
    validate_link,
    weight_system,
    weights,
)
from weightext.selftest import random_graph_json

from conftest import P, S

F = Fraction


def test_standard_link_values(pascal4):
    t, k, _ = pascal4
    assert k(P(2, 1), P(1, 0)) == F(1, 2)
    assert k(P(2, 0), P(1, 0)) == 1
    assert k(P(1, 1), t.root) == 1
    assert validate_link(t, k).ok


def test_validate_link_row_sum():
    t = full_levels(PascalGraph(), 2)
    k = standard_link(t)
    kernel = dict(k.kernel)
    kernel[(P(2, 0), P(1, 0))] = F(1, 2)
    rep = validate_link(t, Link(kernel))
    assert "row sum 1/2 ≠ 1 at (2,0)" in rep.errors


def test_validate_link_support_mismatch():
    t = full_levels(PascalGraph(), 2)
    kernel = dict(standard_link(t).kernel)
    kernel[(P(2, 1), P(1, 0))] = F(0)
    kernel[(P(2, 1), P(1, 1))] = F(1)
    rep = validate_link(t, Link(kernel))
    assert any(e.startswith("support mismatch") for e in rep.errors)
    off_edge = dict(standard_link(t).kernel)
    off_edge[(P(2, 0), P(1, 1))] = F(0)
    assert any("non-edge" in e for e in validate_link(t, Link(off_edge)).errors)


def test_validate_link_rejects_multiplicity():
    g = ExplicitGraph([["r"], ["a"]], [("a", "r", 2)])
    t = full_levels(g, 1)
    rep = validate_link(t, standard_link(t))
    assert any("multiplicity 2" in e for e in rep.errors)
    with pytest.raises(LinkError):
        kappa_dim(t, standard_link(t))


def test_kappa_dim_pascal(pascal4):
    t, k, w = pascal4
    assert w.kdim[P(3, 1)] == 3
    assert w.kdim[t.root] == 1
    assert kappa_dim_oracle(t, k, P(2, 1)) == 4
    assert kappa_dim_oracle(t, k, t.root) == 1


def test_weights_pascal_trivial(pascal4):
    _, _, w = pascal4
    assert set(w.rho.values()) == {1}
    assert w.generators == (F(1),)
    assert w.trivial and w.base is None


def test_uq_weights(uq2):
    t, k, w = uq2
    assert k(S(1, 0), S(1)) == F(4, 5)
    assert k(S(1, 0), S(0)) == F(1, 5)
    assert w.kdim_sq[S(1, 0)] == F(25, 4) == kappa_dim_oracle(t, k, S(1, 0))
    assert w.kdim[S(1, 0)] == F(5, 2)
    assert w.rho[(S(1, 0), S(1))] == 2
    assert w.rho[(S(1, 0), S(0))] == F(1, 2)
    assert w.base == F(1, 2)
    assert list(w.generators) == sorted(w.generators)
    for z in t.levels[1]:
        assert w.rho[(z, t.root)] == w.kdim[z] == 1


def irrational_case():
    g = ExplicitGraph([["r"], ["a", "b"], ["c"]], [("a", "r", 1), ("b", "r", 1), ("c", "a", 1), ("c", "b", 1)])
    t = full_levels(g, 2)
    r, a, b, c = (g.lookup(x) for x in "rabc")
    k = Link({(a, r): F(1), (b, r): F(1), (c, a): F(1, 3), (c, b): F(2, 3)})
    return t, k, c


def test_irrational_kdim_is_partial_not_an_error():
    t, k, c = irrational_case()
    w = kappa_dim(t, k)
    assert w.kdim_sq[c] == F(9, 2)
    assert c not in w.kdim and not w.complete
    with pytest.raises(LinkError, match="κ-dimension irrational at c; use numeric backend"):
        w.kappa_dim(c)
    with pytest.raises(LinkError, match="κ-dimension irrational"):
        weights(t, k, w)


def test_link_from_weights_inverts(pascal4):
    t, k, w = pascal4
    again = link_from_weights(t, w.rho, w.kdim)
    assert again == k


def test_link_from_weights_bad_kdim_fails_validation(pascal4):
    t, _, w = pascal4
    kd = dict(w.kdim)
    kd[P(2, 1)] = F(3)
    assert not validate_link(t, link_from_weights(t, w.rho, kd)).ok


def test_three_formulas_uq(uq3):
    t, k, w = uq3
    for v in t.vertices():
        direct, recip = path_weight_sums(t, w, v)
        assert w.kdim[v] == direct == recip
        assert w.kdim[v] ** 2 == kappa_dim_oracle(t, k, v)
        if v.level:
            assert w.kdim[v] == sum(w.rho[(v, p)] * w.kdim[p] for p, _ in t.parents(v))


def test_telescoping(uq3):
    t, k, w = uq3
    for v in t.levels[3]:
        for path in root_paths(t, v):
            pk = pr = F(1)
            for a, b in zip(path, path[1:]):
                pk *= k(a, b)
                pr *= w.rho[(a, b)]
            assert pk == pr / w.kdim[v]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 5))
def test_standard_collapse_random(seed, depth):
    g = graph_from_json(random_graph_json(random.Random(seed), depth))
    t = full_levels(g, depth)
    w = weight_system(t, standard_link(t))
    assert all(w.kdim[v] == t.dim(v) for v in t.vertices())
    assert set(w.rho.values()) == {1}


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_kdim_sq_matches_oracle_on_random_links(seed):
    rng = random.Random(seed)
    g = graph_from_json(random_graph_json(rng, 4, max_width=3))
    t = full_levels(g, 4)
    kernel = {}
    for v in t.vertices():
        if v.level == 0:
            continue
        ps = [p for p, _ in t.parents(v)]
        raw = [rng.randint(1, 5) for _ in ps]
        for p, x in zip(ps, raw):
            kernel[(v, p)] = F(x, sum(raw))
    k = Link(kernel)
    w = kappa_dim(t, k)
    for v in t.vertices():
        assert w.kdim_sq[v] == kappa_dim_oracle(t, k, v)
        if v in w.kdim:
            assert w.kdim[v] ** 2 == w.kdim_sq[v]
