import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weightext.extension import ONE, ExtVertex, GroupElement
from weightext.graph import GraphError
from weightext.harmonic import binomial_system, pullback
from weightext.k0 import (
    K0Element,
    K0Error,
    check_element,
    delta,
    embed_m_integer,
    embed_mu,
    embed_steps,
    equal_through,
    gamma_action,
    in_positive_cone,
    psi_from_state,
    psi_on_image,
    scale_by_dim,
    window_matrix,
    zero,
)
from weightext.selftest import random_top
from weightext.uq import GTGraph

from conftest import P, Q, S

F = Fraction


def qg(k: int) -> GroupElement:
    return GroupElement.of(Q, k)


def test_embed_mu_pascal(pascal4):
    t, _, w = pascal4
    img = embed_mu(delta(P(1, 0), ONE), t, w)
    assert [img(ExtVertex(P(2, k), ONE)) for k in range(3)] == [1, F(1, 2), 0]


def test_embed_mu_uq(uq2):
    t, _, w = uq2
    img = embed_mu(delta(S(1), ONE), t, w)
    assert img(ExtVertex(S(1, 1), ONE)) == 1
    assert img(ExtVertex(S(1, 0), qg(1))) == F(1, 2)
    assert img(ExtVertex(S(3, 0), qg(-1))) == F(1, 4)
    assert img(ExtVertex(S(3, 0), ONE)) == 0
    for v in img.candidates():
        assert v.gamma == qg(2 - sum(v.z.key))


def test_embed_zero(uq2):
    t, _, w = uq2
    assert embed_mu(zero(1), t, w).materialize().values == {}
    assert embed_m_integer(zero(1), t, w).materialize().values == {}


def test_query_outside_graph(uq2):
    t, _, w = uq2
    img = embed_mu(delta(S(1), ONE), t, w)
    with pytest.raises(GraphError, match="query outside graph"):
        img(ExtVertex(GTGraph.vertex((9, 0)), ONE))
    with pytest.raises(K0Error):
        img(ExtVertex(S(1), ONE))


def test_embed_m_integer(pascal4, uq2):
    t, _, w = pascal4
    h = scale_by_dim(delta(P(1, 0), ONE), t)
    img = embed_m_integer(h, t, w)
    assert [img(ExtVertex(P(2, k), ONE)) for k in range(3)] == [1, 1, 0]
    tu, _, wu = uq2
    assert embed_m_integer(delta(S(1), ONE), tu, wu)(ExtVertex(S(1, 1), ONE)) == 1
    with pytest.raises(K0Error, match="non-integer"):
        embed_m_integer(delta(S(1), ONE, F(1, 2)), tu, wu)


def test_cone_and_constraint(uq2):
    t, _, w = uq2
    assert in_positive_cone(delta(S(1, 0), ONE))
    assert not in_positive_cone(delta(S(1, 0), ONE, F(-1, 2)))
    assert check_element(delta(S(1, 0), ONE, F(1, 2)), t).ok
    assert not check_element(delta(S(1, 0), ONE, F(1, 3)), t).ok


def test_gamma_action(uq2):
    f = delta(S(1), ONE)
    assert gamma_action(f, ONE) == f
    assert gamma_action(f, qg(2)) == delta(S(1), qg(2))


def test_element_arithmetic():
    a, b = delta(S(1), ONE), delta(S(1), qg(1), 3)
    assert (a + b - a) == b
    assert (a - a).values == {}
    assert a.scale(4)(ExtVertex(S(1), ONE)) == 4
    with pytest.raises(K0Error):
        a + delta(S(1, 0), ONE)
    with pytest.raises(K0Error):
        K0Element(2, {ExtVertex(S(1), ONE): F(1)})


def test_embed_steps_and_equal_through(uq3):
    t, _, w = uq3
    f = delta(S(1), ONE)
    two = embed_steps(f, t, w, 2)
    assert two.level == 3
    assert check_element(two, t).ok
    assert equal_through(f, f, t, w, 2) == 0
    assert equal_through(f, delta(S(1), qg(1)), t, w, 2) is None


def test_window_matrix(uq2):
    t, _, w = uq2
    rows = [ExtVertex(S(1, 1), ONE), ExtVertex(S(1, 0), qg(1))]
    cols = [ExtVertex(S(1), ONE), ExtVertex(S(0), ONE)]
    assert window_matrix(t, w, rows, cols) == [[1, 0], [F(1, 2), 0]]
    assert window_matrix(t, w, rows, cols, integer=True) == [[1, 0], [1, 0]]


def test_psi_pascal(pascal4):
    t, k, w = pascal4
    nu = binomial_system(t, F(1, 3))
    psi = psi_from_state(nu, t, w)
    assert psi(delta(t.root, ONE)) == 1
    for z in t.vertices():
        assert psi(delta(z, ONE)) == nu(z)


def test_psi_uq(uq2):
    t, k, w = uq2
    nu = pullback(t, k, {S(1, 0): F(1, 2), S(2, 1): F(1, 2)})
    psi = psi_from_state(nu, t, w)
    for g in range(-2, 3):
        assert psi(delta(S(1, 0), qg(g))) == F(4, 5) * nu(S(1, 0)) * F(2) ** g
    f1, f2 = delta(S(1), qg(1)), delta(S(0), qg(-2), 3)
    assert psi(f1 + f2) == psi(f1) + psi(f2)
    with pytest.raises(K0Error, match="beyond"):
        psi(delta(GTGraph.vertex((1, 0, 0)), ONE))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_k0_invariants(uq3, seed):
    t, k, w = uq3
    rng = random.Random(seed)
    level = rng.randint(0, 2)
    vals = {}
    for z in rng.sample(list(t.levels[level]), min(3, len(t.levels[level]))):
        vals[ExtVertex(z, qg(rng.randint(-3, 3)))] = F(rng.randint(-4, 6), t.dim(z))
    f = K0Element(level, vals)
    g = qg(rng.randint(-3, 3))
    img = embed_mu(f, t, w).materialize()
    assert scale_by_dim(img, t) == embed_m_integer(scale_by_dim(f, t), t, w).materialize()
    assert check_element(img, t).ok
    if in_positive_cone(f):
        assert in_positive_cone(img)
    assert embed_mu(gamma_action(f, g), t, w).materialize() == gamma_action(img, g)
    psi = psi_from_state(pullback(t, k, random_top(rng, t)), t, w)
    assert psi(gamma_action(f, g)) == g.power_value(-1) * psi(f)
    assert psi(f) == psi_on_image(psi, f, t, w)
