import json
from fractions import Fraction

import pytest

from weightext import io
from weightext.extension import ONE, GroupElement, extend
from weightext.graph import full_levels
from weightext.harmonic import pullback, to_extended
from weightext.k0 import delta
from weightext.link import standard_link, validate_link

from conftest import Q, S

F = Fraction

GRAPH = {
    "levels": [["r"], ["a", "b"], ["c", "d"]],
    "edges": [
        {"child": "a", "parent": "r"},
        {"child": "b", "parent": "r", "m": "1"},
        {"child": "c", "parent": "a", "m": 1},
        {"child": "c", "parent": "b"},
        {"child": "d", "parent": "b"},
    ],
}


def test_graph_json_round_trip():
    g = io.graph_from_json(GRAPH)
    t = full_levels(g, 2)
    data = io.graph_to_json(t)
    assert data["dims"]["c"] == "2"
    again = full_levels(io.graph_from_json(data), 2)
    assert again.edges == t.edges
    assert json.loads(io.dumps(data)) == data


@pytest.mark.parametrize(
    "bad",
    [
        [],
        {"levels": "x"},
        {"levels": [[1]]},
        {"levels": [["r"], ["a"]], "edges": [{"child": "a"}]},
        {"levels": [["r"], ["a"]], "edges": [{"child": "a", "parent": "r", "m": "x"}]},
        {"levels": [["r"], ["a"]], "edges": [{"child": "a", "parent": "zz"}]},
    ],
)
def test_graph_schema_errors(bad):
    with pytest.raises(io.SchemaError):
        io.graph_from_json(bad)


def test_read_json_malformed(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    with pytest.raises(io.SchemaError, match="malformed"):
        io.read_json(p)


def test_link_round_trip(uq2):
    t, k, _ = uq2
    data = io.link_to_json(k)
    assert {"child": "(1,0)", "parent": "(1)", "kappa": "4/5"} in data["edges"]
    assert io.link_from_json(data, t) == k


def test_link_schema_errors():
    t = full_levels(io.graph_from_json(GRAPH), 2)
    with pytest.raises(io.SchemaError):
        io.link_from_json({"edges": [{"child": "a", "parent": "r", "kappa": "0.5"}]}, t)
    with pytest.raises(io.SchemaError, match="unknown vertex"):
        io.link_from_json({"edges": [{"child": "x", "parent": "r", "kappa": "1"}]}, t)
    k = io.link_from_json(io.link_to_json(standard_link(t)), t)
    assert validate_link(t, k).ok


def test_weights_json(uq2):
    _, _, w = uq2
    data = io.weights_to_json(w)
    assert data["kdim"]["(1,0)"] == "5/2"
    assert data["base"] == "1/2"
    assert data["generators"] == sorted(data["generators"], key=Fraction)


def test_ext_json_and_dot(uq2):
    t, _, w = uq2
    x = extend(t, w, [(S(1, 0), ONE)])
    data = io.ext_to_json(x, Q)
    assert {"z": "()", "gamma": "2", "grade": -1, "dim": "1"} in data["levels"][0]
    dot = io.ext_dot(x)
    assert dot.startswith("digraph") and '"((1,0), 1)" -> "((1), 2)"' in dot


def test_truncation_dot(pascal4):
    t, _, _ = pascal4
    dot = io.truncation_dot(t)
    assert '"(2,1)" -> "(1,0)";' in dot


def test_coherent_round_trip(uq2):
    t, k, w = uq2
    nu = pullback(t, k, {S(1, 0): F(1, 3), S(2, 1): F(2, 3)})
    data = io.coherent_to_json(nu)
    assert data["depth"] == 2
    assert io.coherent_from_json(json.loads(io.dumps(data)), t) == nu
    with pytest.raises(io.SchemaError, match="level"):
        io.coherent_from_json({"levels": [{"(1)": "1"}]}, t)


def test_extended_round_trip(uq2):
    t, k, w = uq2
    nt = to_extended(pullback(t, k, {S(1, 0): F(1)}), t, w)
    data = io.extended_to_json(nt, Q)
    assert data["beta"] == -1
    back = io.extended_from_json(json.loads(io.dumps(data)), t, Q)
    assert back.levels == nt.levels


def test_k0_round_trip(uq2):
    t, _, _ = uq2
    f = delta(S(1, 0), ONE, F(1, 2)) + delta(S(2, 0), ONE, F(2, 3))
    data = io.k0_to_json(f, Q)
    assert io.k0_from_json(data, t, Q) == f
    by_grade = {"level": 2, "values": [{"z": "(1,0)", "grade": 1, "value": "1/2"}]}
    assert io.k0_from_json(by_grade, t, Q) == delta(S(1, 0), GroupElement(Q), F(1, 2))
    with pytest.raises(io.SchemaError):
        io.k0_from_json({"level": 1, "values": [{"z": "(1,0)", "gamma": "1", "value": "1"}]}, t)
