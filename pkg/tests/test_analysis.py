import re

import pytest

from pnog import (
    Formula,
    InvalidNetError,
    NetKind,
    Pnog,
    build_occurrence_graph,
    enabled,
    export_dot,
    find_deadlocks,
    fire,
    format_marking,
)

from conftest import SAMPLES, samples_loader
from generators import random_net_spec, build_net_from_spec
from oracles import OracleNet
import random

M0 = ("p1", None, None, None)
GOLDEN_PATH = [
    (M0, "tr2", ("p1", "passport", None, None)),
    (("p1", "passport", None, None), "tr3", ("p1", "passport", "visa", None)),
    (("p1", "passport", "visa", None), "tr5", ("p1", None, None, "admission")),
]


def airport_spec():
    """The sample net as a generator spec, for the oracle side."""
    from generators import GraphSpec, NetSpec
    og1 = GraphSpec(
        name="og1",
        concepts=["Passenger", "Visa_passenger", "Non_visa_passenger",
                  "Schengen_passenger"],
        instances=["p1"],
        subclass=[("Visa_passenger", "Passenger"),
                  ("Non_visa_passenger", "Passenger"),
                  ("Schengen_passenger", "Passenger")],
        inst_of=[("p1", "Visa_passenger")])
    og2 = GraphSpec(
        name="og2", concepts=["Document"],
        instances=["identity_card", "passport", "visa", "admission"],
        inst_of=[(i, "Document") for i in
                 ("identity_card", "passport", "visa", "admission")])
    return NetSpec(
        name="airport", kind="IMPNOG",
        places=["pl1", "pl2", "pl3", "pl4"],
        transitions=["tr1", "tr2", "tr3", "tr4", "tr5"],
        binding={"pl1": "og1", "pl2": "og2", "pl3": "og2", "pl4": "og2"},
        graphs={"og1": og1, "og2": og2},
        in_arcs={("pl1", "tr1"): ("bare", "Schengen_passenger"),
                 ("pl1", "tr2"): ("bare", "Passenger"),
                 ("pl1", "tr3"): ("bare", "Visa_passenger"),
                 ("pl1", "tr4"): ("bare", "Non_visa_passenger"),
                 ("pl2", "tr4"): ("bare", "Document"),
                 ("pl2", "tr5"): ("bare", "Document"),
                 ("pl3", "tr5"): ("bare", "Document")},
        out_arcs={("tr1", "pl1"): "p1", ("tr2", "pl1"): "p1",
                  ("tr3", "pl1"): "p1", ("tr1", "pl2"): "identity_card",
                  ("tr2", "pl2"): "passport", ("tr3", "pl3"): "visa",
                  ("tr4", "pl4"): "admission", ("tr5", "pl4"): "admission"},
        m0=("p1", None, None, None))


def test_complete_graph_matches_enumeration_oracle(airport):
    og = build_occurrence_graph(airport, max_states=10000)
    nodes_oracle, edges_oracle = OracleNet(airport_spec()).enumerate_reachable()
    assert not og.truncated
    assert set(og.nodes) == nodes_oracle
    assert set(og.edges) == edges_oracle
    assert len(og.nodes) == len(nodes_oracle)
    assert len(og.edges) == len(edges_oracle)


def test_golden_path_is_root_anchored(airport):
    og = build_occurrence_graph(airport, max_states=10000)
    assert og.root == M0
    assert og.nodes[0] == M0
    edge_set = set(og.edges)
    for step in GOLDEN_PATH:
        assert step in edge_set


def test_every_edge_is_sound(airport):
    og = build_occurrence_graph(airport, max_states=10000)
    for src, t, dst in og.edges:
        assert enabled(airport, src, t)
        assert fire(airport, src, t) == dst


def test_empty_net_graph():
    net = Pnog(name="void", kind=NetKind.CMPNOG, places=(), transitions=(),
               graph_binding={}, graphs={}, input_arcs={}, output_arcs={},
               initial_marking=())
    og = build_occurrence_graph(net, max_states=10)
    assert og.nodes == ((),)
    assert og.edges == ()
    assert not og.truncated
    assert find_deadlocks(og, net) == {()}  # vacuously deadlocked


def test_truncation_at_two_states(airport):
    og = build_occurrence_graph(airport, max_states=2)
    assert og.truncated
    assert len(og.nodes) == 2
    assert og.nodes[0] == M0
    assert og.nodes[1] == ("p1", "passport", None, None)  # first successor


def test_budget_always_respected(airport):
    for budget in (1, 3, 5, 8, 50):
        og = build_occurrence_graph(airport, max_states=budget)
        assert len(og.nodes) <= budget
        assert og.truncated == (budget < 8)


def test_invalid_net_is_rejected(airport):
    bad = dict(airport.output_arcs)
    bad[("tr4", "pl4")] = "Document"
    net = Pnog(name=airport.name, kind=airport.kind, places=airport.places,
               transitions=airport.transitions,
               graph_binding=airport.graph_binding, graphs=airport.graphs,
               input_arcs=airport.input_arcs, output_arcs=bad,
               initial_marking=airport.initial_marking)
    with pytest.raises(InvalidNetError):
        build_occurrence_graph(net, max_states=10)


def test_deadlocks_complete_graph(airport):
    og = build_occurrence_graph(airport, max_states=10000)
    spec_oracle = OracleNet(airport_spec())
    expected = {m for m in set(og.nodes)
                if not any(spec_oracle.enabled(m, t)
                           for t in airport.transitions)}
    found = find_deadlocks(og, airport)
    assert found == expected == {("p1", "passport", "visa", "admission")}
    assert ("p1", None, None, "admission") not in found


def test_deadlocks_on_truncated_graph_are_confirmed_only(airport):
    og = build_occurrence_graph(airport, max_states=3)
    assert og.truncated
    for m in find_deadlocks(og, airport):
        assert not any(enabled(airport, m, t) for t in airport.transitions)
    # the dead marking is not discovered within this budget
    assert find_deadlocks(og, airport) == set()


def test_dot_single_node():
    net = Pnog(name="void", kind=NetKind.CMPNOG, places=(), transitions=(),
               graph_binding={}, graphs={}, input_arcs={}, output_arcs={},
               initial_marking=())
    dot = export_dot(build_occurrence_graph(net, max_states=10))
    assert dot == 'digraph occurrence {\n  s0 [label="()"];\n}\n'


def test_dot_statement_counts_and_stability(airport):
    og = build_occurrence_graph(airport, max_states=10000)
    dot = export_dot(og)
    assert dot == export_dot(build_occurrence_graph(airport, max_states=10000))
    node_stmts = re.findall(r'^\s+s\d+ \[label="[^"]*"\];$', dot, re.M)
    edge_stmts = re.findall(r'^\s+s\d+ -> s\d+ \[label="[^"]*"\];$', dot, re.M)
    assert len(node_stmts) == len(og.nodes)
    assert len(edge_stmts) == len(og.edges)
    assert dot.startswith("digraph occurrence {") and dot.endswith("}\n")
    assert format_marking(og.root) in dot


def test_random_nets_match_enumeration_oracle():
    rng = random.Random(616)
    for _ in range(25):
        spec = random_net_spec(rng)
        net = build_net_from_spec(spec)
        og = build_occurrence_graph(net, max_states=100000)
        assert not og.truncated
        nodes_oracle, edges_oracle = OracleNet(spec).enumerate_reachable()
        assert set(og.nodes) == nodes_oracle
        assert set(og.edges) == edges_oracle
