"""Seeded random generators for graphs, formulas, and nets.

Each generator builds a plain declaration spec first; tests hand the same
spec to the library builders and to the oracles so both sides see identical
input through disjoint code paths.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from pnog import (
    EQUIV_TO,
    INSTANCE_OF,
    SUBCLASS_OF,
    Formula,
    FormulaKind,
    NetKind,
    OntologicalGraph,
    Pnog,
    build_graph,
)

FORMULA_SHAPES = ("bare", "singleton", "equiv", "subtree")

_SHAPE_TO_KIND = {
    "bare": FormulaKind.BARE,
    "singleton": FormulaKind.SINGLETON,
    "equiv": FormulaKind.EQUIV_CLASS,
    "subtree": FormulaKind.SUBTREE,
}


@dataclass
class GraphSpec:
    name: str
    concepts: list[str]
    instances: list[str]
    subclass: list[tuple[str, str]] = field(default_factory=list)  # child, parent
    equiv: list[tuple[str, str]] = field(default_factory=list)
    inst_of: list[tuple[str, str]] = field(default_factory=list)   # instance, concept
    relations: list[tuple[str, str, str]] = field(default_factory=list)


@dataclass
class NetSpec:
    name: str
    kind: str                                  # CMPNOG | IMPNOG
    places: list[str]
    transitions: list[str]
    binding: dict[str, str]
    graphs: dict[str, GraphSpec]
    in_arcs: dict[tuple[str, str], tuple[str, str]]  # (p,t) -> (shape, concept)
    out_arcs: dict[tuple[str, str], str]             # (t,p) -> term
    m0: tuple


def build_graph_from_spec(gs: GraphSpec) -> OntologicalGraph:
    edges = ([(a, SUBCLASS_OF, b) for a, b in gs.subclass]
             + [(a, EQUIV_TO, b) for a, b in gs.equiv]
             + [(i, INSTANCE_OF, c) for i, c in gs.inst_of]
             + [(a, label, b) for label, a, b in gs.relations])
    return build_graph(gs.name, gs.concepts, gs.instances, edges)


def build_net_from_spec(ns: NetSpec) -> Pnog:
    return Pnog(
        name=ns.name,
        kind=NetKind(ns.kind),
        places=tuple(ns.places),
        transitions=tuple(ns.transitions),
        graph_binding=dict(ns.binding),
        graphs={alias: build_graph_from_spec(gs)
                for alias, gs in ns.graphs.items()},
        input_arcs={key: Formula(_SHAPE_TO_KIND[shape], concept)
                    for key, (shape, concept) in ns.in_arcs.items()},
        output_arcs=dict(ns.out_arcs),
        initial_marking=tuple(ns.m0),
    )


def random_graph_spec(rng: random.Random, *, name="g",
                      max_concepts=8, max_instances=6, max_edges=24,
                      min_concepts=0) -> GraphSpec:
    """A valid random graph: the declared subclass relation is kept acyclic
    by only drawing child -> parent pairs along one fixed concept order."""
    n = rng.randint(min_concepts, max_concepts)
    concepts = [f"C{k}" for k in range(n)]
    m = rng.randint(0, max_instances)
    instances = [f"i{k}" for k in range(m)]

    budget = rng.randint(0, max_edges)
    subclass, equiv, inst_of, relations = [], [], [], []
    seen = set()
    for _ in range(budget):
        roll = rng.random()
        if roll < 0.55 and n >= 2:
            parent_pos = rng.randrange(n - 1)
            child_pos = rng.randrange(parent_pos + 1, n)
            pair = (concepts[child_pos], concepts[parent_pos])
            if ("sub", pair) not in seen:
                seen.add(("sub", pair))
                subclass.append(pair)
        elif roll < 0.70 and n >= 2:
            a, b = rng.sample(concepts, 2)
            pair = tuple(sorted((a, b)))
            if ("eq", pair) not in seen:
                seen.add(("eq", pair))
                equiv.append((a, b))
        elif roll < 0.95 and m >= 1 and n >= 1:
            pair = (rng.choice(instances), rng.choice(concepts))
            if ("inst", pair) not in seen:
                seen.add(("inst", pair))
                inst_of.append(pair)
        elif n >= 2:
            label = rng.choice(("requires", "partOf", "relatedTo"))
            a, b = rng.sample(concepts, 2)
            triple = (label, a, b)
            if ("rel", triple) not in seen:
                seen.add(("rel", triple))
                relations.append(triple)
    return GraphSpec(name=name, concepts=concepts, instances=instances,
                     subclass=subclass, equiv=equiv, inst_of=inst_of,
                     relations=relations)


def random_formula(rng: random.Random, concepts) -> Formula:
    shape = rng.choice(FORMULA_SHAPES)
    return Formula(_SHAPE_TO_KIND[shape], rng.choice(list(concepts)))


def random_identifier(rng: random.Random) -> str:
    first = rng.choice("abcdefghijkABCXYZ")
    rest = "".join(rng.choice("abcXYZ_019")
                   for _ in range(rng.randint(0, 8)))
    return first + rest


def random_net_spec(rng: random.Random, *, name="n") -> NetSpec:
    """A random valid net: formulas resolve in the bound graph, output terms
    are legal for the net kind, and the initial marking is well typed."""
    kind = rng.choice(("CMPNOG", "IMPNOG"))
    graphs = {}
    for k in range(rng.randint(1, 2)):
        alias = f"g{k}"
        graphs[alias] = random_graph_spec(
            rng, name=alias, max_concepts=8, max_instances=6,
            min_concepts=1)
    aliases = list(graphs)

    places = [f"p{k}" for k in range(rng.randint(1, 4))]
    transitions = [f"t{k}" for k in range(rng.randint(1, 5))]
    binding = {p: rng.choice(aliases) for p in places}

    def concept_pool(alias):
        return graphs[alias].concepts

    in_arcs = {}
    for p in places:
        for t in transitions:
            if rng.random() < 0.45:
                shape = rng.choice(FORMULA_SHAPES)
                pool = concept_pool(binding[p]) + (["TOP"]
                                                   if shape == "subtree"
                                                   else [])
                in_arcs[(p, t)] = (shape, rng.choice(pool))

    out_arcs = {}
    for t in transitions:
        for p in places:
            if rng.random() < 0.45:
                gs = graphs[binding[p]]
                if kind == "CMPNOG":
                    out_arcs[(t, p)] = rng.choice(gs.concepts)
                elif gs.instances:
                    out_arcs[(t, p)] = rng.choice(gs.instances)

    m0 = []
    for p in places:
        gs = graphs[binding[p]]
        pool = gs.concepts if kind == "CMPNOG" else gs.instances
        if pool and rng.random() < 0.6:
            m0.append(rng.choice(pool))
        else:
            m0.append(None)

    return NetSpec(name=name, kind=kind, places=places,
                   transitions=transitions, binding=binding, graphs=graphs,
                   in_arcs=in_arcs, out_arcs=out_arcs, m0=tuple(m0))


def random_marking(rng: random.Random, ns: NetSpec) -> tuple:
    """A uniformly random well-typed marking for the net."""
    tokens = []
    for p in ns.places:
        gs = ns.graphs[ns.binding[p]]
        pool = gs.concepts if ns.kind == "CMPNOG" else gs.instances
        choices = [None] + list(pool)
        tokens.append(rng.choice(choices))
    return tuple(tokens)
