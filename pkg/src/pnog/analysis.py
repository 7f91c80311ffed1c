"""Occurrence-graph construction and queries.

The occurrence graph is the reachability graph of a net: one node per
reachable marking, one labeled edge per firing.  Construction is
breadth-first with a FIFO frontier and a fixed scan order (transitions in
net order), so node numbering, edge order, and the DOT rendering are stable
across runs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import InvalidNetError
from .netcore import (
    Marking,
    Pnog,
    disabled_reason,
    enabled_transitions,
    fire,
    format_marking,
    validate_net,
)


@dataclass
class OccurrenceGraph:
    """Reachable markings (in discovery order), the root, the fired edges,
    and whether the state budget cut discovery short."""

    root: Marking
    nodes: tuple[Marking, ...]
    edges: tuple[tuple[Marking, str, Marking], ...]
    truncated: bool


def build_occurrence_graph(net: Pnog, max_states: int = 10000
                           ) -> OccurrenceGraph:
    """Explore every firing from the initial marking, deduplicating markings
    by token-vector equality.

    At most ``max_states`` markings are kept; an edge whose target would
    exceed the budget is dropped and ``truncated`` is set.  The token sets
    are finite, so a large enough budget always yields the complete graph.
    """
    if max_states < 1:
        raise ValueError("max_states must be >= 1")
    violations = validate_net(net)
    if violations:
        raise InvalidNetError(violations)

    root = net.initial_marking
    order = [root]
    seen = {root}
    frontier = deque([root])
    edges: list[tuple[Marking, str, Marking]] = []
    truncated = False

    while frontier:
        m = frontier.popleft()
        for t in net.transitions:
            if disabled_reason(net, m, t) is not None:
                continue
            succ = fire(net, m, t)
            if succ not in seen:
                if len(seen) >= max_states:
                    truncated = True
                    continue
                seen.add(succ)
                order.append(succ)
                frontier.append(succ)
            edges.append((m, t, succ))

    return OccurrenceGraph(root=root, nodes=tuple(order),
                           edges=tuple(edges), truncated=truncated)


def find_deadlocks(og: OccurrenceGraph, net: Pnog) -> set[Marking]:
    """Discovered markings that enable nothing.

    Enabledness is re-checked against the net rather than read off the edge
    set, so nodes whose successors were dropped by truncation are not
    mistaken for deadlocks; markings never discovered are simply absent.
    """
    return {m for m in og.nodes if not enabled_transitions(net, m)}


def export_dot(og: OccurrenceGraph) -> str:
    """DOT text with nodes in discovery order, token vectors as labels, and
    the empty token drawn as ``_``.  Byte-stable for a given graph."""
    ids = {m: f"s{k}" for k, m in enumerate(og.nodes)}
    lines = ["digraph occurrence {"]
    for m in og.nodes:
        lines.append(f'  {ids[m]} [label="{format_marking(m)}"];')
    for src, t, dst in og.edges:
        lines.append(f'  {ids[src]} -> {ids[dst]} [label="{t}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
