"""Net structure, structural validation, enabling and firing semantics, and
trace execution.

A net carries one token per place.  In a concept-marked net (CMPNOG) tokens
are concepts of the place's graph; in an instance-marked net (IMPNOG) they
are instances.  The empty token (the bottom concept for CMPNOG, the empty
instance for IMPNOG) is represented as ``None`` in markings; the reserved
ids BOT/EPS are normalized to ``None`` on net construction.

A transition is enabled when every input place holds a token satisfying the
arc formula and every pure output place is empty.  A place that is both
input and output of the same transition (a self loop) is exempt from the
emptiness requirement: it must satisfy the input condition and receives the
output term when the transition fires.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    NotEnabledError,
    ScriptStepNotEnabledError,
    UnknownTransitionError,
)
from .formula import Formula, FormulaKind, denote, format_formula
from .ontograph import BOT, EPS, OntologicalGraph

# one entry per place, in net place order; None is the empty token
Marking = tuple


class NetKind(Enum):
    CMPNOG = "CMPNOG"
    IMPNOG = "IMPNOG"


@dataclass
class Pnog:
    """A Petri net over ontological graphs.

    ``graph_binding`` maps each place to the alias of its graph in
    ``graphs``; ``input_arcs`` maps (place, transition) to a formula;
    ``output_arcs`` maps (transition, place) to an output term, which is a
    concept id for CMPNOG and an instance id for IMPNOG.  ``graph_paths``
    remembers where each alias was loaded from, for serialization only.
    """

    name: str
    kind: NetKind
    places: tuple[str, ...]
    transitions: tuple[str, ...]
    graph_binding: dict[str, str]
    graphs: dict[str, OntologicalGraph]
    input_arcs: dict[tuple[str, str], Formula]
    output_arcs: dict[tuple[str, str], str]
    initial_marking: Marking
    graph_paths: dict[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        empty_id = BOT if self.kind is NetKind.CMPNOG else EPS
        self.initial_marking = tuple(
            None if tok == empty_id else tok for tok in self.initial_marking)
        self._index = {p: i for i, p in enumerate(self.places)}
        self._inputs = {t: tuple(p for p in self.places
                                 if (p, t) in self.input_arcs)
                        for t in self.transitions}
        self._outputs = {t: tuple(p for p in self.places
                                  if (t, p) in self.output_arcs)
                         for t in self.transitions}

    def graph_of(self, place: str) -> OntologicalGraph:
        return self.graphs[self.graph_binding[place]]

    def place_index(self, place: str) -> int:
        return self._index[place]

    def inputs_of(self, t: str) -> tuple[str, ...]:
        """Input places of ``t``, in net place order."""
        return self._inputs[t]

    def outputs_of(self, t: str) -> tuple[str, ...]:
        """Output places of ``t``, in net place order."""
        return self._outputs[t]

    def empty_marking(self) -> Marking:
        return (None,) * len(self.places)


@dataclass(frozen=True)
class TraceStep:
    fired: str
    before: Marking
    after: Marking


@dataclass(frozen=True)
class Violation:
    """One structural problem, with the coordinates it was found at."""

    message: str
    place: str | None = None
    transition: str | None = None
    section: str | None = None   # place | transition | in | out | m0 | net
    line: int | None = None

    @property
    def where(self) -> str:
        parts = []
        if self.place is not None:
            parts.append(f"place {self.place}")
        if self.transition is not None:
            parts.append(f"transition {self.transition}")
        return ", ".join(parts) if parts else "net"

    def __str__(self):
        return f"{self.where}: {self.message}"


def format_marking(m: Marking) -> str:
    """Render a marking as ``(tok,tok,…)`` with ``_`` for the empty token."""
    return "(" + ",".join(tok if tok is not None else "_" for tok in m) + ")"


# ---------- validation ----------

def validate_net(net: Pnog, *, strict: bool = False) -> list[Violation]:
    """Check every structural rule; an empty list means the net is well
    formed.

    ``strict`` additionally demands bare concept formulas on IMPNOG input
    arcs (the narrow reading of the element-typed input position); by
    default any formula shape is accepted there.
    """
    out: list[Violation] = []
    seen = set()
    for p in net.places:
        if p in seen:
            out.append(Violation(f"duplicate place '{p}'", place=p,
                                 section="place"))
        seen.add(p)
    seen = set()
    for t in net.transitions:
        if t in seen:
            out.append(Violation(f"duplicate transition '{t}'", transition=t,
                                 section="transition"))
        seen.add(t)

    bound = set()
    for p in net.places:
        alias = net.graph_binding.get(p)
        if alias is None:
            out.append(Violation("place has no ontology binding", place=p,
                                 section="place"))
        elif alias not in net.graphs:
            out.append(Violation(f"unknown graph alias '{alias}'", place=p,
                                 section="place"))
        else:
            bound.add(p)

    place_set = set(net.places)
    transition_set = set(net.transitions)

    for (p, t), f in net.input_arcs.items():
        if p not in place_set or t not in transition_set:
            out.append(Violation(
                "input arc references undeclared place or transition",
                place=p, transition=t, section="in"))
            continue
        if p not in bound:
            continue
        g = net.graph_of(p)
        if f.concept not in g.concepts:
            out.append(Violation(
                f"input formula '{format_formula(f)}' references unknown "
                f"concept '{f.concept}' in graph '{g.name}'",
                place=p, transition=t, section="in"))
        elif (strict and net.kind is NetKind.IMPNOG
              and f.kind is not FormulaKind.BARE):
            out.append(Violation(
                f"strict mode requires a bare concept formula on "
                f"instance-marked inputs, got '{format_formula(f)}'",
                place=p, transition=t, section="in"))

    for (t, p), term in net.output_arcs.items():
        if p not in place_set or t not in transition_set:
            out.append(Violation(
                "output arc references undeclared place or transition",
                place=p, transition=t, section="out"))
            continue
        if p not in bound:
            continue
        g = net.graph_of(p)
        if net.kind is NetKind.CMPNOG:
            if term == BOT:
                out.append(Violation(
                    "output term must not be the bottom concept",
                    place=p, transition=t, section="out"))
            elif term not in g.concepts:
                out.append(Violation(
                    f"output term '{term}' must be a concept of graph "
                    f"'{g.name}'", place=p, transition=t, section="out"))
        else:
            if term == EPS:
                out.append(Violation(
                    "output term must not be the empty instance",
                    place=p, transition=t, section="out"))
            elif term not in g.instances:
                out.append(Violation(
                    f"output term '{term}' must be an instance of graph "
                    f"'{g.name}'", place=p, transition=t, section="out"))

    if len(net.initial_marking) != len(net.places):
        out.append(Violation(
            f"initial marking has {len(net.initial_marking)} entries for "
            f"{len(net.places)} places", section="m0"))
    else:
        for p, tok in zip(net.places, net.initial_marking):
            if tok is None or p not in bound:
                continue
            g = net.graph_of(p)
            if net.kind is NetKind.CMPNOG:
                if tok not in g.concepts:
                    out.append(Violation(
                        f"initial token '{tok}' is not a concept of graph "
                        f"'{g.name}'", place=p, section="m0"))
            else:
                if tok not in g.instances:
                    out.append(Violation(
                        f"initial token '{tok}' is not an instance of graph "
                        f"'{g.name}'", place=p, section="m0"))

    return out


# ---------- enabling and firing ----------

def disabled_reason(net: Pnog, m: Marking, t: str) -> str | None:
    """None when ``t`` is enabled at ``m``; otherwise a one-line reason
    naming the failing condition and its place."""
    if t not in net._inputs:
        raise UnknownTransitionError(f"unknown transition '{t}'")
    ins = net.inputs_of(t)
    for p in ins:
        tok = m[net.place_index(p)]
        g = net.graph_of(p)
        f = net.input_arcs[(p, t)]
        if tok is None:
            return f"input condition failed at {p}: place is empty"
        concepts = denote(f, g)
        if net.kind is NetKind.CMPNOG:
            if tok not in concepts:
                return (f"input condition failed at {p}: '{tok}' is not in "
                        f"||{format_formula(f)}||")
        else:
            if not any(g.is_instance_of(tok, c) for c in concepts):
                return (f"input condition failed at {p}: '{tok}' is not an "
                        f"instance of ||{format_formula(f)}||")
    for p in net.outputs_of(t):
        if p in ins:
            continue  # self loop: exempt from the emptiness condition
        if m[net.place_index(p)] is not None:
            return f"output place {p} is not empty"
    return None


def enabled(net: Pnog, m: Marking, t: str) -> bool:
    """Enabling check for one transition."""
    return disabled_reason(net, m, t) is None


def enabled_transitions(net: Pnog, m: Marking) -> list[str]:
    """All enabled transitions, in net transition order."""
    return [t for t in net.transitions if disabled_reason(net, m, t) is None]


def fire(net: Pnog, m: Marking, t: str) -> Marking:
    """Fire an enabled transition: inputs that are not also outputs are
    emptied, every output place receives the arc's output term, everything
    else is untouched."""
    reason = disabled_reason(net, m, t)
    if reason is not None:
        raise NotEnabledError(f"'{t}' is not enabled: {reason}")
    new = list(m)
    outs = net.outputs_of(t)
    for p in net.inputs_of(t):
        if p not in outs:
            new[net.place_index(p)] = None
    for p in outs:
        new[net.place_index(p)] = net.output_arcs[(t, p)]
    return tuple(new)


def run_trace(net: Pnog, policy: str = "first", *, seed: int = 0,
              script: list[str] | None = None,
              max_steps: int = 100) -> list[TraceStep]:
    """Execute up to ``max_steps`` firings from the initial marking.

    ``policy`` is ``first`` (lowest-index enabled transition), ``random``
    (uniform choice with a generator seeded by ``seed``), or ``script``
    (fire exactly the given transition ids, failing loudly on a step that is
    not enabled).  The run stops early at a deadlock or, for scripts, when
    the script is exhausted.
    """
    if policy not in ("first", "random", "script"):
        raise ValueError(f"unknown policy '{policy}'")
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    if policy == "script" and script is None:
        raise ValueError("script policy requires a script")

    rng = random.Random(seed)
    steps: list[TraceStep] = []
    m = net.initial_marking
    for k in range(max_steps):
        if policy == "script":
            if k >= len(script):
                break
            t = script[k]
            reason = disabled_reason(net, m, t)
            if reason is not None:
                raise ScriptStepNotEnabledError(k, t, reason)
        else:
            candidates = enabled_transitions(net, m)
            if not candidates:
                break
            t = candidates[0] if policy == "first" else rng.choice(candidates)
        after = fire(net, m, t)
        steps.append(TraceStep(t, m, after))
        m = after
    return steps


# ---------- comparison ----------

def nets_equal(a: Pnog, b: Pnog) -> bool:
    """Behavioral structural equality: every field that affects semantics,
    with bound graphs compared structurally (names and load paths ignored)."""
    if (a.name, a.kind, a.places, a.transitions) != \
            (b.name, b.kind, b.places, b.transitions):
        return False
    if a.graph_binding != b.graph_binding:
        return False
    if set(a.graphs) != set(b.graphs):
        return False
    if any(not a.graphs[alias].same_structure(b.graphs[alias])
           for alias in a.graphs):
        return False
    return (a.input_arcs == b.input_arcs
            and a.output_arcs == b.output_arcs
            and a.initial_marking == b.initial_marking)
