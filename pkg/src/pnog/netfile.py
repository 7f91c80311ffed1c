"""The net description format (``.pnog``): a line per declaration, mirroring
the matrix picture of arcs with one ``in``/``out`` line per non-empty cell::

    net airport kind=IMPNOG
    use og1.og as og1
    place pl1 ontology=og1
    transition tr2
    in pl1 tr2 "Passenger"
    out tr2 pl1 "p1"
    m0 pl1 p1

``place`` and ``transition`` line order defines the net's place and
transition order.  Places missing from ``m0`` start empty.  ``#`` starts a
comment; quoting follows shell rules, so formulas stay single tokens.
"""

from __future__ import annotations

import shlex
from dataclasses import replace
from typing import Callable

from .errors import (
    GraphLoadError,
    InvalidNetError,
    ParseError,
    UnknownAliasError,
)
from .formula import format_formula, parse_formula
from .netcore import NetKind, Pnog, validate_net
from .ontograph import OntologicalGraph, is_identifier


def parse_netfile(text: str,
                  graph_loader: Callable[[str], OntologicalGraph],
                  *, strict: bool = False) -> Pnog:
    """Parse, bind graphs through ``graph_loader`` (a path-to-graph
    callback), and validate.

    Raises ParseError for malformed lines, UnknownAliasError and
    GraphLoadError for binding problems, and InvalidNetError carrying the
    full violation report (each violation annotated with its source line
    where one exists).
    """
    name = None
    kind = None
    use_lines: list[tuple[str, str, int]] = []          # path, alias, line
    place_lines: list[tuple[str, str, int]] = []        # id, alias, line
    transition_lines: list[tuple[str, int]] = []
    in_lines: dict[tuple[str, str], tuple[str, int]] = {}
    out_lines: dict[tuple[str, str], tuple[str, int]] = {}
    m0_lines: dict[str, tuple[str, int]] = {}

    for ln, raw in enumerate(text.splitlines(), 1):
        try:
            words = shlex.split(raw, comments=True, posix=True)
        except ValueError as exc:
            raise ParseError(f"line {ln}: {exc}", line=ln) from exc
        if not words:
            continue
        if name is None:
            if (len(words) != 3 or words[0] != "net"
                    or not words[2].startswith("kind=")):
                raise ParseError(
                    f"line {ln}: expected `net <name> kind=<CMPNOG|IMPNOG>` "
                    f"header", line=ln)
            if not is_identifier(words[1]):
                raise ParseError(f"line {ln}: bad net name '{words[1]}'",
                                 line=ln)
            try:
                kind = NetKind(words[2][len("kind="):])
            except ValueError:
                raise ParseError(
                    f"line {ln}: net kind must be CMPNOG or IMPNOG, got "
                    f"'{words[2][len('kind='):]}'", line=ln) from None
            name = words[1]
            continue

        kw = words[0]
        if kw == "use" and len(words) == 4 and words[2] == "as":
            _require_ident(words[3], ln)
            if any(alias == words[3] for _, alias, _ in use_lines):
                raise ParseError(
                    f"line {ln}: duplicate graph alias '{words[3]}'", line=ln)
            use_lines.append((words[1], words[3], ln))
        elif kw == "place" and len(words) == 3 \
                and words[2].startswith("ontology="):
            _require_ident(words[1], ln)
            alias = words[2][len("ontology="):]
            _require_ident(alias, ln)
            place_lines.append((words[1], alias, ln))
        elif kw == "transition" and len(words) == 2:
            _require_ident(words[1], ln)
            transition_lines.append((words[1], ln))
        elif kw == "in" and len(words) == 4:
            _require_ident(words[1], ln)
            _require_ident(words[2], ln)
            key = (words[1], words[2])
            if key in in_lines:
                raise ParseError(
                    f"line {ln}: duplicate input arc ({words[1]}, {words[2]})",
                    line=ln)
            in_lines[key] = (words[3], ln)
        elif kw == "out" and len(words) == 4:
            _require_ident(words[1], ln)
            _require_ident(words[2], ln)
            _require_ident(words[3], ln)
            key = (words[1], words[2])
            if key in out_lines:
                raise ParseError(
                    f"line {ln}: duplicate output arc ({words[1]}, "
                    f"{words[2]})", line=ln)
            out_lines[key] = (words[3], ln)
        elif kw == "m0" and len(words) == 3:
            _require_ident(words[1], ln)
            _require_ident(words[2], ln)
            if words[1] in m0_lines:
                raise ParseError(
                    f"line {ln}: duplicate initial token for place "
                    f"'{words[1]}'", line=ln)
            m0_lines[words[1]] = (words[2], ln)
        else:
            raise ParseError(
                f"line {ln}: expected `use`, `place`, `transition`, `in`, "
                f"`out`, or `m0` declaration, got '{raw.strip()}'", line=ln)

    if name is None:
        raise ParseError(
            "line 1: expected `net <name> kind=<CMPNOG|IMPNOG>` header",
            line=1)

    graphs: dict[str, OntologicalGraph] = {}
    graph_paths: dict[str, str] = {}
    for path, alias, ln in use_lines:
        try:
            graphs[alias] = graph_loader(path)
        except Exception as exc:
            raise GraphLoadError(
                f"line {ln}: cannot load graph '{path}': {exc}") from exc
        graph_paths[alias] = path

    places = []
    binding = {}
    for pid, alias, ln in place_lines:
        if pid in binding:
            raise ParseError(f"line {ln}: duplicate place '{pid}'", line=ln)
        if alias not in graphs:
            raise UnknownAliasError(
                f"line {ln}: place '{pid}' uses unknown graph alias "
                f"'{alias}'")
        places.append(pid)
        binding[pid] = alias

    transitions = []
    for tid, ln in transition_lines:
        if tid in transitions:
            raise ParseError(f"line {ln}: duplicate transition '{tid}'",
                             line=ln)
        transitions.append(tid)

    input_arcs = {}
    for (p, t), (ftext, ln) in in_lines.items():
        try:
            input_arcs[(p, t)] = parse_formula(ftext)
        except ParseError as exc:
            raise ParseError(f"line {ln}: bad formula: {exc}", line=ln,
                             position=exc.position) from exc

    output_arcs = {(t, p): term for (t, p), (term, _) in out_lines.items()}

    marking = [None] * len(places)
    for p, (tok, ln) in m0_lines.items():
        if p not in binding:
            raise ParseError(f"line {ln}: m0 names undeclared place '{p}'",
                             line=ln)
        marking[places.index(p)] = tok

    net = Pnog(name=name, kind=kind,
               places=tuple(places), transitions=tuple(transitions),
               graph_binding=binding, graphs=graphs,
               input_arcs=input_arcs, output_arcs=output_arcs,
               initial_marking=tuple(marking), graph_paths=graph_paths)

    violations = validate_net(net, strict=strict)
    if violations:
        place_by_id = {pid: ln for pid, _, ln in place_lines}
        annotated = []
        for v in violations:
            line = None
            if v.section == "in" and v.place and v.transition:
                line = in_lines.get((v.place, v.transition), (None, None))[1]
            elif v.section == "out" and v.place and v.transition:
                line = out_lines.get((v.transition, v.place), (None, None))[1]
            elif v.section == "m0" and v.place:
                line = m0_lines.get(v.place, (None, None))[1]
            elif v.place:
                line = place_by_id.get(v.place)
            annotated.append(replace(v, line=line))
        raise InvalidNetError(annotated)
    return net


def _require_ident(word: str, ln: int):
    if not is_identifier(word):
        raise ParseError(f"line {ln}: bad identifier '{word}'", line=ln)


def serialize_netfile(net: Pnog) -> str:
    """Canonical net text: header, then use/place/transition blocks in
    declaration order, ``in`` lines by (place, transition) order, ``out``
    lines by (transition, place) order, and only non-empty ``m0`` entries."""
    out = [f"net {net.name} kind={net.kind.value}"]
    for alias in net.graphs:
        path = net.graph_paths.get(alias, f"{alias}.og")
        out.append(f"use {path} as {alias}")
    for p in net.places:
        out.append(f"place {p} ontology={net.graph_binding[p]}")
    for t in net.transitions:
        out.append(f"transition {t}")
    for p in net.places:
        for t in net.transitions:
            f = net.input_arcs.get((p, t))
            if f is not None:
                out.append(f'in {p} {t} "{format_formula(f)}"')
    for t in net.transitions:
        for p in net.places:
            term = net.output_arcs.get((t, p))
            if term is not None:
                out.append(f'out {t} {p} "{term}"')
    for p, tok in zip(net.places, net.initial_marking):
        if tok is not None:
            out.append(f"m0 {p} {tok}")
    return "\n".join(out) + "\n"
