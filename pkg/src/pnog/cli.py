"""Command-line front end.

Subcommands: ``validate``, ``run``, ``step`` (interactive), ``reach``, and
``import-owl``.  Exit codes are stable: 0 success, 1 validation or semantic
failure, 2 unusable input (missing or unparseable file, bad usage).
"""

from __future__ import annotations

import argparse
import os
import sys

from .analysis import build_occurrence_graph, export_dot, find_deadlocks
from .errors import (
    GraphLoadError,
    InvalidNetError,
    ParseError,
    PnogError,
    ScriptStepNotEnabledError,
)
from .netcore import (
    NetKind,
    disabled_reason,
    enabled_transitions,
    fire,
    format_marking,
    run_trace,
)
from .netfile import parse_netfile
from .ontoio import import_owl_functional, load_graph_file, serialize_native_graph


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pnog",
        description="Model, check, simulate, and explore Petri nets over "
                    "ontological graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a net file's structural rules")
    p.add_argument("netfile")
    p.add_argument("--strict", action="store_true",
                   help="require bare concept formulas on instance-marked "
                        "input arcs")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("run", help="batch simulation from the initial marking")
    p.add_argument("netfile")
    p.add_argument("--policy", choices=("first", "random", "script"),
                   default="first")
    p.add_argument("--seed", type=int, default=0,
                   help="generator seed for --policy random")
    p.add_argument("--steps", type=int, default=100,
                   help="maximum number of firings")
    p.add_argument("--script", default=None,
                   help="comma-separated transition ids for --policy script")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("step", help="interactive stepping session")
    p.add_argument("netfile")
    p.set_defaults(func=cmd_step)

    p = sub.add_parser("reach", help="build the occurrence graph")
    p.add_argument("netfile")
    p.add_argument("--max-states", type=int, default=10000)
    p.add_argument("--dot", metavar="FILE", default=None,
                   help="write the graph as DOT")
    p.add_argument("--deadlocks", action="store_true",
                   help="list deadlocked markings")
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("import-owl",
                       help="convert OWL functional syntax to the native "
                            "graph format")
    p.add_argument("owlfile")
    p.add_argument("-o", "--output", required=True, metavar="FILE")
    p.set_defaults(func=cmd_import_owl)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


# ---------- net loading shared by the net subcommands ----------

def _loader_for(netfile_path: str):
    base = os.path.dirname(os.path.abspath(netfile_path))

    def load(path: str):
        full = path if os.path.isabs(path) else os.path.join(base, path)
        return load_graph_file(
            full, on_warning=lambda msg: print(msg, file=sys.stderr))

    return load


def _read_net(args, violations_to):
    """Returns (net, 0) or (None, exit_code), printing diagnostics."""
    try:
        with open(args.netfile, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, 2
    try:
        net = parse_netfile(text, _loader_for(args.netfile),
                            strict=getattr(args, "strict", False))
    except InvalidNetError as exc:
        for v in exc.violations:
            coords = f"{args.netfile}:{v.line}" if v.line else args.netfile
            print(f"{coords}: {v.where}: {v.message}", file=violations_to)
        return None, 1
    except ParseError as exc:
        print(f"error: {args.netfile}: {exc}", file=sys.stderr)
        return None, 2
    except GraphLoadError as exc:
        print(f"error: {args.netfile}: {exc}", file=sys.stderr)
        cause = exc.__cause__
        return None, 2 if isinstance(cause, (OSError, ParseError)) else 1
    except PnogError as exc:
        print(f"error: {args.netfile}: {exc}", file=sys.stderr)
        return None, 1
    return net, 0


# ---------- subcommands ----------

def cmd_validate(args) -> int:
    net, code = _read_net(args, violations_to=sys.stdout)
    if net is None:
        return code
    print(f"OK: {len(net.places)} places, {len(net.transitions)} transitions")
    return 0


def cmd_run(args) -> int:
    if args.policy == "script" and not args.script:
        print("error: --policy script requires --script", file=sys.stderr)
        return 2
    net, code = _read_net(args, violations_to=sys.stderr)
    if net is None:
        return code
    script = None
    if args.script is not None:
        script = [t for t in args.script.replace(",", " ").split() if t]
    try:
        trace = run_trace(net, args.policy, seed=args.seed, script=script,
                          max_steps=args.steps)
    except PnogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for k, step in enumerate(trace, 1):
        print(f"step_{k}: fired={step.fired} "
              f"marking={format_marking(step.after)}")
    final = trace[-1].after if trace else net.initial_marking
    tag = "" if enabled_transitions(net, final) else " deadlock"
    print(f"final: {format_marking(final)}{tag}")
    return 0


def cmd_step(args) -> int:
    net, code = _read_net(args, violations_to=sys.stderr)
    if net is None:
        return code
    history = []
    m = net.initial_marking
    while True:
        print(f"marking: {format_marking(m)}")
        en = enabled_transitions(net, m)
        if en:
            print("enabled: " + "  ".join(f"{k}: {t}"
                                          for k, t in enumerate(en, 1)))
        else:
            print("enabled: none")
        try:
            line = input("pnog> ")
        except EOFError:
            return 0
        words = line.split()
        if not words:
            continue
        cmd, rest = words[0], words[1:]
        if cmd == "quit":
            return 0
        if cmd == "fire" and len(rest) == 1:
            ref = rest[0]
            if ref.isdigit():
                k = int(ref)
                if not 1 <= k <= len(en):
                    print(f"no such choice: {ref}")
                    continue
                t = en[k - 1]
            else:
                t = ref
            if t not in net.transitions:
                print(f"unknown transition: {t}")
                continue
            reason = disabled_reason(net, m, t)
            if reason is not None:
                print(f"not enabled: {reason}")
                continue
            history.append(m)
            m = fire(net, m, t)
        elif cmd == "undo" and not rest:
            if history:
                m = history.pop()
            else:
                print("nothing to undo")
        elif cmd == "reset" and not rest:
            history.append(m)
            m = net.initial_marking
        elif cmd == "show" and len(rest) == 1:
            _show_place(net, m, rest[0])
        else:
            print(f"unknown command: {line.strip()}")


def _show_place(net, m, place: str):
    if place not in net.places:
        print(f"unknown place: {place}")
        return
    g = net.graph_of(place)
    tok = m[net.place_index(place)]
    if tok is None:
        print(f"{place}: empty (graph {g.name})")
    elif net.kind is NetKind.IMPNOG:
        concepts = sorted(g.concepts_of(tok))
        listing = ", ".join(concepts) if concepts else "TOP only"
        print(f"{place}: {tok} (graph {g.name}; instance of: {listing})")
    else:
        synonyms = sorted(g.equiv_class(tok) - {tok})
        below = sorted(g.descendants(tok))
        print(f"{place}: {tok} (graph {g.name}; "
              f"equivalent: {', '.join(synonyms) or 'none'}; "
              f"subconcepts: {', '.join(below) or 'none'})")


def cmd_reach(args) -> int:
    net, code = _read_net(args, violations_to=sys.stderr)
    if net is None:
        return code
    if args.max_states < 1:
        print("error: --max-states must be >= 1", file=sys.stderr)
        return 2
    og = build_occurrence_graph(net, max_states=args.max_states)
    flag = "true" if og.truncated else "false"
    print(f"states={len(og.nodes)} edges={len(og.edges)} truncated={flag}")
    if args.dot:
        try:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(export_dot(og))
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    if args.deadlocks:
        dead = find_deadlocks(og, net)
        for m in og.nodes:
            if m in dead:
                print(f"deadlock: {format_marking(m)}")
        if og.truncated:
            print("error: state space truncated; the deadlock report is "
                  "incomplete", file=sys.stderr)
            return 1
    return 0


def cmd_import_owl(args) -> int:
    try:
        with open(args.owlfile, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        graph, warnings = import_owl_functional(text)
    except PnogError as exc:
        print(f"error: {args.owlfile}: {exc}", file=sys.stderr)
        return 1
    for w in warnings:
        print(f"warning: {args.owlfile}: {w}", file=sys.stderr)
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(serialize_native_graph(graph))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"skipped {len(warnings)} axioms")
    return 0


if __name__ == "__main__":
    sys.exit(main())
