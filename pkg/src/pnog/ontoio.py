"""Reading and writing ontological graphs.

Two carriers are supported:

* the native line format (``.og``): one declaration per line, ``#`` comments,
  declarations in any order::

      ontology og1
      concept Passenger
      instance p1 Visa_passenger
      subclass Visa_passenger Passenger
      equiv Card ID_card
      relation requires Visa Passport

* a subset of OWL 2 functional-style syntax (``.ofn``): class and named
  individual declarations, SubClassOf / EquivalentClasses between named
  classes, and ClassAssertion.  Everything else is skipped and counted.

Serialization is canonical (kinds in a fixed order, lexicographic within a
kind, equivalence edges oriented smaller-id-first) so golden-file comparisons
are byte exact.
"""

from __future__ import annotations

import re
from typing import Callable

from .errors import (
    DuplicateIdError,
    GraphLoadError,
    IriCollisionError,
    ParseError,
    ReservedIdError,
    UnknownReferenceError,
)
from .ontograph import (
    BOT,
    EPS,
    EQUIV_TO,
    INSTANCE_OF,
    RESERVED_IDS,
    SUBCLASS_OF,
    TOP,
    OntologicalGraph,
    build_graph,
    is_identifier,
)

# ---------- native format ----------

def parse_native_graph(text: str) -> OntologicalGraph:
    """Parse the native line format into a built graph.

    Keywords are positional, not reserved: ``concept concept`` declares a
    concept named ``concept``.  Repeated ``instance`` lines for one id add
    further memberships.  Diagnostics carry 1-based line numbers.
    """
    name = None
    concept_lines: list[tuple[str, int]] = []
    instance_lines: list[tuple[str, str, int]] = []
    edge_lines: list[tuple[str, str, str, int]] = []

    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if name is None:
            if len(words) != 2 or words[0] != "ontology":
                raise ParseError(
                    f"line {ln}: expected `ontology <name>` header", line=ln)
            if not is_identifier(words[1]):
                raise ParseError(
                    f"line {ln}: bad ontology name '{words[1]}'", line=ln)
            name = words[1]
            continue
        kw = words[0]
        if kw == "concept" and len(words) == 2:
            concept_lines.append((words[1], ln))
        elif kw == "instance" and len(words) == 3:
            instance_lines.append((words[1], words[2], ln))
        elif kw == "subclass" and len(words) == 3:
            edge_lines.append((words[1], SUBCLASS_OF, words[2], ln))
        elif kw == "equiv" and len(words) == 3:
            edge_lines.append((words[1], EQUIV_TO, words[2], ln))
        elif kw == "relation" and len(words) == 4:
            edge_lines.append((words[2], words[1], words[3], ln))
        else:
            raise ParseError(
                f"line {ln}: expected `concept <id>`, `instance <id> <id>`, "
                f"`subclass <id> <id>`, `equiv <id> <id>`, or "
                f"`relation <label> <id> <id>`, got '{line}'", line=ln)
        for word in words[1:]:
            if not is_identifier(word):
                raise ParseError(f"line {ln}: bad identifier '{word}'",
                                 line=ln)

    if name is None:
        raise ParseError("line 1: expected `ontology <name>` header", line=1)

    concepts: dict[str, int] = {}
    for cid, ln in concept_lines:
        if cid in RESERVED_IDS:
            raise ReservedIdError(
                f"line {ln}: cannot declare reserved id '{cid}'")
        if cid in concepts:
            raise DuplicateIdError(f"line {ln}: duplicate concept '{cid}'")
        concepts[cid] = ln

    instances: dict[str, int] = {}
    for iid, cid, ln in instance_lines:
        if iid in RESERVED_IDS:
            raise ReservedIdError(
                f"line {ln}: cannot declare reserved id '{iid}'")
        if iid in concepts:
            raise DuplicateIdError(
                f"line {ln}: id '{iid}' declared as both concept and instance")
        instances.setdefault(iid, ln)

    def check_concept_ref(cid, ln):
        if cid == TOP:
            return
        if cid in (BOT, EPS):
            raise ReservedIdError(
                f"line {ln}: '{cid}' cannot take part in declared edges")
        if cid not in concepts:
            raise UnknownReferenceError(f"line {ln}: unknown concept '{cid}'")

    edges: list[tuple[str, str, str]] = []
    for iid, cid, ln in instance_lines:
        check_concept_ref(cid, ln)
        edges.append((iid, INSTANCE_OF, cid))
    for src, label, tgt, ln in edge_lines:
        check_concept_ref(src, ln)
        check_concept_ref(tgt, ln)
        edges.append((src, label, tgt))

    return build_graph(name, concepts, instances, edges)



def serialize_native_graph(g: OntologicalGraph) -> str:
    """Canonical native text.  Reserved ids and the implicit attachment of
    parentless concepts below TOP are not written; an instance with no
    declared membership is written as ``instance <id> TOP``."""
    out = [f"ontology {g.name}"]
    for c in sorted(g.declared_concepts):
        out.append(f"concept {c}")

    memberships: dict[str, list[str]] = {i: [] for i in g.declared_instances}
    subclass = []
    equiv = set()
    relations = []
    for e in g.edges:
        if e.label == INSTANCE_OF:
            memberships[e.source].append(e.target)
        elif e.label == SUBCLASS_OF:
            if e.target != TOP:
                subclass.append((e.source, e.target))
        elif e.label == EQUIV_TO:
            a, b = sorted((e.source, e.target))
            equiv.add((a, b))
        else:
            relations.append((e.label, e.source, e.target))

    for i in sorted(memberships):
        for c in sorted(memberships[i]) or [TOP]:
            out.append(f"instance {i} {c}")
    for a, b in sorted(subclass):
        out.append(f"subclass {a} {b}")
    for a, b in sorted(equiv):
        out.append(f"equiv {a} {b}")
    for label, a, b in sorted(relations):
        out.append(f"relation {label} {a} {b}")
    return "\n".join(out) + "\n"


# ---------- OWL 2 functional-style syntax subset ----------

_OWL = "http://www.w3.org/2002/07/owl#"
_BUILTIN_PREFIXES = {
    "owl": _OWL,
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
}

_OWL_TOKEN = re.compile(r"""
      (?P<ws>\s+)
    | (?P<lpar>\()
    | (?P<rpar>\))
    | (?P<iri><[^>]*>)
    | (?P<string>"(?:[^"\\]|\\.)*")
    | (?P<atom>[^\s()"<>]+)
""", re.VERBOSE)


def _tokenize_owl(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    line = 1
    pos = 0
    while pos < len(text):
        m = _OWL_TOKEN.match(text, pos)
        if not m:
            raise ParseError(
                f"line {line}: unexpected character {text[pos]!r}", line=line)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            tokens.append((kind, value, line))
        line += value.count("\n")
        pos = m.end()
    return tokens


class _OwlReader:
    """Token cursor with the shared helpers of the importer."""

    def __init__(self, text: str):
        self.tokens = _tokenize_owl(text)
        self.i = 0
        self.prefixes = dict(_BUILTIN_PREFIXES)
        self.local_of_iri: dict[str, str] = {}
        self.iri_of_local: dict[str, str] = {}

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.i += 1
        return tok

    def expect(self, kind, what):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(
                f"line {tok[2]}: expected {what}, got '{tok[1]}'",
                line=tok[2])
        return tok

    def read_group(self):
        """Consume a balanced ``( … )`` group, returning the inner tokens."""
        open_tok = self.expect("lpar", "'('")
        depth = 1
        inner = []
        while depth:
            tok = self.peek()
            if tok is None:
                raise ParseError(
                    f"line {open_tok[2]}: unbalanced parentheses",
                    line=open_tok[2])
            self.i += 1
            if tok[0] == "lpar":
                depth += 1
            elif tok[0] == "rpar":
                depth -= 1
                if depth == 0:
                    break
            inner.append(tok)
        return inner

    def full_iri(self, token) -> str:
        kind, value, line = token
        if kind == "iri":
            return value[1:-1]
        if kind == "atom" and ":" in value:
            prefix, _, local = value.partition(":")
            base = self.prefixes.get(prefix)
            if base is None:
                raise ParseError(
                    f"line {line}: undeclared prefix '{prefix}:'", line=line)
            return base + local
        raise ParseError(
            f"line {line}: expected an IRI or prefixed name, got '{value}'",
            line=line)

    def local_id(self, token) -> str:
        """Map an entity reference to a local id; owl:Thing and owl:Nothing
        become TOP and BOT."""
        iri = self.full_iri(token)
        if iri == _OWL + "Thing":
            return TOP
        if iri == _OWL + "Nothing":
            return BOT
        known = self.local_of_iri.get(iri)
        if known is not None:
            return known
        frag = iri.rsplit("#", 1)[-1]
        if frag == iri:
            frag = iri.rstrip("/").rsplit("/", 1)[-1]
        if not is_identifier(frag):
            raise ParseError(
                f"line {token[2]}: IRI <{iri}> does not map to a usable "
                f"identifier", line=token[2])
        clash = self.iri_of_local.get(frag)
        if clash is not None and clash != iri:
            raise IriCollisionError(
                f"'{frag}' is the local id of both <{clash}> and <{iri}>")
        self.local_of_iri[iri] = frag
        self.iri_of_local[frag] = iri
        return frag


def _only_refs(reader: _OwlReader, inner) -> list[str] | None:
    """Resolve a flat argument list of entity references, or None when the
    axiom contains anything structured (annotations, class expressions)."""
    if any(tok[0] in ("lpar", "rpar", "string") for tok in inner):
        return None
    return [reader.local_id(tok) for tok in inner]


def import_owl_functional(text: str) -> tuple[OntologicalGraph, list[str]]:
    """Import the supported axiom subset; returns the graph and one warning
    line per skipped axiom.

    Named classes and individuals used by supported axioms are declared
    implicitly, matching the usual OWL reading that usage implies existence.
    """
    reader = _OwlReader(text)

    while True:
        tok = reader.peek()
        if tok is None:
            raise ParseError("expected `Ontology(...)`")
        if tok[0] == "atom" and tok[1] == "Prefix":
            reader.next()
            inner = reader.read_group()
            if len(inner) != 2 or inner[0][0] != "atom" \
                    or not inner[0][1].endswith(":=") or inner[1][0] != "iri":
                raise ParseError(
                    f"line {tok[2]}: expected `Prefix(name:=<iri>)`",
                    line=tok[2])
            reader.prefixes[inner[0][1][:-2]] = inner[1][1][1:-1]
            continue
        break

    head = reader.expect("atom", "`Ontology`")
    if head[1] != "Ontology":
        raise ParseError(
            f"line {head[2]}: expected `Ontology`, got '{head[1]}'",
            line=head[2])
    reader.expect("lpar", "'('")

    name = "imported"
    tok = reader.peek()
    if tok is not None and tok[0] == "iri":
        reader.next()
        iri = tok[1][1:-1]
        frag = iri.rsplit("#", 1)[-1]
        if frag == iri:
            frag = iri.rstrip("/").rsplit("/", 1)[-1]
        if is_identifier(frag):
            name = frag
        tok = reader.peek()
        if tok is not None and tok[0] == "iri":
            reader.next()  # version IRI

    concepts: set[str] = set()
    instances: set[str] = set()
    edges: set[tuple[str, str, str]] = set()
    warnings: list[str] = []

    def declare_concept(local):
        if local not in (TOP, BOT):
            concepts.add(local)

    while True:
        tok = reader.peek()
        if tok is None:
            raise ParseError("unbalanced parentheses: `Ontology(` not closed")
        if tok[0] == "rpar":
            reader.next()
            break
        head = reader.expect("atom", "an axiom name")
        inner = reader.read_group()
        kind = head[1]
        line = head[2]

        if kind == "Declaration":
            if (len(inner) == 4 and inner[0][0] == "atom"
                    and inner[1][0] == "lpar" and inner[3][0] == "rpar"):
                entity_kind = inner[0][1]
                if entity_kind == "Class":
                    declare_concept(reader.local_id(inner[2]))
                    continue
                if entity_kind == "NamedIndividual":
                    instances.add(reader.local_id(inner[2]))
                    continue
            warnings.append(f"line {line}: skipped unsupported declaration")
        elif kind == "SubClassOf":
            refs = _only_refs(reader, inner)
            if refs is None or len(refs) != 2:
                warnings.append(
                    f"line {line}: skipped SubClassOf with a class expression")
                continue
            sub, sup = refs
            declare_concept(sub)
            declare_concept(sup)
            edges.add((sub, SUBCLASS_OF, sup))
        elif kind == "EquivalentClasses":
            refs = _only_refs(reader, inner)
            if refs is None or len(refs) < 2:
                warnings.append(
                    f"line {line}: skipped EquivalentClasses with a class "
                    f"expression")
                continue
            for c in refs:
                declare_concept(c)
            for a_idx in range(len(refs)):
                for b_idx in range(a_idx + 1, len(refs)):
                    edges.add((refs[a_idx], EQUIV_TO, refs[b_idx]))
        elif kind == "ClassAssertion":
            refs = _only_refs(reader, inner)
            if refs is None or len(refs) != 2:
                warnings.append(
                    f"line {line}: skipped ClassAssertion with a class "
                    f"expression")
                continue
            cls, ind = refs
            declare_concept(cls)
            instances.add(ind)
            edges.add((ind, INSTANCE_OF, cls))
        else:
            warnings.append(f"line {line}: skipped unsupported axiom {kind}")

    graph = build_graph(name, sorted(concepts), sorted(instances),
                        sorted(edges))
    return graph, warnings


# ---------- file loading ----------

def load_graph_file(path: str,
                    on_warning: Callable[[str], None] | None = None
                    ) -> OntologicalGraph:
    """Load ``.og`` (native) or ``.ofn`` (OWL functional syntax) by
    extension; importer warnings go to ``on_warning`` when given."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".ofn"):
        graph, warnings = import_owl_functional(text)
        if on_warning is not None:
            for w in warnings:
                on_warning(f"{path}: {w}")
        return graph
    return parse_native_graph(text)
