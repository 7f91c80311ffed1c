"""Ontological graphs: concepts, instances, labeled semantic relations, and
the closure queries that net semantics build on.

Every graph implicitly contains the top concept ``TOP`` (every individual is
an instance of it), the bottom concept ``BOT`` (no individual is), and the
reserved instance ``EPS``, which belongs to ``BOT`` alone and doubles as the
empty token of instance-marked nets.  These three ids are injected at build
time and may be referenced by user declarations but never declared.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    DuplicateIdError,
    ReservedIdError,
    SubclassCycleError,
    UnknownConceptError,
    UnknownInstanceError,
    UnknownReferenceError,
)

TOP = "TOP"
BOT = "BOT"
EPS = "EPS"
RESERVED_IDS = frozenset({TOP, BOT, EPS})

EQUIV_TO = "EQUIV-TO"
SUBCLASS_OF = "SUBCLASS-OF"
INSTANCE_OF = "INSTANCE-OF"
SEMANTIC_LABELS = frozenset({EQUIV_TO, SUBCLASS_OF, INSTANCE_OF})

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def is_identifier(text: str) -> bool:
    """True if ``text`` is a legal id: a letter, then letters/digits/underscores."""
    return bool(_IDENT.match(text))


@dataclass(frozen=True)
class RelationEdge:
    """One labeled edge.  ``source`` is an instance id for INSTANCE-OF edges
    and a concept id for every other label."""

    source: str
    label: str
    target: str


class OntologicalGraph:
    """Immutable ontology model with precomputed closure tables.

    Construction validates the declarations (unique ids, resolvable edge
    endpoints, acyclic declared subclass relation, no use of reserved ids)
    and then computes:

    * equivalence classes: connected components of the EQUIV-TO edges,
    * descendant sets: strict transitive closure of SUBCLASS-OF, where each
      declared concept without a declared superclass counts as a direct
      subclass of TOP,
    * per-instance declared membership targets, queried through
      :meth:`is_instance_of`.

    Instances are shared freely across threads once built; there is no
    mutating API.
    """

    def __init__(self, name: str,
                 concepts: Iterable[str],
                 instances: Iterable[str],
                 edges: Iterable[tuple[str, str, str] | RelationEdge]):
        if not is_identifier(name):
            raise ValueError(f"graph name must be an identifier: {name!r}")
        self.name = name

        declared_concepts = list(concepts)
        declared_instances = list(instances)
        self._check_declarations(declared_concepts, declared_instances)
        self.declared_concepts = frozenset(declared_concepts)
        self.declared_instances = frozenset(declared_instances)
        self.concepts = self.declared_concepts | {TOP, BOT}
        self.instances = self.declared_instances | {EPS}

        normalized = []
        for e in edges:
            if not isinstance(e, RelationEdge):
                e = RelationEdge(*e)
            normalized.append(e)
        self._check_edges(normalized)
        self.edges = frozenset(normalized)

        self._compute_closures()

    # ----- construction checks -----

    def _check_declarations(self, concepts, instances):
        for cid in concepts:
            if cid in RESERVED_IDS:
                raise ReservedIdError(f"cannot declare reserved id '{cid}'")
            if not is_identifier(cid):
                raise ValueError(f"bad concept id: {cid!r}")
        for iid in instances:
            if iid in RESERVED_IDS:
                raise ReservedIdError(f"cannot declare reserved id '{iid}'")
            if not is_identifier(iid):
                raise ValueError(f"bad instance id: {iid!r}")
        seen_concepts = set()
        for cid in concepts:
            if cid in seen_concepts:
                raise DuplicateIdError(f"duplicate concept '{cid}'")
            seen_concepts.add(cid)
        seen_instances = set()
        for iid in instances:
            if iid in seen_instances:
                raise DuplicateIdError(f"duplicate instance '{iid}'")
            if iid in seen_concepts:
                raise DuplicateIdError(
                    f"id '{iid}' declared as both concept and instance")
            seen_instances.add(iid)

    def _check_edges(self, edges):
        concs = self.declared_concepts | {TOP}
        insts = self.declared_instances
        for e in edges:
            for endpoint in (e.source, e.target):
                if endpoint in (BOT, EPS):
                    raise ReservedIdError(
                        f"'{endpoint}' cannot take part in declared edges "
                        f"({e.source} {e.label} {e.target})")
            if e.label in (SUBCLASS_OF, EQUIV_TO):
                for endpoint in (e.source, e.target):
                    if endpoint not in concs:
                        raise UnknownReferenceError(
                            f"unknown concept '{endpoint}' in edge "
                            f"{e.source} {e.label} {e.target}")
            elif e.label == INSTANCE_OF:
                if e.source not in insts:
                    raise UnknownReferenceError(
                        f"unknown instance '{e.source}' in edge "
                        f"{e.source} {e.label} {e.target}")
                if e.target not in concs:
                    raise UnknownReferenceError(
                        f"unknown concept '{e.target}' in edge "
                        f"{e.source} {e.label} {e.target}")
            else:
                # free-text relation from the label family: concept-to-concept
                if not is_identifier(e.label):
                    raise ValueError(f"bad relation label: {e.label!r}")
                for endpoint in (e.source, e.target):
                    if endpoint not in concs:
                        raise UnknownReferenceError(
                            f"unknown concept '{endpoint}' in edge "
                            f"{e.source} {e.label} {e.target}")

    # ----- closures -----

    def _compute_closures(self):
        subclass = [e for e in self.edges if e.label == SUBCLASS_OF]
        cycle = _find_cycle(subclass)
        if cycle:
            raise SubclassCycleError(cycle)

        # children: superclass -> direct declared subclasses, plus the
        # implicit edges attaching parentless declared concepts below TOP.
        children: dict[str, set[str]] = {c: set() for c in self.concepts}
        has_parent = set()
        for e in subclass:
            children[e.target].add(e.source)
            has_parent.add(e.source)
        for c in self.declared_concepts:
            if c not in has_parent:
                children[TOP].add(c)

        self._descendants = {}
        for c in self.concepts:
            seen: set[str] = set()
            stack = list(children[c])
            while stack:
                d = stack.pop()
                if d in seen:
                    continue
                seen.add(d)
                stack.extend(children[d])
            seen.discard(c)
            seen.discard(BOT)
            self._descendants[c] = frozenset(seen)

        # equivalence classes: union-find over EQUIV-TO edges
        parent = {c: c for c in self.concepts}

        def find(x):
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        for e in self.edges:
            if e.label == EQUIV_TO:
                parent[find(e.source)] = find(e.target)
        classes: dict[str, set[str]] = {}
        for c in self.concepts:
            classes.setdefault(find(c), set()).add(c)
        self._equiv = {c: frozenset(classes[find(c)]) for c in self.concepts}

        self._memberships: dict[str, frozenset[str]] = {i: frozenset()
                                                        for i in self.instances}
        targets: dict[str, set[str]] = {}
        for e in self.edges:
            if e.label == INSTANCE_OF:
                targets.setdefault(e.source, set()).add(e.target)
        for i, ts in targets.items():
            self._memberships[i] = frozenset(ts)

    # ----- queries -----

    def _require_concept(self, c: str):
        if c not in self.concepts:
            raise UnknownConceptError(
                f"unknown concept '{c}' in graph '{self.name}'")

    def _require_instance(self, i: str):
        if i not in self.instances:
            raise UnknownInstanceError(
                f"unknown instance '{i}' in graph '{self.name}'")

    def equiv_class(self, c: str) -> frozenset[str]:
        """All concepts reachable from ``c`` through EQUIV-TO edges, in either
        direction; always contains ``c`` itself."""
        self._require_concept(c)
        return self._equiv[c]

    def descendants(self, c: str) -> frozenset[str]:
        """Strict subclass closure below ``c``: every concept with a declared
        SUBCLASS-OF chain up to ``c``, excluding ``c`` itself and BOT."""
        self._require_concept(c)
        return self._descendants[c]

    def declared_memberships(self, i: str) -> frozenset[str]:
        """The concepts ``i`` was directly declared an instance of."""
        self._require_instance(i)
        return self._memberships[i]

    def is_instance_of(self, i: str, c: str, *, close_equiv: bool = True) -> bool:
        """Membership test closing over subclass descent and, by default,
        equivalence classes.

        ``close_equiv=False`` restricts the check to declared targets within
        the subclass scope alone (no synonym traversal).
        """
        self._require_instance(i)
        self._require_concept(c)
        if i == EPS:
            return c == BOT
        if c == TOP:
            return True
        if c == BOT:
            return False
        scope = {c} | self._descendants[c]
        if close_equiv:
            return any(self._equiv[t] & scope for t in self._memberships[i])
        return any(t in scope for t in self._memberships[i])

    def instances_of(self, c: str, *, close_equiv: bool = True) -> frozenset[str]:
        """All instances of ``c``; contains EPS only for ``c = BOT``."""
        self._require_concept(c)
        return frozenset(i for i in self.instances
                         if self.is_instance_of(i, c, close_equiv=close_equiv))

    def concepts_of(self, i: str) -> frozenset[str]:
        """Declared concepts the instance belongs to (TOP/BOT excluded)."""
        self._require_instance(i)
        return frozenset(c for c in self.declared_concepts
                         if self.is_instance_of(i, c))

    # ----- equality -----

    def canonical_edges(self) -> frozenset[tuple[str, str, str]]:
        """Declared edges with EQUIV-TO orientation normalized and edges that
        merely restate an implicit TOP attachment removed."""
        canon = set()
        for e in self.edges:
            if e.label == EQUIV_TO:
                a, b = sorted((e.source, e.target))
                canon.add((a, EQUIV_TO, b))
            elif e.target == TOP and e.label in (SUBCLASS_OF, INSTANCE_OF):
                continue
            else:
                canon.add((e.source, e.label, e.target))
        return frozenset(canon)

    def same_structure(self, other: "OntologicalGraph") -> bool:
        """Structural equality: same declared ids and same canonical edges.

        The graph name is ignored so that imports from differently named
        carriers can be compared.
        """
        return (self.declared_concepts == other.declared_concepts
                and self.declared_instances == other.declared_instances
                and self.canonical_edges() == other.canonical_edges())

    def __eq__(self, other):
        if not isinstance(other, OntologicalGraph):
            return NotImplemented
        return (self.name == other.name
                and self.declared_concepts == other.declared_concepts
                and self.declared_instances == other.declared_instances
                and self.edges == other.edges)

    def __repr__(self):
        return (f"OntologicalGraph({self.name!r}, "
                f"{len(self.declared_concepts)} concepts, "
                f"{len(self.declared_instances)} instances, "
                f"{len(self.edges)} edges)")


def _find_cycle(subclass_edges) -> list[str] | None:
    """Return one cycle (as a node list) in the declared subclass edges, or
    None when the relation is acyclic."""
    succ: dict[str, list[str]] = {}
    for e in subclass_edges:
        succ.setdefault(e.source, []).append(e.target)
    for outs in succ.values():
        outs.sort()

    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[str, int] = {}
    for start in sorted(succ):
        if color.get(start, WHITE) != WHITE:
            continue
        color[start] = GRAY
        path = [start]
        stack = [iter(succ.get(start, ()))]
        while stack:
            advanced = False
            for nxt in stack[-1]:
                state = color.get(nxt, WHITE)
                if state == GRAY:
                    return path[path.index(nxt):]
                if state == WHITE:
                    color[nxt] = GRAY
                    path.append(nxt)
                    stack.append(iter(succ.get(nxt, ())))
                    advanced = True
                    break
            if not advanced:
                color[path.pop()] = BLACK
                stack.pop()
    return None


def build_graph(name: str,
                concept_decls: Iterable[str],
                instance_decls: Iterable[str],
                edge_decls: Iterable[tuple[str, str, str] | RelationEdge]
                ) -> OntologicalGraph:
    """Build a validated graph from declaration lists.

    Edges are (source, label, target) triples; duplicates collapse.  Raises
    DuplicateIdError, ReservedIdError, UnknownReferenceError, or
    SubclassCycleError on bad declarations.
    """
    return OntologicalGraph(name, concept_decls, instance_decls, edge_decls)
