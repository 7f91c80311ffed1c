"""The arc-formula language: parsing, formatting, and evaluation.

A formula is one of four shapes over a single concept id::

    Passenger        bare concept
    {Passenger}      singleton set
    [Passenger]      equivalence class of the concept
    <Passenger>      strict subclass tree below the concept

Bare and singleton denote the same set; they are kept as distinct shapes
because net validation treats element-valued and set-valued arc positions
differently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import EmptyInputError, ParseError, UnknownConceptError
from .ontograph import OntologicalGraph

_IDENT_AT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")

_CLOSER = {"{": "}", "[": "]", "<": ">"}


class FormulaKind(Enum):
    BARE = "bare"
    SINGLETON = "singleton"
    EQUIV_CLASS = "equiv_class"
    SUBTREE = "subtree"


_BRACKETS = {
    FormulaKind.BARE: ("", ""),
    FormulaKind.SINGLETON: ("{", "}"),
    FormulaKind.EQUIV_CLASS: ("[", "]"),
    FormulaKind.SUBTREE: ("<", ">"),
}

_KIND_BY_OPENER = {"{": FormulaKind.SINGLETON,
                   "[": FormulaKind.EQUIV_CLASS,
                   "<": FormulaKind.SUBTREE}


@dataclass(frozen=True)
class Formula:
    kind: FormulaKind
    concept: str

    @classmethod
    def bare(cls, concept: str) -> "Formula":
        return cls(FormulaKind.BARE, concept)

    @classmethod
    def singleton(cls, concept: str) -> "Formula":
        return cls(FormulaKind.SINGLETON, concept)

    @classmethod
    def equiv_class(cls, concept: str) -> "Formula":
        return cls(FormulaKind.EQUIV_CLASS, concept)

    @classmethod
    def subtree(cls, concept: str) -> "Formula":
        return cls(FormulaKind.SUBTREE, concept)

    def __str__(self):
        return format_formula(self)


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def parse_formula(text: str) -> Formula:
    """Parse one formula; whitespace around the formula and between a bracket
    and the id is tolerated.  Raises ParseError with the 0-based offset of
    the problem, or EmptyInputError for blank input."""
    pos = _skip_ws(text, 0)
    if pos == len(text):
        raise EmptyInputError("empty formula", position=pos)

    opener = text[pos]
    if opener in _CLOSER:
        closer = _CLOSER[opener]
        pos = _skip_ws(text, pos + 1)
        m = _IDENT_AT.match(text, pos)
        if not m:
            raise ParseError(f"expected identifier at position {pos}",
                             position=pos)
        concept = m.group()
        pos = _skip_ws(text, m.end())
        if pos == len(text) or text[pos] != closer:
            raise ParseError(f"expected `{closer}` at position {pos}",
                             position=pos)
        pos = _skip_ws(text, pos + 1)
        kind = _KIND_BY_OPENER[opener]
    else:
        m = _IDENT_AT.match(text, pos)
        if not m:
            raise ParseError(
                f"expected identifier or one of `{{` `[` `<` at position {pos}",
                position=pos)
        concept = m.group()
        pos = _skip_ws(text, m.end())
        kind = FormulaKind.BARE

    if pos != len(text):
        raise ParseError(f"unexpected trailing input at position {pos}",
                         position=pos)
    return Formula(kind, concept)


def format_formula(f: Formula) -> str:
    """Canonical text of a formula; inverse of :func:`parse_formula`."""
    left, right = _BRACKETS[f.kind]
    return f"{left}{f.concept}{right}"


def denote(f: Formula, g: OntologicalGraph) -> frozenset[str]:
    """The concept set a formula stands for against a graph.

    Bare and singleton give the concept itself, the equivalence-class shape
    gives its synonym class, and the subtree shape gives its strict
    descendants (possibly empty for leaves).
    """
    c = f.concept
    if c not in g.concepts:
        raise UnknownConceptError(
            f"formula '{format_formula(f)}' names unknown concept '{c}' "
            f"in graph '{g.name}'")
    if f.kind in (FormulaKind.BARE, FormulaKind.SINGLETON):
        return frozenset({c})
    if f.kind is FormulaKind.EQUIV_CLASS:
        return g.equiv_class(c)
    return g.descendants(c)
