"""Exception types shared across the package."""

from __future__ import annotations


class PnogError(Exception):
    """Base class for every error this package raises deliberately."""


class ParseError(PnogError):
    """Malformed input text.

    ``line`` is 1-based when the input is line-oriented; ``position`` is a
    0-based character offset for single-expression inputs such as formulas.
    """

    def __init__(self, message: str, *, line: int | None = None,
                 position: int | None = None):
        super().__init__(message)
        self.line = line
        self.position = position


class EmptyInputError(ParseError):
    """Input that contains no tokens at all."""


class DuplicateIdError(PnogError):
    """The same identifier declared more than once."""


class ReservedIdError(PnogError):
    """TOP, BOT, or EPS used where only user identifiers are allowed."""


class UnknownReferenceError(PnogError):
    """A declaration refers to an identifier that was never declared."""


class SubclassCycleError(PnogError):
    """The declared subclass relation is cyclic."""

    def __init__(self, cycle: list[str]):
        self.cycle = list(cycle)
        loop = " -> ".join(self.cycle + self.cycle[:1])
        super().__init__(f"subclass cycle: {loop}")


class UnknownConceptError(PnogError):
    """Lookup of a concept id that is not part of the graph."""


class UnknownInstanceError(PnogError):
    """Lookup of an instance id that is not part of the graph."""


class IriCollisionError(PnogError):
    """Two distinct IRIs would map to the same local identifier."""


class UnknownAliasError(PnogError):
    """A net file refers to a graph alias that no ``use`` line declares."""


class GraphLoadError(PnogError):
    """A graph file referenced by a net could not be loaded."""


class InvalidNetError(PnogError):
    """A net failed structural validation; carries the full report."""

    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:3])
        more = len(self.violations) - 3
        if more > 0:
            head += f"; and {more} more"
        super().__init__(f"net validation failed: {head}")


class UnknownTransitionError(PnogError):
    """A transition id that is not part of the net."""


class NotEnabledError(PnogError):
    """Attempt to fire a transition whose enabling condition fails."""


class ScriptStepNotEnabledError(NotEnabledError):
    """A scripted run hit a step whose transition is not enabled."""

    def __init__(self, step: int, transition: str, reason: str):
        self.step = step
        self.transition = transition
        super().__init__(
            f"script step {step + 1} ({transition}): not enabled: {reason}")
