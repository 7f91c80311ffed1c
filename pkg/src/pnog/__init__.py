"""Petri nets over ontological graphs.

Tokens live in ontologies: a place holds a concept (CMPNOG nets) or an
instance (IMPNOG nets) from the ontological graph bound to it, and arc
formulas select the concept sets that govern enabling.  The package covers
graph and net file formats, an OWL functional-syntax importer, exact
enabling/firing semantics, trace execution, and occurrence-graph analysis.
"""

from .errors import (
    DuplicateIdError,
    EmptyInputError,
    GraphLoadError,
    InvalidNetError,
    IriCollisionError,
    NotEnabledError,
    ParseError,
    PnogError,
    ReservedIdError,
    ScriptStepNotEnabledError,
    SubclassCycleError,
    UnknownAliasError,
    UnknownConceptError,
    UnknownInstanceError,
    UnknownReferenceError,
    UnknownTransitionError,
)
from .ontograph import (
    BOT,
    EPS,
    EQUIV_TO,
    INSTANCE_OF,
    SUBCLASS_OF,
    TOP,
    OntologicalGraph,
    RelationEdge,
    build_graph,
    is_identifier,
)
from .formula import Formula, FormulaKind, denote, format_formula, parse_formula
from .netcore import (
    Marking,
    NetKind,
    Pnog,
    TraceStep,
    Violation,
    disabled_reason,
    enabled,
    enabled_transitions,
    fire,
    format_marking,
    nets_equal,
    run_trace,
    validate_net,
)
from .ontoio import (
    import_owl_functional,
    load_graph_file,
    parse_native_graph,
    serialize_native_graph,
)
from .netfile import parse_netfile, serialize_netfile
from .analysis import (
    OccurrenceGraph,
    build_occurrence_graph,
    export_dot,
    find_deadlocks,
)

__version__ = "0.1.0"
