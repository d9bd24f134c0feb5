"""
gwkit

Exact computations with graph products and graph-wreath products of groups,
and property suites checking their combinatorial identities against
brute-force oracles.

Example:
    >>> from gwkit import Gwkit
    >>>
    >>> kit = Gwkit({
    ...     "graph": {"type": "complete", "n": 2},
    ...     "vertex_group": {"type": "integers"},
    ... })
    >>>
    >>> # Forced cancellation across a commuting pair
    >>> kit.gp.render(kit.normalize("0:1 1:2 0:-1"))
    '1:2'
    >>>
    >>> for report in kit.run():
    ...     print(report.suite.value, report.passed, report.failed)
"""

__version__ = "0.4.1"

# Main client
from .client import Gwkit

# Commutator calculus
from .commutator import (
    DiagSymbol,
    TranslateCover,
    commutator_coeff,
    crossed_commutator_coeff,
    smallness_witness,
)

# Errors
from .errors import (
    BudgetError,
    DomainError,
    GwkitError,
    InconclusiveError,
    PreconditionError,
    PropertyViolationError,
    UnknownVertexError,
    UnsupportedOperationError,
    ValidationError,
)

# Domain objects
from .graph_product import GPElement, GraphProduct, Syllable
from .graphs import (
    CayleyTreeGraph,
    FiniteGraph,
    Graph,
    LineGraph,
    Multigraph,
    build_graph,
    girth,
    is_rigid,
    is_untransvectable,
)
from .groups import (
    CyclicGroup,
    FreeGroup,
    Group,
    IntegerGroup,
    PermutationGroup,
    TableGroup,
    build_group,
    dihedral_group,
    symmetric_group,
)
from .lengths import LengthSystem, SparseVertexVector, f_length, in_A, m_map, make_lengths

# Suites
from .suites import SUITES, Suite, SuiteContext, run_suites

# Types
from .types import (
    ActionFamily,
    ActionSpec,
    Decision,
    HypothesisReport,
    MmapRow,
    PredicateReport,
    RunConfig,
    SuiteName,
    SuiteReport,
    Verdict,
)
from .wreath import (
    GraphAction,
    GraphWreathProduct,
    WreathElement,
    build_action,
    multigraph_iso,
)

__all__ = [
    # Version
    "__version__",
    # Client
    "Gwkit",
    # Graphs
    "Graph",
    "FiniteGraph",
    "LineGraph",
    "CayleyTreeGraph",
    "Multigraph",
    "build_graph",
    "girth",
    "is_untransvectable",
    "is_rigid",
    # Groups
    "Group",
    "CyclicGroup",
    "IntegerGroup",
    "FreeGroup",
    "PermutationGroup",
    "TableGroup",
    "build_group",
    "dihedral_group",
    "symmetric_group",
    # Graph products
    "GraphProduct",
    "GPElement",
    "Syllable",
    # Actions and wreath products
    "GraphAction",
    "GraphWreathProduct",
    "WreathElement",
    "build_action",
    "multigraph_iso",
    # Lengths
    "LengthSystem",
    "SparseVertexVector",
    "make_lengths",
    "m_map",
    "f_length",
    "in_A",
    # Commutators
    "DiagSymbol",
    "TranslateCover",
    "commutator_coeff",
    "crossed_commutator_coeff",
    "smallness_witness",
    # Suites
    "SUITES",
    "Suite",
    "SuiteContext",
    "run_suites",
    # Types
    "ActionFamily",
    "ActionSpec",
    "Decision",
    "HypothesisReport",
    "MmapRow",
    "PredicateReport",
    "RunConfig",
    "SuiteName",
    "SuiteReport",
    "Verdict",
    # Errors
    "GwkitError",
    "ValidationError",
    "DomainError",
    "UnknownVertexError",
    "UnsupportedOperationError",
    "PreconditionError",
    "BudgetError",
    "InconclusiveError",
    "PropertyViolationError",
]
