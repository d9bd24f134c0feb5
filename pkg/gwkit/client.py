"""
gwkit Client

Main entry point: a configured graph, graph product, action and wreath product
with the verification suites attached.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Union

from pydantic import ValidationError as PydanticValidationError

from .errors import GwkitError, PreconditionError, ValidationError
from .graph_product import GPElement, GraphProduct
from .graphs import (
    FiniteGraph,
    Graph,
    Multigraph,
    ball_girth_lower_bound,
    ball_rigid,
    ball_untransvectable,
    girth,
    is_rigid,
    is_untransvectable,
)
from .groups import Group
from .lengths import LengthSystem, in_A, m_map, sublevel_family
from .suites import (
    CommutatorSuite,
    CrossedCommutatorSuite,
    HypothesesSuite,
    LengthFunctionsSuite,
    MixingSupportSuite,
    MmapInequalitiesSuite,
    NormalFormSuite,
    QuotientSuite,
    SuiteContext,
    SyllableBoundsSuite,
    run_suites,
)
from .types import (
    Decision,
    HypothesisReport,
    MmapRow,
    PredicateReport,
    RunConfig,
    SuiteName,
    SuiteReport,
)
from .utils.validation import validate_radius
from .wreath import GraphAction, GraphWreathProduct, WreathElement, multigraph_iso

logger = logging.getLogger(__name__)

DEFAULT_PREDICATE_RADIUS = 4


class Gwkit:
    """
    gwkit client

    Builds everything a RunConfig describes once and exposes the element
    commands and the verification suites on top of it.

    Example:
        >>> from gwkit import Gwkit
        >>>
        >>> kit = Gwkit({
        ...     "graph": {"type": "cycle", "n": 5},
        ...     "vertex_group": {"type": "integers"},
        ...     "acting_group": {"type": "cyclic", "n": 5},
        ...     "action": {"family": "rotation"},
        ... })
        >>> kit.gp.render(kit.normalize("0:1 1:2 0:-1"))
        '1:2'
        >>> kit.mmap("0:3 | 1").f_length
        3

    Example from a file:
        >>> kit = Gwkit.from_file("c5.json", seed=7)
        >>> for report in kit.run():
        ...     print(report.suite.value, report.failed)
    """

    def __init__(self, config: Union[RunConfig, Mapping[str, Any]], **overrides: Any):
        """
        Create a client

        Args:
            config: A RunConfig or its JSON-like dict form
            **overrides: RunConfig fields replacing the configured ones
                (seed, samples, radius, out, ...)

        Raises:
            ValidationError: If the configuration is malformed or inconsistent
        """
        self.config = _load_config(config, overrides)
        self.context = SuiteContext(self.config)

        self.normal_form = NormalFormSuite(self.context)
        self.syllable_bounds = SyllableBoundsSuite(self.context)
        self.length_functions = LengthFunctionsSuite(self.context)
        self.mmap_inequalities = MmapInequalitiesSuite(self.context)
        self.commutator = CommutatorSuite(self.context)
        self.crossed_commutator = CrossedCommutatorSuite(self.context)
        self.mixing_support = MixingSupportSuite(self.context)
        self.quotient_suite = QuotientSuite(self.context)
        self.hypotheses = HypothesesSuite(self.context)
        logger.debug("built %r", self)

    @classmethod
    def from_file(cls, path: Union[str, Path], **overrides: Any) -> "Gwkit":
        """
        Create a client from a JSON config file

        Raises:
            ValidationError: If the file is missing, not JSON, or not a valid config
        """
        try:
            raw = json.loads(Path(path).read_text())
        except OSError as e:
            raise ValidationError(f"cannot read config {path}: {e.strerror}", location="config") from e
        except json.JSONDecodeError as e:
            raise ValidationError(f"config {path} is not JSON: {e.msg} (line {e.lineno})", location="config") from e
        if not isinstance(raw, dict):
            raise ValidationError(f"config {path} must hold a JSON object", location="config")
        return cls(raw, **overrides)

    def __repr__(self) -> str:
        return f"Gwkit({self.wreath!r}, seed={self.config.seed})"

    # ------------------------------------------------------------------
    # Built objects
    # ------------------------------------------------------------------

    @property
    def graph(self) -> Graph:
        return self.context.graph

    @property
    def vertex_group(self) -> Group:
        return self.context.vertex_group

    @property
    def acting_group(self) -> Group:
        return self.context.acting_group

    @property
    def action(self) -> GraphAction:
        return self.context.action

    @property
    def wreath(self) -> GraphWreathProduct:
        return self.context.wreath

    @property
    def gp(self) -> GraphProduct:
        return self.context.gp

    @property
    def lengths(self) -> LengthSystem:
        """
        Raises:
            InconclusiveError: If the action lacks finite isotropy or finitely many orbits
        """
        return self.context.lengths

    # ------------------------------------------------------------------
    # Suites
    # ------------------------------------------------------------------

    def run(self, names: Sequence[SuiteName] = ()) -> List[SuiteReport]:
        """Run the selected suites (default: the configured selection)"""
        return run_suites(self.context, names)

    # ------------------------------------------------------------------
    # Element commands
    # ------------------------------------------------------------------

    def normalize(self, word: str) -> GPElement:
        """Canonical normal form of a "v:g v:g ..." word"""
        return self.gp.parse(word)

    def multiply(self, a: str, b: str) -> GPElement:
        return self.gp.multiply(self.gp.parse(a), self.gp.parse(b))

    def element(self, text: str) -> WreathElement:
        """Parse a wreath element "v:h ... | g" """
        return self.wreath.parse(text)

    def mmap(self, text: str) -> MmapRow:
        """
        m-map of a wreath element and its l1 norm |z|_f

        Raises:
            InconclusiveError: If the action admits no length system
        """
        z = self.element(text)
        vector = m_map(self.lengths, z)
        return MmapRow(element=self.wreath.render(z), f_length=vector.norm(), vector=vector.as_pairs())

    def in_a(self, text: str, constant: int) -> bool:
        """Membership of z in A({|x|_H <= C}, B(Gamma, C), C)"""
        validate_radius(constant, "constant")
        elements, vertices, n = sublevel_family(self.lengths, constant)
        return in_A(elements, vertices, n, self.element(text))

    def quotient(self) -> Multigraph:
        """
        Raises:
            InconclusiveError: If orbit data on an infinite graph cannot be certified
        """
        return self.action.quotient_graph()

    def iso(self, other: "Gwkit") -> Decision:
        """Decide whether this quotient and another client's quotient are isomorphic"""
        return multigraph_iso(self.quotient(), other.quotient())

    def predicates(self, radius: Optional[int] = None) -> PredicateReport:
        """
        Girth, untransvectable and rigid for the configured graph

        Finite graphs are decided exactly; lazy graphs get ball-restricted
        certificates around the base vertex, where only refutations are exact.
        """
        g = self.graph
        if isinstance(g, FiniteGraph):
            value = girth(g)
            circuit = Decision.of(True, witness="inf" if value == math.inf else value, note="exact")
            return PredicateReport(
                girth=circuit,
                untransvectable=is_untransvectable(g),
                rigid=_rigid_or_unknown(lambda: is_rigid(g)),
            )
        r = DEFAULT_PREDICATE_RADIUS if radius is None else radius
        validate_radius(r)
        center = g.base_vertex()
        return PredicateReport(
            girth=ball_girth_lower_bound(g, center, r),
            untransvectable=ball_untransvectable(g, center, r),
            rigid=_rigid_or_unknown(lambda: ball_rigid(g, center, r)),
        )

    def report(self) -> HypothesisReport:
        """Hypothesis report of the configured action"""
        return self.action.hypothesis_report(self.context.budget)


def _rigid_or_unknown(decide: Callable[[], Decision]) -> Decision:
    try:
        decision = decide()
    except PreconditionError as e:
        return Decision.unknown(e.message)
    return decision


def _load_config(config: Union[RunConfig, Mapping[str, Any]], overrides: Dict[str, Any]) -> RunConfig:
    updates = {k: v for k, v in overrides.items() if v is not None}
    try:
        if isinstance(config, RunConfig):
            if not updates:
                return config
            return RunConfig.model_validate({**config.model_dump(), **updates})
        return RunConfig.model_validate({**config, **updates})
    except PydanticValidationError as e:
        raise GwkitError.from_pydantic(e, "config") from e
