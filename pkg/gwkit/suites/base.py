"""
Suite plumbing: the shared context built from a RunConfig, deterministic
per-instance seeding, and the tallying runner every suite uses.
"""

import hashlib
import logging
import random
import time
from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from ..errors import BudgetError, InconclusiveError, PreconditionError, PropertyViolationError
from ..graph_product import GPElement, GraphProduct
from ..graphs import Graph, Vertex, build_graph
from ..groups import Element, Group, build_group
from ..lengths import LengthSystem, make_lengths
from ..types import RunConfig, SuiteName, SuiteReport
from ..utils.validation import resolve_budget
from ..wreath import GraphAction, GraphWreathProduct, WreathElement, build_action

logger = logging.getLogger(__name__)

Case = Callable[[random.Random], None]


def instance_seed(seed: int, suite: str, index: int) -> int:
    """64-bit seed of one instance, independent of execution order"""
    digest = hashlib.sha256(f"{seed}:{suite}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def instance_rng(seed: int, suite: str, index: int) -> random.Random:
    return random.Random(instance_seed(seed, suite, index))


class SuiteContext:
    """Graph, groups, action, products and lengths of one configured run"""

    def __init__(self, config: RunConfig):
        self.config = config
        self.budget = resolve_budget(config.budget)
        self.graph: Graph = build_graph(config.graph)
        self.vertex_group: Group = build_group(config.vertex_group)
        self.acting_group: Group = build_group(config.acting_group)
        self.action: GraphAction = build_action(config.action, self.acting_group, self.graph)
        self.wreath = GraphWreathProduct(self.action, self.vertex_group)
        self.gp: GraphProduct = self.wreath.gp
        self._lengths: Optional[LengthSystem] = None
        self._lengths_error: Optional[str] = None
        self._lengths_built = False

    @property
    def lengths(self) -> LengthSystem:
        """
        The action's length system

        Raises:
            InconclusiveError: If the action does not admit one
        """
        if not self._lengths_built:
            self._lengths_built = True
            try:
                self._lengths = make_lengths(self.action, self.vertex_group)
            except PreconditionError as e:
                self._lengths_error = e.message
        if self._lengths is None:
            raise InconclusiveError(f"no length system: {self._lengths_error}")
        return self._lengths

    def vertex_pool(self) -> List[Vertex]:
        """Vertices random instances draw from: all of a finite graph, a ball otherwise"""
        if self.graph.is_finite:
            return list(self.graph.vertices())
        return sorted(self.graph.ball(self.graph.base_vertex(), self.config.radius, self.budget))

    def random_nontrivial(self, group: Group, rng: random.Random, radius: int = 3) -> Element:
        if not group.generators():
            raise InconclusiveError(f"{group!r} is trivial")
        while True:
            x = group.random_element(rng, max(radius, 1))
            if not group.is_identity(x):
                return x

    def random_syllable(self, rng: random.Random) -> Tuple[Vertex, Element]:
        v = rng.choice(self.vertex_pool())
        return v, self.random_nontrivial(self.gp.group_at(v), rng)

    def random_gp(self, rng: random.Random) -> GPElement:
        return self.gp.random_element(rng, self.config.max_syllables, self.vertex_pool())

    def random_wreath(self, rng: random.Random) -> WreathElement:
        return self.wreath.random_element(rng, self.config.max_syllables, self.vertex_pool())


class Suite(ABC):
    """A named family of checks producing one SuiteReport"""

    name: SuiteName
    statement: str

    def __init__(self, context: SuiteContext):
        self.context = context

    @property
    def config(self) -> RunConfig:
        return self.context.config

    def cases(self) -> Iterable[Case]:
        """Random instances by default; exhaustive suites override this"""
        for _ in range(self.config.samples):
            yield self.check

    def check(self, rng: random.Random) -> None:
        raise NotImplementedError

    def details(self) -> Dict[str, Any]:
        return {}

    def run(self) -> SuiteReport:
        """Run every case under its own seed and tally the outcomes"""
        name = self.name.value
        seed = self.config.seed
        started = time.perf_counter()
        passed = failed = inconclusive = 0
        counterexample: Optional[str] = None
        notes: List[str] = []
        logger.info("suite %s: starting (seed=%d)", name, seed)

        try:
            cases = list(self.cases())
        except (InconclusiveError, PreconditionError, BudgetError) as e:
            cases = []
            notes.append(e.message)
            inconclusive = 1

        for index, case in enumerate(cases):
            rng = instance_rng(seed, name, index)
            try:
                case(rng)
                passed += 1
            except PropertyViolationError as e:
                failed += 1
                if counterexample is None:
                    counterexample = f"instance {index}: {e.message}" + (
                        f" [{e.counterexample}]" if e.counterexample else ""
                    )
                    logger.warning("suite %s: %s", name, counterexample)
            except (InconclusiveError, BudgetError, PreconditionError) as e:
                inconclusive += 1
                if len(notes) < 5 and e.message not in notes:
                    notes.append(e.message)

        details = self.details()
        if notes:
            details["notes"] = notes
        report = SuiteReport(
            suite=self.name,
            statement=self.statement,
            total=passed + failed + inconclusive,
            passed=passed,
            failed=failed,
            inconclusive=inconclusive,
            counterexample=counterexample,
            seed=seed,
            details=details,
            wall_time=round(time.perf_counter() - started, 6),
        )
        logger.info(
            "suite %s: %d passed, %d failed, %d inconclusive", name, passed, failed, inconclusive
        )
        return report


def violation(message: str, counterexample: str) -> PropertyViolationError:
    return PropertyViolationError(message, counterexample=counterexample)
