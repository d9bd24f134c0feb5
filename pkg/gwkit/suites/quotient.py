"""
Quotient-graph suite

Fixed cases: Z/4 rotating C_4 has one vertex with one loop; the half-turn
(Z/2) on C_4 has two vertices joined by a double edge; the two quotients are
not isomorphic because their vertex counts differ. The configured action's
quotient is compared with the orbit oracle, and random finite graphs under the
trivial action must give back the graph itself.
"""

import random
from typing import Any, Dict, Iterable, List

from .. import oracles
from ..graphs import CayleyTreeGraph, FiniteGraph, LineGraph, Multigraph, build_graph
from ..groups import CyclicGroup
from ..types import ActionFamily, ActionSpec, CycleGraphSpec, SuiteName
from ..wreath import GraphAction, build_action, multigraph_iso
from .base import Case, Suite, violation

MAX_RANDOM_GRAPHS = 50
MAX_RANDOM_VERTICES = 8


def c4_rotation() -> GraphAction:
    return build_action(
        ActionSpec(family=ActionFamily.ROTATION), CyclicGroup(4), build_graph(CycleGraphSpec(n=4))
    )


def c4_half_turn() -> GraphAction:
    return build_action(
        ActionSpec(generator_images=[[2, 3, 0, 1]]), CyclicGroup(2), build_graph(CycleGraphSpec(n=4))
    )


def as_multigraph(graph: FiniteGraph) -> Multigraph:
    return Multigraph.from_counts(graph.vertices(), {edge: 1 for edge in graph.edges()})


def random_graph(rng: random.Random) -> FiniteGraph:
    n = rng.randint(1, MAX_RANDOM_VERTICES)
    p = rng.random()
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
    return FiniteGraph(range(n), edges)


class QuotientSuite(Suite):
    """Quotient multigraphs against brute-force orbit enumeration"""

    name = SuiteName.QUOTIENT
    statement = "G\\Gamma has one vertex per vertex orbit and one edge per edge orbit"

    def __init__(self, context: Any):
        super().__init__(context)
        self._configured: str = ""

    def cases(self) -> Iterable[Case]:
        cases: List[Case] = [self.check_rotation, self.check_half_turn, self.check_fixed_iso, self.check_configured]
        cases.extend(self.check for _ in range(min(self.config.samples, MAX_RANDOM_GRAPHS)))
        return cases

    def check_rotation(self, rng: random.Random) -> None:
        q = c4_rotation().quotient_graph()
        if q.vertices != (0,) or q.edges != ((0, 0, 1),):
            raise violation("Z/4 on C_4 should give one vertex with one loop", q.render())

    def check_half_turn(self, rng: random.Random) -> None:
        q = c4_half_turn().quotient_graph()
        if len(q.vertices) != 2 or q.edge_count != 2 or q.multiplicity(*q.vertices) != 2:
            raise violation("the half-turn on C_4 should give two vertices and a double edge", q.render())

    def check_fixed_iso(self, rng: random.Random) -> None:
        decision = multigraph_iso(c4_rotation().quotient_graph(), c4_half_turn().quotient_graph())
        if not decision.is_false or decision.note != "vertex counts 1 vs 2":
            raise violation("the two C_4 quotients should differ in vertex count", str(decision.note))

    def check_configured(self, rng: random.Random) -> None:
        action = self.context.action
        q = action.quotient_graph()
        self._configured = q.render()
        graph = action.graph
        if isinstance(graph, FiniteGraph):
            blocks = action.orbits().blocks
            assert blocks is not None
            if sum(len(b) for b in blocks) != len(graph):
                raise violation("orbit sizes do not add up to the vertex count", q.render())
            if q.edge_count > len(graph.edges()):
                raise violation("more edge orbits than edges", q.render())
            if action.family == ActionFamily.TRIVIAL.value:
                self._expect_iso(q, as_multigraph(graph), "trivial action")
            if action.group.is_finite:
                count, triples = oracles.quotient(action)
                expected = Multigraph.from_counts(range(count), {(a, b): m for a, b, m in triples})
                self._expect_iso(q, expected, "orbit oracle")
        elif isinstance(graph, (LineGraph, CayleyTreeGraph)) and action.is_regular:
            loops = 1 if isinstance(graph, LineGraph) else graph.rank
            if len(q.vertices) != 1 or q.loops(q.vertices[0]) != loops:
                raise violation(f"regular action should give one vertex with {loops} loops", q.render())

    def _expect_iso(self, q: Multigraph, expected: Multigraph, source: str) -> None:
        if len(q.vertices) > 12:
            return
        decision = multigraph_iso(q, expected)
        if not decision.is_true:
            raise violation(f"quotient differs from the {source}: {decision.note}", q.render())
        if len(q.vertices) <= 8 and not oracles.multigraph_isomorphic(q, expected):
            raise violation(f"permutation search disagrees with the {source}", q.render())

    def check(self, rng: random.Random) -> None:
        graph = random_graph(rng)
        action = build_action(ActionSpec(family=ActionFamily.TRIVIAL), CyclicGroup(2), graph)
        q = action.quotient_graph()
        expected = as_multigraph(graph)
        if q != expected:
            raise violation("trivial quotient is not the graph itself", q.render())
        decision = multigraph_iso(q, expected)
        if not decision.is_true or not oracles.multigraph_isomorphic(q, expected):
            raise violation("trivial quotient is not isomorphic to the graph", f"edges={graph.edges()}")
        count, triples = oracles.quotient(action)
        if count != len(graph) or len(triples) != len(graph.edges()):
            raise violation("orbit oracle disagrees on the trivial action", f"edges={graph.edges()}")

    def details(self) -> Dict[str, Any]:
        return {"configured": self._configured}
