"""
Hypotheses suite

Hypothesis reports against hand-enumerated truth tables:

    action            free   finite isotropy   orbits   fixes star => trivial
    Z/5 on C_5        yes    yes               1        yes
    D_4 on C_4        no     yes               1        yes
    trivial on C_5    yes    yes               5        yes
    Z shift on line   yes    yes               1        yes

Graph predicates (girth, untransvectable, rigid) against the exhaustive
oracles on every graph with at most six vertices (one per isomorphism class,
from the networkx graph atlas), together with two structural facts: a connected
untransvectable graph on three or more vertices has minimum degree >= 2, and
deleting an edge never lowers the girth.
"""

import random
from typing import Any, Dict, Iterable, List, Optional

from .. import oracles
from ..graphs import (
    CayleyTreeGraph,
    FiniteGraph,
    Graph,
    LineGraph,
    atlas_graphs,
    ball_girth_lower_bound,
    ball_rigid,
    ball_untransvectable,
    build_graph,
    check_connected,
    girth,
    is_rigid,
    is_untransvectable,
)
from ..groups import CyclicGroup, Group, IntegerGroup, dihedral_group
from ..types import (
    ActionFamily,
    ActionSpec,
    CycleGraphSpec,
    HypothesisReport,
    SuiteName,
)
from ..wreath import GraphAction, build_action
from .base import Case, Suite, violation

EXHAUSTIVE_VERTICES = 6
BALL_RADIUS = 4


def _action(family: ActionFamily, group: Group, graph: Graph) -> GraphAction:
    return build_action(ActionSpec(family=family), group, graph)


def check_graph(graph: FiniteGraph) -> None:
    """Compare the predicates of one finite graph with the oracles"""
    vertices, edges = list(graph.vertices()), graph.edges()
    where = f"vertices={len(vertices)} edges={edges}"
    g = girth(graph)
    expected = oracles.girth(vertices, edges)
    if g != expected:
        raise violation(f"girth {g} != oracle {expected}", where)

    untransvectable = is_untransvectable(graph)
    if untransvectable.is_true != oracles.untransvectable(vertices, edges):
        raise violation("untransvectable disagrees with the oracle", where)
    if not untransvectable.is_true:
        v, w = untransvectable.witness
        if not graph.neighbors(v) <= graph.star(w):
            raise violation(f"witness ({v}, {w}) does not have Lk(v) inside St(w)", where)

    if all(graph.neighbors(v) for v in vertices):
        rigid = is_rigid(graph)
        if rigid.is_true != oracles.rigid(vertices, edges):
            raise violation("rigid disagrees with the oracle", where)

    if untransvectable.is_true and len(vertices) >= 3 and check_connected(graph).is_true:
        low = min(graph.degree(v) for v in vertices)
        if low < 2:
            raise violation(f"connected untransvectable graph with a vertex of degree {low}", where)

    for edge in edges:
        smaller = FiniteGraph(vertices, [e for e in edges if e != edge])
        if girth(smaller) < g:
            raise violation(f"removing {edge} lowers the girth", where)


class HypothesesSuite(Suite):
    """Hypothesis reports and graph predicates against exhaustive oracles"""

    name = SuiteName.HYPOTHESES
    statement = "freeness, isotropy, orbits, star fixing, girth, untransvectable and rigid flags are exact"

    def __init__(self, context: Any):
        super().__init__(context)
        self._graphs = 0
        self._report: Optional[HypothesisReport] = None

    def cases(self) -> Iterable[Case]:
        cases: List[Case] = [
            self.check_rotation,
            self.check_dihedral,
            self.check_trivial,
            self.check_shift,
            self.check_configured,
            self.check_lazy_predicates,
        ]
        for n in range(1, EXHAUSTIVE_VERTICES + 1):
            cases.append(lambda rng, n=n: self.check_all(n))
        return cases

    def _expect(self, report: HypothesisReport, label: str, free: bool, orbits: int, fixes: bool) -> None:
        where = f"{label}: {report.model_dump_json()}"
        if report.free.is_true != free or report.free.is_inconclusive:
            raise violation(f"free should be {free}", where)
        if not report.finite_isotropy.is_true:
            raise violation("isotropy should be finite", where)
        if report.orbit_count != orbits:
            raise violation(f"orbit count should be {orbits}", where)
        if report.fixes_star_implies_trivial.is_true != fixes or report.fixes_star_implies_trivial.is_inconclusive:
            raise violation(f"fixes-star should be {fixes}", where)
        if not report.connected.is_true or not report.locally_finite.is_true:
            raise violation("graph should be connected and locally finite", where)

    def check_rotation(self, rng: random.Random) -> None:
        c5 = build_graph(CycleGraphSpec(n=5))
        report = _action(ActionFamily.ROTATION, CyclicGroup(5), c5).hypothesis_report()
        self._expect(report, "Z/5 on C_5", free=True, orbits=1, fixes=True)

    def check_dihedral(self, rng: random.Random) -> None:
        group = dihedral_group(4)
        action = _action(ActionFamily.NATURAL, group, build_graph(CycleGraphSpec(n=4)))
        report = action.hypothesis_report()
        self._expect(report, "D_4 on C_4", free=False, orbits=1, fixes=True)
        rendered, v = report.free.witness
        g = group.parse(rendered)
        if v != 0 or group.is_identity(g) or action.act(g, v) != v:
            raise violation("freeness witness should be a reflection fixing 0", str(report.free.witness))

    def check_trivial(self, rng: random.Random) -> None:
        c5 = build_graph(CycleGraphSpec(n=5))
        report = _action(ActionFamily.TRIVIAL, CyclicGroup(1), c5).hypothesis_report()
        self._expect(report, "trivial on C_5", free=True, orbits=5, fixes=True)

    def check_shift(self, rng: random.Random) -> None:
        report = _action(ActionFamily.SHIFT, IntegerGroup(), LineGraph()).hypothesis_report()
        self._expect(report, "Z on the line", free=True, orbits=1, fixes=True)

    def check_configured(self, rng: random.Random) -> None:
        """Internal consistency of the configured action's report"""
        report = self.context.action.hypothesis_report(self.context.budget)
        self._report = report
        where = report.model_dump_json()
        if report.free.is_true and not report.finite_isotropy.is_true:
            raise violation("free action without finite isotropy", where)
        if report.finite_isotropy.is_false and not report.free.is_false:
            raise violation("infinite isotropy but not reported non-free", where)
        if report.free.is_true and report.fixes_star_implies_trivial.is_false:
            raise violation("free action with a nontrivial star fixer", where)
        graph = self.context.graph
        if isinstance(graph, FiniteGraph) and report.orbit_count is not None:
            if not 1 <= report.orbit_count <= len(graph):
                raise violation(f"orbit count {report.orbit_count} out of range", where)

    def check_lazy_predicates(self, rng: random.Random) -> None:
        """Ball certificates on the line and a Cayley tree never refute what holds"""
        for graph in (LineGraph(), CayleyTreeGraph(2)):
            center = graph.base_vertex()
            lower = ball_girth_lower_bound(graph, center, BALL_RADIUS)
            if not lower.is_inconclusive or lower.witness != 2 * BALL_RADIUS + 2:
                raise violation("a tree has no circuit in any ball", f"{graph!r}: {lower.note}")
            for decision in (ball_untransvectable(graph, center, BALL_RADIUS), ball_rigid(graph, center, BALL_RADIUS)):
                if decision.is_false:
                    raise violation("ball predicate refuted on a tree", f"{graph!r}: {decision.note}")

    def check_all(self, n: int) -> None:
        for graph in atlas_graphs(n):
            check_graph(graph)
            self._graphs += 1

    def details(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"graphs": self._graphs}
        if self._report is not None:
            out["configured"] = self._report.model_dump(mode="json")
        return out

