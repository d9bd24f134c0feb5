"""
Commutator sweeps

Exhaustive sweeps over every basis element of bounded syllable length, one
case per (symbol vertex v, syllable vertex w, syllable h):

  * commutator: a nonzero coefficient forces v = w, supports inside St(v) and
    a leading v-syllable in x or x h^-1; on St(v)-supported x the coefficient
    equals f(a h^-1) - f(a); the translate cover of smallness_witness verifies.
  * crossed-commutator: the coefficient at (x, g) is the plain coefficient for
    h moved to g w, nonzero only when v = g w, and for fixed x the nonzero g
    number at most |G_w|.
"""

import random
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Tuple

from ..commutator import (
    DiagSymbol,
    commutator_coeff,
    smallness_witness,
    star_formula,
    sweep_commutator,
    sweep_crossed_commutator,
)
from ..errors import InconclusiveError
from ..graph_product import GPElement
from ..graphs import Vertex
from ..groups import Element
from ..types import SuiteName
from .base import Case, Suite, violation

MAX_RADIUS = 4


def random_symbol(rng: random.Random, v: Vertex, elements: List[Element]) -> DiagSymbol:
    """A random rational symbol on a nonempty subset of H_v"""
    chosen = rng.sample(elements, rng.randint(1, len(elements)))
    return DiagSymbol(v, {x: Fraction(rng.randint(-4, 4) or 1, rng.randint(1, 3)) for x in chosen})


class _SweepSuite(Suite):
    def __init__(self, context: Any):
        super().__init__(context)
        self._basis: List[GPElement] = []
        self._nonzero = 0

    def _require_finite(self) -> None:
        ctx = self.context
        if not ctx.graph.is_finite or not ctx.vertex_group.is_finite:
            raise InconclusiveError("sweeps need a finite graph and a finite vertex group")

    def basis(self) -> List[GPElement]:
        if not self._basis:
            self._basis = self.context.gp.syllable_ball(
                min(self.config.radius, MAX_RADIUS), self.context.budget
            )
        return self._basis

    def triples(self) -> List[Tuple[Vertex, Vertex, Element]]:
        ctx = self.context
        H = ctx.vertex_group
        nontrivial = [x for x in H.elements() if not H.is_identity(x)]
        vertices = ctx.graph.vertices()
        return [(v, w, h) for v in vertices for w in vertices for h in nontrivial]

    def cases(self) -> Iterable[Case]:
        self._require_finite()
        self.basis()
        for v, w, h in self.triples():
            yield lambda rng, v=v, w=w, h=h: self.sweep(rng, v, w, h)

    def sweep(self, rng: random.Random, v: Vertex, w: Vertex, h: Element) -> None:
        raise NotImplementedError

    def details(self) -> Dict[str, Any]:
        return {"basis": len(self._basis), "nonzero_columns": self._nonzero}


class CommutatorSuite(_SweepSuite):
    """Case formula for [f, J u_h J] on the group basis"""

    name = SuiteName.COMMUTATOR
    statement = "[f, J u_h J] is nonzero only when v = w on columns supported in St(v)"

    def sweep(self, rng: random.Random, v: Vertex, w: Vertex, h: Element) -> None:
        ctx = self.context
        gp = ctx.gp
        f = random_symbol(rng, v, ctx.vertex_group.elements())
        star = ctx.graph.star(v)
        for x, term, record in sweep_commutator(f, w, h, self.basis()):
            where = f"v={v} w={w} h={ctx.vertex_group.render(h)} x={record.source}"
            if term.coefficient != 0:
                self._nonzero += 1
                if not (record.same_vertex and record.in_star and record.front_movable):
                    raise violation("nonzero coefficient outside the case condition", where)
            if v == w and gp.support(x) <= star:
                expected = star_formula(f, h, x)
                if term.coefficient != expected:
                    raise violation(f"coefficient {term.coefficient} != closed form {expected}", where)
        if v == w:
            cover = smallness_witness(gp, f, w, h, min(self.config.radius, MAX_RADIUS))
            if cover.checked != len(self.basis()):
                raise violation("translate cover skipped basis elements", f"v={v}")


class CrossedCommutatorSuite(_SweepSuite):
    """Crossed coefficients equal plain coefficients with h moved by g"""

    name = SuiteName.CROSSED_COMMUTATOR
    statement = "([f, J u_{sigma_g(h)} J] x) (x) delta_g, nonzero only when v = g w"

    def _require_finite(self) -> None:
        super()._require_finite()
        if not self.context.acting_group.is_finite:
            raise InconclusiveError("crossed sweeps need a finite acting group")

    def sweep(self, rng: random.Random, v: Vertex, w: Vertex, h: Element) -> None:
        ctx = self.context
        G = ctx.acting_group
        action = ctx.action
        f = random_symbol(rng, v, ctx.vertex_group.elements())
        stabilizer = action.isotropy([w]).pointwise
        assert stabilizer is not None
        nonzero_g: Dict[GPElement, List[Element]] = {}
        for z, term, record in sweep_crossed_commutator(ctx.wreath, f, w, h, self.basis(), G.elements()):
            where = f"v={v} w={w} h={ctx.vertex_group.render(h)} z={record.source}"
            gw = action.act(z.g, w)
            plain = commutator_coeff(f, gw, h, z.h)
            if term.coefficient != plain.coefficient or term.target.h != plain.target:
                raise violation("crossed coefficient differs from the translated plain one", where)
            if not G.equal(term.target.g, z.g):
                raise violation("group part changed", where)
            if G.is_identity(z.g) and term.coefficient != commutator_coeff(f, w, h, z.h).coefficient:
                raise violation("g = e does not reduce to the plain coefficient", where)
            if term.coefficient != 0:
                self._nonzero += 1
                if gw != v:
                    raise violation(f"nonzero coefficient with v != g w = {gw}", where)
                nonzero_g.setdefault(z.h, []).append(z.g)
        for x, gs in nonzero_g.items():
            if len(gs) > len(stabilizer):
                raise violation(
                    f"{len(gs)} nonzero g exceed |G_w| = {len(stabilizer)}", f"x={ctx.gp.render(x)}"
                )
