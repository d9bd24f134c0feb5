"""
Syllable-length bounds suite

For a single syllable g at v and a random h: ||h|| - 1 <= ||g h|| <= ||h|| + 1,
and g h (and h g) has one of the three shapes prepend / merge / cancel.
Also checks a (b c) = (a b) c and a a^-1 = e on the same instances. The first
cases compare syllable lengths with a breadth-first search for the shortest
product of syllables, exhaustively over every element of presentation length
at most four, on the configured product when its data is finite and on a
small finite catalogue.
"""

import random
from collections import Counter
from typing import Any, Dict, Iterable, List

from .. import oracles
from ..graph_product import GraphProduct
from ..graphs import build_graph
from ..groups import CyclicGroup
from ..types import SuiteName
from .base import Case, Suite, violation

PRESENTATION_RADIUS = 4


def presentation_catalogue() -> List[GraphProduct]:
    return [
        GraphProduct(build_graph({"type": "path", "n": 3}), CyclicGroup(2)),
        GraphProduct(build_graph({"type": "path", "n": 3}), CyclicGroup(3)),
        GraphProduct(build_graph({"type": "cycle", "n": 4}), CyclicGroup(2)),
    ]


def has_finite_data(gp: GraphProduct) -> bool:
    return gp.graph.is_finite and all(gp.group_at(v).is_finite for v in gp.graph.vertices())


def check_presentations(gp: GraphProduct, budget: int, radius: int = PRESENTATION_RADIUS) -> int:
    """
    Compare ||x|| with the shortest presentation of x for every x with at
    most `radius` syllables, in both directions

    Returns:
        The number of elements compared
    """
    shortest = oracles.presentation_lengths(gp, radius)
    ball = gp.syllable_ball(radius, budget)
    for x in ball:
        k = shortest.get(oracles.canonical_form(gp, x.syllables))
        if k != len(x):
            raise violation(
                "syllable length differs from the shortest presentation",
                f"x={gp.render(x)} shortest={k}",
            )
    if len(shortest) != len(ball):
        raise violation(
            f"{len(shortest)} elements have a presentation of length <= {radius} "
            f"but the syllable ball holds {len(ball)}",
            repr(gp),
        )
    return len(ball)


class SyllableBoundsSuite(Suite):
    """One-syllable products change the syllable length by at most one"""

    name = SuiteName.SYLLABLE_BOUNDS
    statement = "||h|| - 1 <= ||g h|| <= ||h|| + 1 for a single syllable g"

    def __init__(self, context: Any):
        super().__init__(context)
        self._shapes: Counter[str] = Counter()
        self._presented = 0

    def cases(self) -> Iterable[Case]:
        products = presentation_catalogue()
        if has_finite_data(self.context.gp):
            products.insert(0, self.context.gp)
        for gp in products:
            yield lambda rng, gp=gp: self.check_product_presentations(gp)
        for _ in range(self.config.samples):
            yield self.check

    def check_product_presentations(self, gp: GraphProduct) -> None:
        self._presented += check_presentations(gp, self.context.budget)

    def check(self, rng: random.Random) -> None:
        gp = self.context.gp
        v, g = self.context.random_syllable(rng)
        h = self.context.random_gp(rng)
        single = gp.single(v, g)
        where = f"g={v}:{gp.group_at(v).render(g)} h={gp.render(h)}"

        for product in (gp.multiply(single, h), gp.multiply(h, single)):
            if not len(h) - 1 <= len(product) <= len(h) + 1:
                raise violation(
                    f"syllable length {len(product)} outside [{len(h) - 1}, {len(h) + 1}]", where
                )
        self._shapes[gp.left_shape(v, g, h)] += 1
        self._shapes["right-" + gp.right_shape(h, v, g)] += 1

        c = self.context.random_gp(rng)
        if gp.multiply(gp.multiply(single, h), c) != gp.multiply(single, gp.multiply(h, c)):
            raise violation("multiplication is not associative", f"{where} c={gp.render(c)}")
        if not gp.multiply(h, gp.invert(h)).is_identity:
            raise violation("h h^-1 is not the identity", where)
        if gp.invert(gp.invert(h)) != h:
            raise violation("inversion is not an involution", where)

    def details(self) -> Dict[str, Any]:
        return {"shapes": dict(sorted(self._shapes.items())), "presented": self._presented}
