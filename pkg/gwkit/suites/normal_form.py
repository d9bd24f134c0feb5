"""
Normal-form suite

Random words are normalized and compared with the brute-force rewriting
closure: same canonical sequence, same syllable length and support, the shuffle
class equals the set of all shortest reachable words, and leading syllables
agree with a search of the shuffle class. Instances cycle through the
configured graph product and a catalogue: every labelled graph on three and
four vertices plus a seeded sample of five-vertex graphs, each with the vertex
groups Z/2, Z/3 and Z. One run covers the whole catalogue.
"""

import random
from typing import Any, Dict, Iterable, List

from .. import oracles
from ..graph_product import GraphProduct
from ..graphs import Graph, all_graphs
from ..groups import CyclicGroup, Group, IntegerGroup
from ..types import SuiteName
from .base import Case, Suite, instance_rng, violation

MAX_WORD = 6
SAMPLED_FIVE_VERTEX = 32


def catalogue_groups() -> List[Group]:
    return [CyclicGroup(2), CyclicGroup(3), IntegerGroup()]


class NormalFormSuite(Suite):
    """Canonical normal forms against the rewriting-closure oracle"""

    name = SuiteName.NORMAL_FORM
    statement = "normalize returns the lex-least shortest word of the rewriting closure"

    def __init__(self, context: Any):
        super().__init__(context)
        self._catalogue: List[GraphProduct] = []

    def catalogue(self) -> List[GraphProduct]:
        """The configured product first, then every catalogue graph with every catalogue group"""
        if not self._catalogue:
            rng = instance_rng(self.config.seed, f"{self.name.value}:graphs", 0)
            five = rng.sample(list(all_graphs(5)), SAMPLED_FIVE_VERTEX)
            graphs: List[Graph] = [*all_graphs(3), *all_graphs(4), *five]
            self._catalogue = [
                self.context.gp,
                *(GraphProduct(g, h) for g in graphs for h in catalogue_groups()),
            ]
        return self._catalogue

    def cases(self) -> Iterable[Case]:
        products = self.catalogue()
        for index in range(max(self.config.samples, len(products))):
            gp = products[index % len(products)]
            yield lambda rng, gp=gp: self._check_product(gp, rng)

    def _check_product(self, gp: GraphProduct, rng: random.Random) -> None:
        pool = list(gp.graph.vertices()) if gp.graph.is_finite else self.context.vertex_pool()
        length = rng.randint(0, min(self.config.max_syllables, MAX_WORD))
        word = gp.random_word(rng, length, pool, radius=2)
        a = gp.normalize(word)
        rendered = " ".join(f"{s.vertex}:{gp.group_at(s.vertex).render(s.elem)}" for s in word) or "e"

        forms = oracles.normal_forms(gp, word)
        canonical = min(forms, key=lambda w: tuple(s.vertex for s in w))
        if a.syllables != canonical:
            raise violation(
                "normalize differs from the lex-least normal form",
                f"word={rendered} got={gp.render(a)} expected={gp.render(gp.normalize(canonical))}",
            )
        if not oracles.is_irreducible(gp, a.syllables):
            raise violation("normal form is reducible", f"word={rendered}")
        if len(a) > 8:
            return
        shuffles = gp.shuffle_class(a)
        if set(shuffles) != forms:
            raise violation(
                "shuffle class differs from the set of shortest words",
                f"word={rendered} shuffles={len(shuffles)} shortest={len(forms)}",
            )
        for v in sorted(gp.support(a) | set(rng.sample(pool, min(2, len(pool))))):
            if gp.leading_syllable(a, v) != oracles.leading_syllable(gp, a, v):
                raise violation("leading syllable differs from the shuffle search", f"word={rendered} v={v}")

    def details(self) -> Dict[str, Any]:
        return {"products": len(self.catalogue()), "max_word": MAX_WORD}
