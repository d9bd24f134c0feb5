"""
Length-function suite

The first case runs LengthSystem.verify over the configured radius
(exhaustive on finite data). Every further case samples g, g' in G, x, y in H
and a vertex v and checks subadditivity, inversion symmetry and
|g v| <= |g| + |v|. Word lengths in finite groups are compared with a plain
breadth-first search of the Cayley graph.
"""

import random
from typing import Any, Dict, Iterable

from .. import oracles
from ..errors import InconclusiveError
from ..types import SuiteName
from .base import Case, Suite, violation


class LengthFunctionsSuite(Suite):
    """Word lengths and the vertex length are proper length functions"""

    name = SuiteName.LENGTH_FUNCTIONS
    statement = "|ab| <= |a| + |b| on G and H, |g v| <= |g| + |v|, finite sublevel sets"

    def cases(self) -> Iterable[Case]:
        yield self.check_all
        for _ in range(self.config.samples - 1):
            yield self.check

    def check_all(self, rng: random.Random) -> None:
        lengths = self.context.lengths
        found = lengths.verify(min(self.config.radius, 6), rng, samples=100)
        bad = {k: n for k, n in found.items() if n}
        if bad:
            raise violation("length-function properties fail", str(bad))

    def check(self, rng: random.Random) -> None:
        lengths = self.context.lengths
        for group in (lengths.acting_group, lengths.vertex_group):
            a = group.random_element(rng, self.config.radius)
            b = group.random_element(rng, self.config.radius)
            la, lb = group.word_length(a), group.word_length(b)
            if group.word_length(group.product(a, b)) > la + lb:
                raise violation("word length is not subadditive", f"a={group.render(a)} b={group.render(b)}")
            if group.word_length(group.inverse(a)) != la:
                raise violation("|a^-1| != |a|", f"a={group.render(a)}")
            if group.is_finite and la != oracles.word_length(group, a):
                raise violation("word length differs from Cayley-graph distance", f"a={group.render(a)}")

        g = lengths.acting_group.random_element(rng, self.config.radius)
        v = rng.choice(self.context.vertex_pool())
        gv = lengths.action.act(g, v)
        if lengths.vertex_length(gv) > lengths.group_length(g) + lengths.vertex_length(v):
            raise violation(
                "|g v| > |g| + |v|", f"g={lengths.acting_group.render(g)} v={v} gv={gv}"
            )

    def details(self) -> Dict[str, Any]:
        try:
            lengths = self.context.lengths
        except InconclusiveError:
            return {}
        return {
            "representatives": list(lengths.representatives),
            "ball_sizes": [len(lengths.graph_ball(r)) for r in range(min(self.config.radius, 6) + 1)],
        }
