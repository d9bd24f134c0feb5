"""
Mixing-support suite

For k in H_Gamma with finite support S, the set {g : S and g S meet} is
finite under finite isotropy, of size at most |S|^2 max_v |G_v|. The set
returned by GraphAction.mixing_set is compared with a direct filter of G
(finite groups) or of a G-ball large enough to contain every candidate
(regular actions).
"""

import random
from typing import Any, Dict, FrozenSet

from ..errors import InconclusiveError, UnsupportedOperationError
from ..graphs import Vertex
from ..types import SuiteName
from .base import Suite, violation


class MixingSupportSuite(Suite):
    """The mixing set of a finite support is finite and bounded"""

    name = SuiteName.MIXING_SUPPORT
    statement = "|{g : supp k meets g supp k}| <= |supp k|^2 max_v |G_v|"

    def __init__(self, context: Any):
        super().__init__(context)
        self._stabilizer: int = 0
        self._largest = 0

    def _max_stabilizer(self) -> int:
        if not self._stabilizer:
            try:
                self._stabilizer = self.context.action.max_stabilizer_order()
            except UnsupportedOperationError as e:
                raise InconclusiveError(e.message) from e
        return self._stabilizer

    def _support(self, rng: random.Random) -> FrozenSet[Vertex]:
        ctx = self.context
        k = ctx.random_gp(rng)
        support = ctx.gp.support(k)
        if not support:
            support = frozenset([ctx.random_syllable(rng)[0]])
        return support

    def check(self, rng: random.Random) -> None:
        ctx = self.context
        action = ctx.action
        G = ctx.acting_group
        S = self._support(rng)
        bound = len(S) ** 2 * self._max_stabilizer()
        try:
            mixing = action.mixing_set(S)
        except UnsupportedOperationError as e:
            raise InconclusiveError(e.message) from e
        where = f"supp k={sorted(S)}"
        self._largest = max(self._largest, len(mixing))

        if len(mixing) > bound:
            raise violation(f"{len(mixing)} mixing elements exceed |S|^2 max|G_v| = {bound}", where)
        for g in mixing:
            if not S & action.act_set(g, S):
                raise violation(f"{G.render(g)} does not mix the support", where)

        if G.is_finite:
            candidates = G.elements()
        else:
            reach = max((G.word_length(g) for g in mixing), default=0)
            candidates = G.ball(reach + 1, ctx.budget)
        direct = {g for g in candidates if S & action.act_set(g, S)}
        if direct != set(mixing):
            raise violation(
                f"mixing set has {len(mixing)} elements, direct search finds {len(direct)}", where
            )

    def details(self) -> Dict[str, Any]:
        return {"max_stabilizer": self._stabilizer, "largest_mixing_set": self._largest}
