"""
m-map inequality suite

For random z = (h, g), a syllable x at v and k in G, checks exactly:

    ||m(xz) - m(z)||_1 <= |x|_f        ||m(zx) - m(z)||_1 <= |x|_f
    ||m(kz) - k.m(z)||_1 <= |k| |supp h|      ||m(zk) - m(z)||_1 <= |k| |supp h|

and, for every configured constant C,

    |z|_f <= C          implies  z in A({|.|_H <= C}, B(Gamma, C), C)
    |z|_f <= C |supp h| implies  |supp h| <= 4 |B(Gamma, 2C)|

plus independence of m(z) from the normal form used to read it off.
"""

import random
from typing import Any, Dict, FrozenSet, List, Tuple

from ..graphs import Vertex
from ..groups import Element
from ..lengths import LengthSystem, SparseVertexVector, in_A, m_map, sublevel_family, syllable_f_length
from ..types import SuiteName
from ..wreath import WreathElement
from .base import Suite, violation


class MmapInequalitiesSuite(Suite):
    """Exact l1 inequalities for the m-map"""

    name = SuiteName.MMAP_INEQUALITIES
    statement = "m-map perturbation bounds and the sublevel-set claims, exact integers"

    def __init__(self, context: Any):
        super().__init__(context)
        self._families: Dict[int, Tuple[List[Element], FrozenSet[Vertex], int]] = {}
        self._ball_sizes: Dict[int, int] = {}

    def _family(self, lengths: LengthSystem, c: int) -> Tuple[List[Element], FrozenSet[Vertex], int]:
        if c not in self._families:
            self._families[c] = sublevel_family(lengths, c)
        return self._families[c]

    def _ball_at_least(self, lengths: LengthSystem, radius: int, needed: int) -> bool:
        """|B(Gamma, radius)| >= needed, growing the radius only as far as required"""
        for r in range(radius + 1):
            if r not in self._ball_sizes:
                self._ball_sizes[r] = len(lengths.graph_ball(r))
            if self._ball_sizes[r] >= needed:
                return True
        return False

    def check(self, rng: random.Random) -> None:
        ctx = self.context
        lengths = ctx.lengths
        wp = ctx.wreath
        G = ctx.acting_group
        z = ctx.random_wreath(rng)
        v, x = ctx.random_syllable(rng)
        k = G.random_element(rng, self.config.radius)
        mz = m_map(lengths, z)
        supp = len(wp.gp.support(z.h))
        where = f"z={wp.render(z)} x={v}:{ctx.vertex_group.render(x)} k={G.render(k)}"

        x_el = wp.from_h(wp.gp.single(v, x))
        x_f = syllable_f_length(lengths, wp, v, x)
        if x_f != lengths.vertex_length(v) + lengths.h_length(x):
            raise violation("|x|_f differs from |v| + |x|_H", where)
        for label, moved in (("xz", wp.multiply(x_el, z)), ("zx", wp.multiply(z, x_el))):
            gap = m_map(lengths, moved).distance(mz)
            if gap > x_f:
                raise violation(f"||m({label}) - m(z)|| = {gap} > |x|_f = {x_f}", where)

        k_el = wp.from_g(k)
        bound = lengths.group_length(k) * supp
        pushed = mz.pushforward(lengths.action.vertex_map(k))
        if len(pushed) != len(mz):
            raise violation("pushforward along a bijection merged entries", where)
        gap = m_map(lengths, wp.multiply(k_el, z)).distance(pushed)
        if gap > bound:
            raise violation(f"||m(kz) - k.m(z)|| = {gap} > |k| |supp h| = {bound}", where)
        gap = m_map(lengths, wp.multiply(z, k_el)).distance(mz)
        if gap > bound:
            raise violation(f"||m(zk) - m(z)|| = {gap} > |k| |supp h| = {bound}", where)

        f = mz.norm()
        for c in self.config.constants:
            if f <= c:
                elements, vertices, n = self._family(lengths, c)
                if not in_A(elements, vertices, n, z):
                    raise violation(f"|z|_f = {f} <= {c} but z is outside the sublevel A-set", where)
            if f <= c * supp and not self._ball_at_least(lengths, 2 * c, (supp + 3) // 4):
                raise violation(f"|supp h| = {supp} > 4 |B(Gamma, {2 * c})|", where)

        if 0 < len(z.h) <= 8:
            self._check_shuffle_invariance(lengths, z, mz, rng, where)

    def _check_shuffle_invariance(
        self, lengths: LengthSystem, z: WreathElement, mz: SparseVertexVector, rng: random.Random, where: str
    ) -> None:
        gp = z.product.gp
        shuffles = sorted(gp.shuffle_class(z.h), key=lambda w: tuple(s.vertex for s in w))
        word = rng.choice(shuffles)
        g_inv = lengths.acting_group.inverse(z.g)
        entries: Dict[Vertex, int] = {}
        for s in word:
            if s.vertex not in entries:
                entries[s.vertex] = min(
                    lengths.vertex_length(s.vertex),
                    lengths.vertex_length(lengths.action.act(g_inv, s.vertex)),
                )
            entries[s.vertex] += lengths.h_length(s.elem)
        if SparseVertexVector(entries) != mz:
            raise violation("m(z) depends on the normal form", where)

    def details(self) -> Dict[str, Any]:
        return {"constants": list(self.config.constants)}
