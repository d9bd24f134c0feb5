"""
Length Functions and the m-map

A LengthSystem bundles three proper length functions for an action of G on a
graph with vertex group H: word length on G, word length on H, and a vertex
length |v| = min{|g| : g r = v, r an orbit representative}. The m-map sends a
wreath element z = (h, g) to the finitely supported vector

    m(z) = sum over v in supp h of min(|v|, |g^-1 v|) delta_v
         + sum over syllables (v_i, h_i) of |h_i|_H delta_{v_i}

and |z|_f is its l1 norm. All entries are exact nonnegative integers.
"""

import logging
import random
from collections import deque
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Set, Tuple

from .errors import BudgetError, DomainError, PreconditionError, ValidationError
from .graphs import FiniteGraph, Vertex
from .groups import Element, Group
from .wreath import GraphAction, GraphWreathProduct, WreathElement

logger = logging.getLogger(__name__)


class SparseVertexVector:
    """A finitely supported nonnegative integer vector on the vertices"""

    __slots__ = ("_entries",)

    def __init__(self, entries: Optional[Mapping[Vertex, int]] = None):
        clean: Dict[Vertex, int] = {}
        for v, value in (entries or {}).items():
            if value < 0:
                raise ValidationError(f"negative entry {value} at vertex {v}")
            if value:
                clean[v] = int(value)
        self._entries = clean

    @classmethod
    def delta(cls, v: Vertex, value: int = 1) -> "SparseVertexVector":
        return cls({v: value})

    def __getitem__(self, v: Vertex) -> int:
        return self._entries.get(v, 0)

    def __iter__(self) -> Iterator[Vertex]:
        return iter(sorted(self._entries))

    def __len__(self) -> int:
        return len(self._entries)

    def __add__(self, other: "SparseVertexVector") -> "SparseVertexVector":
        out = dict(self._entries)
        for v, value in other._entries.items():
            out[v] = out.get(v, 0) + value
        return SparseVertexVector(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseVertexVector):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(frozenset(self._entries.items()))

    @property
    def support(self) -> FrozenSet[Vertex]:
        return frozenset(self._entries)

    def norm(self) -> int:
        """The l1 norm"""
        return sum(self._entries.values())

    def distance(self, other: "SparseVertexVector") -> int:
        """l1 distance ||self - other||_1"""
        keys = set(self._entries) | set(other._entries)
        return sum(abs(self[v] - other[v]) for v in keys)

    def pushforward(self, fn: Callable[[Vertex], Vertex]) -> "SparseVertexVector":
        """The vector moved along a vertex map; colliding entries are summed"""
        out: Dict[Vertex, int] = {}
        for v, value in self._entries.items():
            w = fn(v)
            out[w] = out.get(w, 0) + value
        return SparseVertexVector(out)

    def as_pairs(self) -> List[Tuple[Vertex, int]]:
        return sorted(self._entries.items())

    def __repr__(self) -> str:
        body = " + ".join(f"{value}*d{v}" for v, value in self.as_pairs())
        return f"SparseVertexVector({body or '0'})"


class LengthSystem:
    """Word lengths on G and H with the orbit-based vertex length"""

    def __init__(self, action: GraphAction, vertex_group: Group):
        self.action = action
        self.acting_group = action.group
        self.vertex_group = vertex_group
        self.representatives = action.orbits().representatives
        self._table: Optional[Dict[Vertex, int]] = None
        if isinstance(action.graph, FiniteGraph):
            self._table = self._vertex_bfs(action.graph)
        elif not action.is_regular:
            raise PreconditionError(f"{action.family} action gives no vertex length on an infinite graph")

    def __repr__(self) -> str:
        return f"LengthSystem({self.action!r}, H={self.vertex_group!r})"

    def _vertex_bfs(self, graph: FiniteGraph) -> Dict[Vertex, int]:
        # g = s g' with |g'| = |g| - 1, so left-applying generators finds every minimum
        maps = self.action._maps
        dist = {r: 0 for r in self.representatives}
        queue = deque(self.representatives)
        while queue:
            u = queue.popleft()
            for forward, backward in maps:
                for w in (forward(u), backward(u)):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        queue.append(w)
        missing = [v for v in graph.vertices() if v not in dist]
        if missing:
            raise BudgetError(f"vertices {missing} unreachable from the orbit representatives")
        logger.debug("%r: vertex lengths %s", self, dist)
        return dist

    def group_length(self, g: Element) -> int:
        return self.acting_group.word_length(g)

    def h_length(self, x: Element) -> int:
        return self.vertex_group.word_length(x)

    def vertex_length(self, v: Vertex) -> int:
        """|v| = min{|g| : g r = v} over orbit representatives r"""
        if self._table is not None:
            if v not in self._table:
                raise DomainError(f"unknown vertex: {v!r}")
            return self._table[v]
        if not self.action.graph.has_vertex(v):
            raise DomainError(f"unknown vertex: {v!r}")
        return self.group_length(self.action.transporter(self.representatives[0], v))

    def graph_ball(self, radius: int) -> FrozenSet[Vertex]:
        """B(Gamma, R): the vertices of length at most R"""
        if radius < 0:
            raise ValidationError("radius must be nonnegative")
        if self._table is not None:
            return frozenset(v for v, d in self._table.items() if d <= radius)
        rep = self.representatives[0]
        return frozenset(self.action.act(g, rep) for g in self.acting_group.ball(radius))

    def verify(self, radius: int, rng: random.Random, samples: int = 200) -> Dict[str, int]:
        """
        Count violations of the three length-function properties

        Checks subadditivity and inversion symmetry of both word lengths,
        |g v| <= |g| + |v|, and that sublevel sets up to `radius` are finite and
        nested. Finite data is checked exhaustively.
        """
        G, H = self.acting_group, self.vertex_group
        violations = {"subadditive_g": 0, "subadditive_h": 0, "symmetric": 0, "action": 0, "sublevel": 0}

        def elements(group: Group) -> List[Element]:
            if group.is_finite:
                return group.elements()
            return [group.random_element(rng, radius) for _ in range(samples)]

        for name, group in (("subadditive_g", G), ("subadditive_h", H)):
            pool = elements(group)
            pairs = (
                [(a, b) for a in pool for b in pool]
                if group.is_finite and len(pool) ** 2 <= samples * 50
                else [(rng.choice(pool), rng.choice(pool)) for _ in range(samples)]
            )
            for a, b in pairs:
                if group.word_length(group.product(a, b)) > group.word_length(a) + group.word_length(b):
                    violations[name] += 1
            for a in pool:
                if group.word_length(a) != group.word_length(group.inverse(a)):
                    violations["symmetric"] += 1
                if (group.word_length(a) == 0) != group.is_identity(a):
                    violations["symmetric"] += 1

        vertices = sorted(self.graph_ball(radius))
        for g in elements(G):
            for v in vertices if self._table is not None else [rng.choice(vertices)]:
                if self.vertex_length(self.action.act(g, v)) > self.group_length(g) + self.vertex_length(v):
                    violations["action"] += 1

        previous: Set[Vertex] = set()
        for r in range(radius + 1):
            ball = self.graph_ball(r)
            if not previous <= ball:
                violations["sublevel"] += 1
            previous = set(ball)
        logger.debug("%r: verify(radius=%d) -> %s", self, radius, violations)
        return violations


def make_lengths(action: GraphAction, vertex_group: Group) -> LengthSystem:
    """
    Build the length system of an action

    Raises:
        PreconditionError: If the action lacks finite isotropy or finitely many orbits
    """
    report = action.hypothesis_report()
    if not report.finite_isotropy.is_true or report.orbit_count is None:
        raise PreconditionError(
            "length functions need finite isotropy and finitely many orbits "
            f"(finite_isotropy={report.finite_isotropy.verdict.value}, orbits={report.orbit_count})"
        )
    return LengthSystem(action, vertex_group)


def m_map(lengths: LengthSystem, z: WreathElement) -> SparseVertexVector:
    """The m-map of a wreath element"""
    wp = z.product
    if wp.action is not lengths.action:
        raise DomainError("wreath element and length system come from different actions")
    G = lengths.acting_group
    g_inv = G.inverse(z.g)
    entries: Dict[Vertex, int] = {}
    for v in wp.gp.support(z.h):
        entries[v] = min(lengths.vertex_length(v), lengths.vertex_length(lengths.action.act(g_inv, v)))
    for s in z.h.syllables:
        entries[s.vertex] = entries.get(s.vertex, 0) + lengths.h_length(s.elem)
    return SparseVertexVector(entries)


def f_length(lengths: LengthSystem, z: WreathElement) -> int:
    """|z|_f = ||m(z)||_1"""
    return m_map(lengths, z).norm()


def syllable_f_length(lengths: LengthSystem, wp: GraphWreathProduct, v: Vertex, x: Element) -> int:
    """|x|_f for x in H_v viewed as the wreath element (x at v, e)"""
    return f_length(lengths, wp.from_h(wp.gp.single(v, x)))


def in_A(elements: Iterable[Element], vertices: Iterable[Vertex], n: int, z: WreathElement) -> bool:
    """
    Membership of z = (h, g) in A(E, F, n)

    True when the normal form of h has at most n syllables, every syllable
    element lies in E and every syllable vertex lies in F or gF.
    """
    if len(z.h) > n:
        return False
    E = list(elements)
    F = frozenset(vertices)
    allowed = F | z.product.action.act_set(z.g, F)
    for s in z.h.syllables:
        if s.vertex not in allowed or s.elem not in E:
            return False
    return True


def sublevel_family(lengths: LengthSystem, c: int) -> Tuple[List[Element], FrozenSet[Vertex], int]:
    """({|x|_H <= C}, B(Gamma, C), C): the A-set every z with |z|_f <= C belongs to"""
    return lengths.vertex_group.ball(c), lengths.graph_ball(c), c
