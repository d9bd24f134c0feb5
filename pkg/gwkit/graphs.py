"""
Graphs

Finite graphs (stored as frozen networkx graphs) and lazily generated infinite
families, neighborhood operators, and the graph predicates used as hypotheses
on graph products.

Vertices are always integers. Lazy families fix a canonical injective encoding
of their natural labels into integers: the line uses the integers themselves,
the Cayley tree of F_n ranks reduced words by length, then lexicographically.

Example:
    >>> from gwkit.graphs import build_graph, girth, is_rigid
    >>> c5 = build_graph({"type": "cycle", "n": 5})
    >>> c5.neighbors(0)
    frozenset({1, 4})
    >>> girth(c5)
    5
    >>> is_rigid(c5).is_true
    True
"""

import math
from abc import ABC, abstractmethod
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

import networkx as nx
from pydantic import TypeAdapter
from pydantic import ValidationError as PydanticValidationError

from .errors import (
    BudgetError,
    GwkitError,
    PreconditionError,
    UnknownVertexError,
    UnsupportedOperationError,
    ValidationError,
)
from .types import (
    CayleyTreeGraphSpec,
    CompleteGraphSpec,
    CycleGraphSpec,
    Decision,
    FiniteGraphSpec,
    GraphSpec,
    LineGraphSpec,
    PathGraphSpec,
    TreeGraphSpec,
)

Vertex = int
Girth = Union[int, float]

_GRAPH_SPEC: TypeAdapter[Any] = TypeAdapter(GraphSpec)


class Graph(ABC):
    """A simple graph with integer vertices and finite neighbor sets"""

    kind: str = "graph"

    @property
    @abstractmethod
    def key(self) -> Tuple[Any, ...]:
        """Hashable identity of the graph"""

    @property
    @abstractmethod
    def is_finite(self) -> bool:
        ...

    @abstractmethod
    def has_vertex(self, v: Any) -> bool:
        ...

    @abstractmethod
    def _link(self, v: Vertex) -> FrozenSet[Vertex]:
        ...

    def neighbors(self, v: Vertex) -> FrozenSet[Vertex]:
        """Lk(v): the vertices adjacent to v"""
        if not self.has_vertex(v):
            raise UnknownVertexError(v)
        return self._link(v)

    def star(self, v: Vertex) -> FrozenSet[Vertex]:
        """St(v) = Lk(v) together with v"""
        return self.neighbors(v) | {v}

    def common_link(self, vertices: Iterable[Vertex]) -> FrozenSet[Vertex]:
        """Lk(E): vertices adjacent to every vertex of E"""
        vs = list(vertices)
        if not vs:
            raise PreconditionError("common_link needs a nonempty vertex set")
        result = self.neighbors(vs[0])
        for v in vs[1:]:
            result = result & self.neighbors(v)
        return result

    def adjacent(self, v: Vertex, w: Vertex) -> bool:
        return w in self.neighbors(v)

    def vertices(self) -> Tuple[Vertex, ...]:
        raise UnsupportedOperationError(f"{self.kind} graph has infinitely many vertices")

    def edges(self) -> List[Tuple[Vertex, Vertex]]:
        raise UnsupportedOperationError(f"{self.kind} graph has infinitely many edges")

    def base_vertex(self) -> Vertex:
        """A fixed vertex to center balls on"""
        return 0

    def label(self, v: Vertex) -> str:
        """Human-readable vertex label"""
        return str(v)

    def ball(self, center: Vertex, radius: int, budget: int = 100_000) -> FrozenSet[Vertex]:
        """Vertices within graph distance `radius` of `center`"""
        if not self.has_vertex(center):
            raise UnknownVertexError(center)
        seen = {center}
        frontier = [center]
        for _ in range(radius):
            nxt = []
            for u in frontier:
                for w in self._link(u):
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            if len(seen) > budget:
                raise BudgetError(f"ball of radius {radius} exceeds {budget} vertices", budget)
            frontier = nxt
        return frozenset(seen)

    def restrict(self, vertices: Iterable[Vertex]) -> "FiniteGraph":
        """The finite induced subgraph on the given vertices"""
        vs = sorted(set(vertices))
        for v in vs:
            if not self.has_vertex(v):
                raise UnknownVertexError(v)
        inside = set(vs)
        edges = [(v, w) for v in vs for w in self._link(v) if w in inside and v < w]
        return FiniteGraph(vs, edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}{self.key[1:]}"


class FiniteGraph(Graph):
    """A finite simple graph, stored as a frozen networkx graph"""

    kind = "finite"

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Tuple[Vertex, Vertex]]):
        g = nx.Graph()
        g.add_nodes_from(vertices)
        for v, w in edges:
            if v == w:
                raise ValidationError(f"self-loop at vertex {v}")
            g.add_edge(v, w)
        for v in g.nodes:
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValidationError(f"vertex identifiers must be integers, got {v!r}")
        self._nx = nx.freeze(g)
        self._vertices = tuple(sorted(g.nodes))
        self._links: Dict[Vertex, FrozenSet[Vertex]] = {
            v: frozenset(g.adj[v]) for v in self._vertices
        }
        self._key = ("finite", self._vertices, tuple(self.edges()))

    @property
    def key(self) -> Tuple[Any, ...]:
        return self._key

    @property
    def is_finite(self) -> bool:
        return True

    def has_vertex(self, v: Any) -> bool:
        return v in self._links

    def _link(self, v: Vertex) -> FrozenSet[Vertex]:
        return self._links[v]

    def vertices(self) -> Tuple[Vertex, ...]:
        return self._vertices

    def edges(self) -> List[Tuple[Vertex, Vertex]]:
        return sorted((min(v, w), max(v, w)) for v, w in self._nx.edges)

    def degree(self, v: Vertex) -> int:
        return len(self.neighbors(v))

    def base_vertex(self) -> Vertex:
        if not self._vertices:
            raise PreconditionError("empty graph has no base vertex")
        return self._vertices[0]

    def to_networkx(self) -> nx.Graph:
        """A mutable networkx copy"""
        return nx.Graph(self._nx)

    def __len__(self) -> int:
        return len(self._vertices)

    def __repr__(self) -> str:
        return f"FiniteGraph(vertices={len(self._vertices)}, edges={self._nx.number_of_edges()})"


class LineGraph(Graph):
    """The bi-infinite line: vertices are the integers, n adjacent to n +- 1"""

    kind = "line"

    @property
    def key(self) -> Tuple[Any, ...]:
        return ("line",)

    @property
    def is_finite(self) -> bool:
        return False

    def has_vertex(self, v: Any) -> bool:
        return isinstance(v, int) and not isinstance(v, bool)

    def _link(self, v: Vertex) -> FrozenSet[Vertex]:
        return frozenset((v - 1, v + 1))


# ============================================================================
# Reduced words, shared with the free-group backend and the left action
# ============================================================================

Letters = Tuple[int, ...]


def letter_order(letter: int) -> int:
    """Order a < a^-1 < b < b^-1 < ... on signed generator indices"""
    return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)


def reduce_letters(letters: Iterable[int]) -> Letters:
    """Freely reduce a word of signed generator indices"""
    out: List[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def render_letters(letters: Letters) -> str:
    if not letters:
        return "e"
    return "".join(
        chr(ord("a") + abs(x) - 1) + ("" if x > 0 else "^-1") for x in letters
    )


def _alphabet(rank: int) -> List[int]:
    return sorted((s * i for i in range(1, rank + 1) for s in (1, -1)), key=letter_order)


def _words_of_length(rank: int, length: int) -> int:
    if length == 0:
        return 1
    return 2 * rank * (2 * rank - 1) ** (length - 1)


def rank_word(letters: Letters, rank: int) -> int:
    """Length-then-lexicographic rank of a reduced word"""
    offset = sum(_words_of_length(rank, k) for k in range(len(letters)))
    alphabet = _alphabet(rank)
    index = 0
    prev: Optional[int] = None
    for i, x in enumerate(letters):
        allowed = [y for y in alphabet if prev is None or y != -prev]
        place = (2 * rank - 1) ** (len(letters) - 1 - i)
        index += allowed.index(x) * place
        prev = x
    return offset + index


def unrank_word(index: int, rank: int) -> Letters:
    """Inverse of rank_word"""
    if index < 0:
        raise UnknownVertexError(index)
    length = 0
    while index >= _words_of_length(rank, length):
        index -= _words_of_length(rank, length)
        length += 1
    alphabet = _alphabet(rank)
    out: List[int] = []
    for i in range(length):
        allowed = [y for y in alphabet if not out or y != -out[-1]]
        place = (2 * rank - 1) ** (length - 1 - i)
        digit, index = divmod(index, place)
        out.append(allowed[digit])
    return tuple(out)


class CayleyTreeGraph(Graph):
    """Cayley graph of the free group F_rank; vertex ids are ranks of reduced words"""

    kind = "cayley_tree"

    def __init__(self, rank: int):
        if rank < 1:
            raise ValidationError("cayley_tree rank must be at least 1")
        self.rank = rank
        self._alphabet = _alphabet(rank)

    @property
    def key(self) -> Tuple[Any, ...]:
        return ("cayley_tree", self.rank)

    @property
    def is_finite(self) -> bool:
        return False

    def has_vertex(self, v: Any) -> bool:
        return isinstance(v, int) and not isinstance(v, bool) and v >= 0

    def word(self, v: Vertex) -> Letters:
        return unrank_word(v, self.rank)

    def vertex(self, letters: Iterable[int]) -> Vertex:
        return rank_word(reduce_letters(letters), self.rank)

    def _link(self, v: Vertex) -> FrozenSet[Vertex]:
        w = self.word(v)
        return frozenset(self.vertex(w + (x,)) for x in self._alphabet)

    def label(self, v: Vertex) -> str:
        return render_letters(self.word(v))


# ============================================================================
# Construction
# ============================================================================


def _regular_tree_ball(degree: int, radius: int) -> FiniteGraph:
    edges: List[Tuple[int, int]] = []
    frontier = [0]
    count = 1
    for depth in range(radius):
        nxt = []
        for parent in frontier:
            children = degree if depth == 0 else degree - 1
            for _ in range(children):
                edges.append((parent, count))
                nxt.append(count)
                count += 1
        frontier = nxt
    return FiniteGraph(range(count), edges)


def _from_adjacency(adjacency: Mapping[int, List[int]], extra: Iterable[int]) -> FiniteGraph:
    for v, nbrs in sorted(adjacency.items()):
        for w in nbrs:
            if w == v:
                raise ValidationError(f"self-loop at vertex {v}")
            if v not in adjacency.get(w, ()):
                raise ValidationError(
                    f"asymmetric adjacency: {v} -> {w} but not {w} -> {v}",
                    location=f"adjacency.{v}",
                )
    vertices = set(adjacency) | set(extra)
    edges = [(v, w) for v, nbrs in adjacency.items() for w in nbrs if v < w]
    return FiniteGraph(vertices, edges)


def build_graph(spec: Union[Mapping[str, Any], Any]) -> Graph:
    """
    Build a graph from a GraphSpec or its dict form

    Args:
        spec: A graph spec model or its JSON-like dict form

    Returns:
        The constructed graph; finite specs are fully validated

    Raises:
        ValidationError: If the description is malformed or the adjacency is not simple
    """
    if isinstance(spec, Mapping):
        try:
            spec = _GRAPH_SPEC.validate_python(spec)
        except PydanticValidationError as e:
            raise GwkitError.from_pydantic(e, "graph") from e

    if isinstance(spec, FiniteGraphSpec):
        extra = spec.vertices or []
        if spec.adjacency is not None:
            graph = _from_adjacency(spec.adjacency, extra)
            if spec.edges is not None:
                other = FiniteGraph(set(extra) | {x for e in spec.edges for x in e}, spec.edges)
                if other.edges() != graph.edges():
                    raise ValidationError("'edges' and 'adjacency' describe different graphs")
            return graph
        edges = spec.edges or []
        return FiniteGraph(set(extra) | {x for e in edges for x in e}, edges)
    if isinstance(spec, CycleGraphSpec):
        return FiniteGraph(range(spec.n), nx.cycle_graph(spec.n).edges)
    if isinstance(spec, PathGraphSpec):
        return FiniteGraph(range(spec.n), nx.path_graph(spec.n).edges)
    if isinstance(spec, CompleteGraphSpec):
        return FiniteGraph(range(spec.n), nx.complete_graph(spec.n).edges)
    if isinstance(spec, TreeGraphSpec):
        return _regular_tree_ball(spec.degree, spec.radius)
    if isinstance(spec, LineGraphSpec):
        return LineGraph()
    if isinstance(spec, CayleyTreeGraphSpec):
        return CayleyTreeGraph(spec.rank)
    raise ValidationError(f"unsupported graph spec: {spec!r}")


# ============================================================================
# Operations
# ============================================================================


def neighbors(g: Graph, v: Vertex) -> FrozenSet[Vertex]:
    return g.neighbors(v)


def star(g: Graph, v: Vertex) -> FrozenSet[Vertex]:
    return g.star(v)


def common_link(g: Graph, vertices: Iterable[Vertex]) -> FrozenSet[Vertex]:
    return g.common_link(vertices)


def _require_finite(g: Graph, what: str) -> FiniteGraph:
    if not isinstance(g, FiniteGraph):
        raise UnsupportedOperationError(f"{what} is only defined for finite graphs")
    return g


def girth(g: Graph) -> Girth:
    """Length of the shortest circuit; math.inf for forests"""
    fg = _require_finite(g, "girth")
    value = nx.girth(fg.to_networkx())
    return math.inf if value == math.inf else int(value)


def is_untransvectable(g: Graph) -> Decision:
    """
    Check that Lk(v) is not contained in St(w) for every pair v != w

    Non-adjacent pairs are searched before adjacent ones, each in increasing
    (v, w) order, so the reported witness is deterministic.
    """
    fg = _require_finite(g, "is_untransvectable")
    vs = fg.vertices()
    for want_adjacent in (False, True):
        for v in vs:
            link = fg.neighbors(v)
            for w in vs:
                if w == v or (w in link) != want_adjacent:
                    continue
                if link <= fg.star(w):
                    return Decision.of(False, witness=(v, w), note=f"Lk({v}) is inside St({w})")
    return Decision.of(True, note=f"checked {len(vs) * (len(vs) - 1)} ordered pairs")


def is_rigid(g: Graph) -> Decision:
    """Check Lk(Lk v) = {v} for every vertex"""
    fg = _require_finite(g, "is_rigid")
    for v in fg.vertices():
        if not fg.neighbors(v):
            raise PreconditionError(f"vertex {v} is isolated; Lk(Lk {v}) is undefined")
    for v in fg.vertices():
        second = fg.common_link(fg.neighbors(v))
        if second != {v}:
            return Decision.of(False, witness=v, note=f"Lk(Lk {v}) = {sorted(second)}")
    return Decision.of(True, note=f"checked {len(fg)} vertices")


def check_connected(g: Graph, root: Optional[Vertex] = None, budget: int = 10_000) -> Decision:
    """Connectivity: exact for finite graphs, BFS within budget for lazy ones"""
    if isinstance(g, FiniteGraph):
        if len(g) == 0:
            return Decision.of(True, note="empty graph")
        return Decision.of(nx.is_connected(g.to_networkx()), note="exact")

    start = g.base_vertex() if root is None else root
    seen = {start}
    queue = deque([start])
    while queue and len(seen) < budget:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    note = f"verified within budget: BFS reached {len(seen)} vertices"
    if isinstance(g, (LineGraph, CayleyTreeGraph)):
        return Decision.of(True, note=f"connected by construction; {note}")
    return Decision.unknown(note)


def is_locally_finite(g: Graph) -> Decision:
    """Every graph built here reports finite neighbor sets by construction"""
    if isinstance(g, FiniteGraph):
        return Decision.of(True, note="finite graph")
    return Decision.of(True, note=f"{g.kind} family is locally finite by construction")


# ============================================================================
# Multigraphs
# ============================================================================


@dataclass(frozen=True)
class Multigraph:
    """A finite multigraph; loops and parallel edges allowed"""

    vertices: Tuple[Vertex, ...]
    edges: Tuple[Tuple[Vertex, Vertex, int], ...] = field(default=())

    def __post_init__(self) -> None:
        known = set(self.vertices)
        seen = set()
        for a, b, m in self.edges:
            if a not in known or b not in known:
                raise ValidationError(f"edge ({a}, {b}) has an unknown endpoint")
            if m < 1:
                raise ValidationError(f"edge ({a}, {b}) has nonpositive multiplicity {m}")
            pair = (min(a, b), max(a, b))
            if pair in seen:
                raise ValidationError(f"edge ({a}, {b}) listed twice")
            seen.add(pair)

    @classmethod
    def from_counts(cls, vertices: Iterable[Vertex], counts: Mapping[Tuple[int, int], int]) -> "Multigraph":
        normalized: Counter[Tuple[int, int]] = Counter()
        for (a, b), m in counts.items():
            normalized[(min(a, b), max(a, b))] += m
        return cls(
            tuple(sorted(vertices)),
            tuple((a, b, m) for (a, b), m in sorted(normalized.items()) if m),
        )

    def multiplicity(self, a: Vertex, b: Vertex) -> int:
        pair = (min(a, b), max(a, b))
        for x, y, m in self.edges:
            if (x, y) == pair:
                return m
        return 0

    def loops(self, a: Vertex) -> int:
        return self.multiplicity(a, a)

    @property
    def edge_count(self) -> int:
        return sum(m for _, _, m in self.edges)

    def to_networkx(self) -> nx.Graph:
        """Simple networkx graph: loop counts on nodes, multiplicities on edges"""
        g = nx.Graph()
        for v in self.vertices:
            g.add_node(v, loops=self.loops(v))
        for a, b, m in self.edges:
            if a != b:
                g.add_edge(a, b, multiplicity=m)
        return g

    def render(self) -> str:
        parts = [f"{a}-{b}" + (f"x{m}" if m > 1 else "") for a, b, m in self.edges]
        return f"vertices={list(self.vertices)} edges=[{', '.join(parts)}]"


def all_graphs(n: int) -> Iterable[FiniteGraph]:
    """Every simple graph on vertices 0..n-1 (labelled)"""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield FiniteGraph(range(n), [p for i, p in enumerate(pairs) if mask >> i & 1])


ATLAS_MAX_VERTICES = 7


def atlas_graphs(n: int) -> Iterable[FiniteGraph]:
    """Every simple graph on n vertices up to isomorphism, from the networkx graph atlas"""
    if not 1 <= n <= ATLAS_MAX_VERTICES:
        raise ValidationError(f"the graph atlas covers 1..{ATLAS_MAX_VERTICES} vertices, got {n}")
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() == n:
            yield FiniteGraph(range(n), list(g.edges()))


# ============================================================================
# Ball-restricted certificates for lazy graphs
# ============================================================================


def ball_girth_lower_bound(g: Graph, center: Vertex, radius: int) -> Decision:
    """
    Circuits through `center` visible inside the ball of the given radius

    A circuit of length L through the center lies in the ball of radius L // 2,
    so an empty result certifies that no circuit of length <= 2 * radius + 1
    passes through the center. A circuit found in the ball is a genuine circuit.
    The returned witness is the lower bound on the local girth, or the length
    of the shortest circuit found.
    """
    ball = g.restrict(g.ball(center, radius))
    found = nx.girth(ball.to_networkx())
    if found == math.inf:
        bound = 2 * radius + 2
        return Decision.unknown(
            f"lower-bound certificate: no circuit through {center} shorter than {bound}",
            witness=bound,
        )
    return Decision.of(
        True, witness=int(found), note=f"circuit of length {int(found)} inside the ball"
    )


def _interior(g: Graph, center: Vertex, radius: int) -> FrozenSet[Vertex]:
    if radius < 2:
        raise PreconditionError("ball-restricted predicates need radius >= 2")
    return g.ball(center, radius - 2)


def ball_untransvectable(g: Graph, center: Vertex, radius: int) -> Decision:
    """Search for Lk(v) inside St(w) with v, w near the center; only refutations are exact"""
    inner = _interior(g, center, radius)
    for v in sorted(inner):
        link = g.neighbors(v)
        # any w with Lk(v) inside St(w) lies within distance 2 of v
        for w in sorted(g.ball(v, 2)):
            if w != v and link <= g.star(w):
                return Decision.of(False, witness=(v, w), note=f"Lk({v}) is inside St({w})")
    return Decision.unknown(f"no witness among {len(inner)} vertices of the ball")


def ball_rigid(g: Graph, center: Vertex, radius: int) -> Decision:
    """Check Lk(Lk v) = {v} for vertices deep enough inside the ball; only refutations are exact"""
    inner = _interior(g, center, radius)
    for v in sorted(inner):
        link = g.neighbors(v)
        if not link:
            raise PreconditionError(f"vertex {v} is isolated; Lk(Lk {v}) is undefined")
        second = g.common_link(link)
        if second != {v}:
            return Decision.of(False, witness=v, note=f"Lk(Lk {v}) = {sorted(second)}")
    return Decision.unknown(f"holds for the {len(inner)} vertices checked in the ball")
