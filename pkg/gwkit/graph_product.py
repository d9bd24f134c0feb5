"""
Graph Products

Elements of the graph product H_Gamma kept in canonical normal form. A
normal form is an irreducible syllable sequence: two syllables at the same
vertex are always separated by a syllable at a vertex outside that vertex's
link. Among the shuffle-equivalent normal forms of an element the canonical
one has the lexicographically least vertex sequence.

Example:
    >>> from gwkit.graphs import build_graph
    >>> from gwkit.groups import IntegerGroup
    >>> gp = GraphProduct(build_graph({"type": "complete", "n": 2}), IntegerGroup())
    >>> gp.render(gp.parse("0:3 1:4 0:-3"))
    '1:4'
"""

import random
from dataclasses import dataclass
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from .errors import BudgetError, DomainError, PropertyViolationError, UnknownVertexError, ValidationError
from .graphs import Graph, Vertex
from .groups import Element, Group

DEFAULT_SHUFFLE_BOUND = 8


@dataclass(frozen=True)
class Syllable:
    """A non-identity element of the vertex group at `vertex`"""

    vertex: Vertex
    elem: Element


VertexMap = Union[Callable[[Vertex], Vertex], Mapping[Vertex, Vertex]]


class GPElement:
    """An element of a graph product, stored as its canonical normal form"""

    __slots__ = ("product", "syllables")

    def __init__(self, product: "GraphProduct", syllables: Tuple[Syllable, ...]):
        self.product = product
        self.syllables = syllables

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self) -> Any:
        return iter(self.syllables)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GPElement):
            return NotImplemented
        return self.product == other.product and self.syllables == other.syllables

    def __hash__(self) -> int:
        return hash(self.syllables)

    def __mul__(self, other: "GPElement") -> "GPElement":
        return self.product.multiply(self, other)

    def __invert__(self) -> "GPElement":
        return self.product.invert(self)

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    @property
    def vertex_word(self) -> Tuple[Vertex, ...]:
        return tuple(s.vertex for s in self.syllables)

    def __repr__(self) -> str:
        return f"GPElement({self.product.render(self)!r})"


class GraphProduct:
    """
    The graph product of vertex groups over a graph

    Args:
        graph: The underlying graph
        vertex_groups: One group shared by every vertex, or a mapping from
            vertex to group (finite graphs only)
    """

    def __init__(self, graph: Graph, vertex_groups: Union[Group, Mapping[Vertex, Group]]):
        self.graph = graph
        if isinstance(vertex_groups, Group):
            self._uniform: Optional[Group] = vertex_groups
            self._groups: Dict[Vertex, Group] = {}
        else:
            if not graph.is_finite:
                raise ValidationError("per-vertex groups need a finite graph")
            missing = [v for v in graph.vertices() if v not in vertex_groups]
            if missing:
                raise ValidationError(f"no vertex group for vertices {missing}")
            self._uniform = None
            self._groups = dict(vertex_groups)
        self._key = (
            graph.key,
            self._uniform.key if self._uniform is not None
            else tuple(sorted((v, g.key) for v, g in self._groups.items())),
        )

    @property
    def key(self) -> Tuple[Any, ...]:
        return self._key

    @property
    def uniform_group(self) -> Optional[Group]:
        """The common vertex group H, when every vertex carries the same group"""
        return self._uniform

    def group_at(self, v: Vertex) -> Group:
        if not self.graph.has_vertex(v):
            raise UnknownVertexError(v)
        return self._uniform if self._uniform is not None else self._groups[v]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphProduct):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"GraphProduct({self.graph!r})"

    # ------------------------------------------------------------------
    # Rewriting
    # ------------------------------------------------------------------

    def _push(self, word: List[Syllable], s: Syllable) -> None:
        """Right-multiply an irreducible word by one syllable, in place"""
        link = self.graph.neighbors(s.vertex)
        for i in range(len(word) - 1, -1, -1):
            u = word[i].vertex
            if u == s.vertex:
                group = self.group_at(u)
                merged = group._product(word[i].elem, s.elem)
                if group.is_identity(merged):
                    # a back-movable syllable leaves an irreducible word when removed
                    del word[i]
                else:
                    word[i] = Syllable(u, merged)
                return
            if u not in link:
                break
        word.append(s)

    def _canonical(self, word: Sequence[Syllable]) -> Tuple[Syllable, ...]:
        """Lexicographically least shuffle of an irreducible word"""
        rest = list(word)
        out: List[Syllable] = []
        while rest:
            best = -1
            for j, s in enumerate(rest):
                if best >= 0 and s.vertex >= rest[best].vertex:
                    continue
                link = self.graph.neighbors(s.vertex)
                if all(rest[k].vertex in link for k in range(j)):
                    best = j
            out.append(rest.pop(best))
        return tuple(out)

    def _check_syllable(self, s: Syllable) -> None:
        group = self.group_at(s.vertex)
        if not group.contains(s.elem):
            raise DomainError(f"{s.elem!r} is not in the vertex group at {s.vertex}")

    def _own(self, *elements: GPElement) -> None:
        for a in elements:
            if a.product != self:
                raise DomainError("graph-product elements come from different contexts")

    def normalize(self, word: Iterable[Union[Syllable, Tuple[Vertex, Element]]]) -> GPElement:
        """
        Canonical normal form of a product of syllables

        Identity syllables are accepted and dropped.

        Raises:
            UnknownVertexError: If a syllable sits at a vertex outside the graph
            DomainError: If a syllable's element is not in its vertex group
        """
        out: List[Syllable] = []
        for item in word:
            s = item if isinstance(item, Syllable) else Syllable(item[0], item[1])
            self._check_syllable(s)
            if self.group_at(s.vertex).is_identity(s.elem):
                continue
            self._push(out, s)
        return GPElement(self, self._canonical(out))

    def identity(self) -> GPElement:
        return GPElement(self, ())

    def single(self, v: Vertex, elem: Element) -> GPElement:
        return self.normalize([Syllable(v, elem)])

    def multiply(self, a: GPElement, b: GPElement) -> GPElement:
        self._own(a, b)
        word = list(a.syllables)
        for s in b.syllables:
            self._push(word, s)
        return GPElement(self, self._canonical(word))

    def invert(self, a: GPElement) -> GPElement:
        self._own(a)
        word = [Syllable(s.vertex, self.group_at(s.vertex)._inverse(s.elem)) for s in reversed(a.syllables)]
        return GPElement(self, self._canonical(word))

    def syllable_length(self, a: GPElement) -> int:
        return len(a.syllables)

    def support(self, a: GPElement) -> FrozenSet[Vertex]:
        return frozenset(s.vertex for s in a.syllables)

    def leading_syllable(self, a: GPElement, v: Vertex) -> Element:
        """The v-syllable some normal form of a starts with, or the identity of H_v"""
        group = self.group_at(v)
        link = self.graph.neighbors(v)
        for s in a.syllables:
            if s.vertex == v:
                return s.elem
            if s.vertex not in link:
                break
        return group.identity()

    def trailing_syllable(self, a: GPElement, v: Vertex) -> Element:
        """The v-syllable some normal form of a ends with, or the identity of H_v"""
        group = self.group_at(v)
        link = self.graph.neighbors(v)
        for s in reversed(a.syllables):
            if s.vertex == v:
                return s.elem
            if s.vertex not in link:
                break
        return group.identity()

    def in_subgroup(self, a: GPElement, vertices: Iterable[Vertex]) -> bool:
        """Membership in the subgroup generated by the vertex groups of `vertices`"""
        return self.support(a) <= frozenset(vertices)

    # ------------------------------------------------------------------
    # Shuffles and relabelling
    # ------------------------------------------------------------------

    def shuffle_class(
        self, a: GPElement, bound: int = DEFAULT_SHUFFLE_BOUND
    ) -> FrozenSet[Tuple[Syllable, ...]]:
        """All sequences reachable from a by swapping adjacent commuting syllables"""
        if len(a) > bound:
            raise BudgetError(f"shuffle class of a {len(a)}-syllable element exceeds bound {bound}", bound)
        start = a.syllables
        seen: Set[Tuple[Syllable, ...]] = {start}
        stack = [start]
        while stack:
            word = stack.pop()
            for i in range(len(word) - 1):
                if self.graph.adjacent(word[i].vertex, word[i + 1].vertex):
                    swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2:]
                    if swapped not in seen:
                        seen.add(swapped)
                        stack.append(swapped)
        return frozenset(seen)

    def bernoulli(self, phi: VertexMap, a: GPElement) -> GPElement:
        """
        Relabel every syllable (v, h) to (phi(v), h)

        Raises:
            DomainError: If phi fails to preserve adjacency around supp a, or
                the vertex groups are not all the same group
        """
        self._own(a)
        if self._uniform is None:
            raise DomainError("relabelling syllables needs a single shared vertex group")
        f = phi.__getitem__ if isinstance(phi, Mapping) else phi
        support = self.support(a)
        region = set(support)
        for v in support:
            region |= self.graph.neighbors(v)
        for v in support:
            fv = f(v)
            for w in region:
                if self.graph.adjacent(v, w) != self.graph.adjacent(fv, f(w)):
                    raise DomainError(f"vertex map does not preserve adjacency at ({v}, {w})")
        word: List[Syllable] = []
        for s in a.syllables:
            self._push(word, Syllable(f(s.vertex), s.elem))
        return GPElement(self, self._canonical(word))

    # ------------------------------------------------------------------
    # Proof shapes of one-syllable products
    # ------------------------------------------------------------------

    def left_shape(self, v: Vertex, g: Element, h: GPElement) -> str:
        """
        Classify (v, g) * h as "prepend", "merge" or "cancel"

        prepend: a v-syllable g heads the product and the length grows by one;
        merge: the leading v-syllable h_1 of h becomes g h_1, same length and support;
        cancel: g h_1 = e, the length drops by one and no v-syllable leads.

        Raises:
            PropertyViolationError: If the product fits none of the shapes
        """
        group = self.group_at(v)
        product = self.multiply(self.single(v, g), h)
        lead = self.leading_syllable(h, v)
        return self._classify(
            group, product, h, v, g, lead, group._product(g, lead), self.leading_syllable(product, v)
        )

    def right_shape(self, h: GPElement, v: Vertex, g: Element) -> str:
        """Mirror image of left_shape for h * (v, g)"""
        group = self.group_at(v)
        product = self.multiply(h, self.single(v, g))
        trail = self.trailing_syllable(h, v)
        return self._classify(
            group, product, h, v, g, trail, group._product(trail, g), self.trailing_syllable(product, v)
        )

    def _classify(
        self,
        group: Group,
        product: GPElement,
        h: GPElement,
        v: Vertex,
        g: Element,
        end: Element,
        combined: Element,
        product_end: Element,
    ) -> str:
        n = len(h)
        if group.is_identity(end):
            shape = "prepend"
            ok = len(product) == n + 1 and product_end == g and self.support(product) == self.support(h) | {v}
        elif not group.is_identity(combined):
            shape = "merge"
            ok = len(product) == n and product_end == combined and self.support(product) == self.support(h)
        else:
            shape = "cancel"
            ok = len(product) == n - 1 and group.is_identity(product_end)
        if not ok:
            raise PropertyViolationError(
                f"one-syllable product at vertex {v} does not have the {shape} shape",
                counterexample=f"g={group.render(g)} h={self.render(h)} product={self.render(product)}",
            )
        return shape

    # ------------------------------------------------------------------
    # Enumeration and text
    # ------------------------------------------------------------------

    def sort_key(self, a: GPElement) -> Tuple[Any, ...]:
        return (len(a), tuple((s.vertex, self.group_at(s.vertex).sort_key(s.elem)) for s in a.syllables))

    def syllable_ball(self, radius: int, budget: int = 200_000) -> List[GPElement]:
        """Every element with at most `radius` syllables; finite data only"""
        vertices = self.graph.vertices()
        letters = [
            Syllable(v, x)
            for v in vertices
            for x in self.group_at(v).elements()
            if not self.group_at(v).is_identity(x)
        ]
        seen = {self.identity()}
        layer = [self.identity()]
        for _ in range(radius):
            nxt = []
            for a in layer:
                for s in letters:
                    word = list(a.syllables)
                    self._push(word, s)
                    b = GPElement(self, self._canonical(word))
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
                if len(seen) > budget:
                    raise BudgetError(f"syllable ball of radius {radius} exceeds {budget} elements", budget)
            layer = nxt
        return sorted(seen, key=self.sort_key)

    def random_word(
        self, rng: random.Random, length: int, vertices: Sequence[Vertex], radius: int = 3
    ) -> List[Syllable]:
        """A random syllable list (not normalized) over the given vertices"""
        word = []
        for _ in range(length):
            v = rng.choice(list(vertices))
            word.append(Syllable(v, self.group_at(v).random_element(rng, radius)))
        return word

    def random_element(
        self,
        rng: random.Random,
        max_syllables: int,
        vertices: Optional[Sequence[Vertex]] = None,
        radius: int = 3,
    ) -> GPElement:
        pool = list(vertices) if vertices is not None else list(self.graph.vertices())
        return self.normalize(self.random_word(rng, rng.randint(0, max_syllables), pool, radius))

    def parse(self, text: str) -> GPElement:
        """
        Parse the "v:g v:g ..." element syntax; "e" is the identity

        Raises:
            ValidationError: If a token is not of the form vertex:literal
        """
        text = text.strip()
        if text in ("", "e"):
            return self.identity()
        word = []
        for token in text.split():
            vertex, sep, literal = token.partition(":")
            if not sep:
                raise ValidationError(f"expected vertex:element, got {token!r}")
            try:
                v = int(vertex)
            except ValueError as e:
                raise ValidationError(f"vertex must be an integer in {token!r}") from e
            word.append(Syllable(v, self.group_at(v).parse(literal)))
        return self.normalize(word)

    def render(self, a: GPElement) -> str:
        if not a.syllables:
            return "e"
        return " ".join(f"{s.vertex}:{self.group_at(s.vertex).render(s.elem)}" for s in a.syllables)
