"""
Actions and Graph-Wreath Products

A GraphAction is a group G acting on a graph by automorphisms, given either by
a built-in family or by explicit vertex permutations for each declared
generator. From it come orbits, isotropy groups, the hypothesis report,
quotient multigraphs and the semidirect product H_Gamma x| G whose group law
is (h, g)(h', g') = (h sigma_g(h'), g g').

Regular lazy families (shift on the line, left multiplication on the Cayley
tree) act freely and transitively; they expose transporter(v, u), the unique g
with g v = u, which makes their isotropy, quotient and mixing data exact.
"""

import logging
import random
from dataclasses import dataclass
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from networkx.algorithms.isomorphism import (
    GraphMatcher,
    categorical_edge_match,
    categorical_node_match,
)

from .errors import (
    BudgetError,
    DomainError,
    InconclusiveError,
    UnsupportedOperationError,
    ValidationError,
)
from .graph_product import GPElement, GraphProduct
from .graphs import (
    CayleyTreeGraph,
    FiniteGraph,
    Graph,
    LineGraph,
    Multigraph,
    Vertex,
    check_connected,
    is_locally_finite,
)
from .groups import CyclicGroup, Element, FreeGroup, Group, IntegerGroup, PermutationGroup
from .types import ActionFamily, ActionSpec, Decision, HypothesisReport

logger = logging.getLogger(__name__)

LAZY_CHECK_RADIUS = 4
ISO_VERTEX_BUDGET = 12

Perm = Tuple[Vertex, ...]
VertexFn = Callable[[Vertex], Vertex]


@dataclass(frozen=True)
class Orbits:
    """Vertex orbits; `blocks` is None when the graph is infinite"""

    representatives: Tuple[Vertex, ...]
    blocks: Optional[Tuple[Tuple[Vertex, ...], ...]]
    note: str = ""

    @property
    def count(self) -> int:
        return len(self.representatives)


@dataclass(frozen=True)
class Isotropy:
    """Setwise (G^E) and pointwise (G_0^E) stabilizers of a finite vertex set"""

    vertices: Tuple[Vertex, ...]
    setwise: Optional[Tuple[Element, ...]]
    pointwise: Optional[Tuple[Element, ...]]
    finite: Decision


class GraphAction:
    """
    A group acting on a graph by automorphisms

    Use build_action to construct one from an ActionSpec.
    """

    def __init__(
        self,
        group: Group,
        graph: Graph,
        family: str,
        generator_maps: Sequence[Tuple[VertexFn, VertexFn]],
        *,
        closed_form: Optional[Callable[[Element, Vertex], Vertex]] = None,
        transporter: Optional[Callable[[Vertex, Vertex], Element]] = None,
        representatives: Optional[Sequence[Vertex]] = None,
    ):
        if len(generator_maps) != len(group.declared_generators()):
            raise ValidationError(
                f"{len(generator_maps)} generator images for "
                f"{len(group.declared_generators())} declared generators",
                location="action.generator_images",
            )
        self.group = group
        self.graph = graph
        self.family = family
        self._maps = list(generator_maps)
        self._closed_form = closed_form
        self._transporter = transporter
        self._element_perms: Optional[Dict[Any, Perm]] = None
        self._image_group: Optional[Dict[Perm, Element]] = None
        self._kernel_witness: Optional[Element] = None
        self._kernel_searched = False
        self._rep_of: Dict[Vertex, Vertex] = {}
        self._vertex_index: Dict[Vertex, int] = (
            {v: i for i, v in enumerate(graph.vertices())} if graph.is_finite else {}
        )
        self._check_generators()
        if group.is_finite and graph.is_finite:
            self._element_perm_table()
        self._orbits = self._compute_orbits(representatives)

    def __repr__(self) -> str:
        return f"GraphAction({self.family}, {self.group!r} on {self.graph!r})"

    @property
    def is_regular(self) -> bool:
        """Free and transitive with an explicit transporter"""
        return self._transporter is not None

    # ------------------------------------------------------------------
    # Acting
    # ------------------------------------------------------------------

    def act(self, g: Element, v: Vertex) -> Vertex:
        """The image g v"""
        if not self.graph.has_vertex(v):
            raise DomainError(f"unknown vertex: {v!r}")
        if self._element_perms is not None:
            self.group._check(g)
            return self._element_perms[g][self._vertex_index[v]]
        if self._closed_form is not None:
            self.group._check(g)
            return self._closed_form(g, v)
        for letter in reversed(self.group.as_word(g)):
            forward, backward = self._maps[abs(letter) - 1]
            v = forward(v) if letter > 0 else backward(v)
        return v

    def act_set(self, g: Element, vertices: Iterable[Vertex]) -> FrozenSet[Vertex]:
        return frozenset(self.act(g, v) for v in vertices)

    def vertex_map(self, g: Element) -> VertexFn:
        return lambda v: self.act(g, v)

    def transporter(self, v: Vertex, u: Vertex) -> Element:
        """The unique g with g v = u, for regular families"""
        if self._transporter is None:
            raise UnsupportedOperationError(f"{self.family} action has no transporter")
        return self._transporter(v, u)

    def permutation(self, g: Element) -> Perm:
        """Images of the sorted vertex list under g; finite graphs only"""
        if self._element_perms is not None:
            self.group._check(g)
            return self._element_perms[g]
        return tuple(self.act(g, v) for v in self.graph.vertices())

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------

    def _check_generators(self) -> None:
        g = self.graph
        if isinstance(g, FiniteGraph):
            vertices = set(g.vertices())
            edges = set(g.edges())
            for i, (forward, backward) in enumerate(self._maps):
                images = [forward(v) for v in g.vertices()]
                if set(images) != vertices or len(images) != len(vertices):
                    raise ValidationError(f"generator {i} image is not a vertex bijection")
                if any(backward(forward(v)) != v for v in vertices):
                    raise ValidationError(f"generator {i} inverse map is inconsistent")
                for a, b in edges:
                    fa, fb = forward(a), forward(b)
                    if (min(fa, fb), max(fa, fb)) not in edges:
                        raise ValidationError(
                            f"generator {i} does not preserve adjacency: edge ({a}, {b}) "
                            f"maps to non-edge ({fa}, {fb})"
                        )
            return
        ball = g.ball(g.base_vertex(), LAZY_CHECK_RADIUS)
        for i, (forward, backward) in enumerate(self._maps):
            for v in ball:
                fv = forward(v)
                if backward(fv) != v:
                    raise ValidationError(f"generator {i} is not invertible at vertex {v}")
                if {forward(w) for w in g.neighbors(v)} != set(g.neighbors(fv)):
                    raise ValidationError(f"generator {i} does not preserve adjacency at vertex {v}")
        logger.debug("%r: generators certified on a radius-%d ball", self, LAZY_CHECK_RADIUS)

    def _element_perm_table(self) -> Dict[Any, Perm]:
        """Vertex permutation of every element of a finite group, checking relations"""
        if self._element_perms is None:
            vertices = self.graph.vertices()
            index = {v: i for i, v in enumerate(vertices)}
            gens: List[Tuple[Element, Perm]] = []
            for letter, s in self.group._signed_generators():
                forward, backward = self._maps[abs(letter) - 1]
                fn = forward if letter > 0 else backward
                gens.append((s, tuple(fn(v) for v in vertices)))
            e = self.group.identity()
            table: Dict[Any, Perm] = {e: tuple(vertices)}
            queue = [e]
            while queue:
                x = queue.pop()
                px = table[x]
                for s, ps in gens:
                    y = self.group._product(x, s)
                    py = tuple(px[index[w]] for w in ps)
                    if y not in table:
                        table[y] = py
                        queue.append(y)
                    elif table[y] != py:
                        raise ValidationError(
                            f"generator images violate a relation of {self.group!r} "
                            f"at element {self.group.render(y)}"
                        )
            self._element_perms = table
        return self._element_perms

    def image_group(self) -> Dict[Perm, Element]:
        """Vertex permutations realised by G, each with one element realising it"""
        if not isinstance(self.graph, FiniteGraph):
            raise UnsupportedOperationError("image group needs a finite graph")
        if self._image_group is None:
            if self._element_perms is not None:
                out: Dict[Perm, Element] = {}
                for x in sorted(self._element_perms, key=self.group.sort_key):
                    out.setdefault(self._element_perms[x], x)
                self._image_group = out
            else:
                vertices = self.graph.vertices()
                index = {v: i for i, v in enumerate(vertices)}
                signed = self.group._signed_generators()
                gens = []
                for letter, s in signed:
                    forward, backward = self._maps[abs(letter) - 1]
                    fn = forward if letter > 0 else backward
                    gens.append((s, tuple(fn(v) for v in vertices)))
                e = self.group.identity()
                out = {tuple(vertices): e}
                frontier = [tuple(vertices)]
                while frontier:
                    nxt = []
                    for p in frontier:
                        for s, ps in gens:
                            q = tuple(p[index[w]] for w in ps)
                            if q not in out:
                                out[q] = self.group._product(out[p], s)
                                nxt.append(q)
                    frontier = nxt
                self._image_group = out
        return self._image_group

    def kernel_witness(self, budget: int = 100_000) -> Optional[Element]:
        """
        A non-identity element acting trivially on a finite graph

        For an infinite acting group the image in Sym(V) is finite, so two
        elements of a large enough ball share a permutation; their quotient is
        returned. Finite groups are searched exhaustively.
        """
        if not isinstance(self.graph, FiniteGraph):
            raise UnsupportedOperationError("kernel search needs a finite graph")
        if self._kernel_searched:
            return self._kernel_witness
        identity_perm = tuple(self.graph.vertices())
        found: Optional[Element] = None
        if self._element_perms is not None:
            for x in sorted(self._element_perms, key=self.group.sort_key):
                if not self.group.is_identity(x) and self._element_perms[x] == identity_perm:
                    found = x
                    break
        else:
            target = len(self.image_group()) + 1
            radius = 1
            while found is None:
                ball = self.group.ball(radius, budget)
                seen: Dict[Perm, Element] = {}
                for x in ball:
                    p = self.permutation(x)
                    if p in seen:
                        found = self.group.product(self.group.inverse(seen[p]), x)
                        break
                    seen[p] = x
                if found is None and len(ball) >= target:
                    raise BudgetError("kernel search found no repeated permutation", budget)
                radius += 1
            logger.debug("%r: kernel element %s found at radius %d", self, self.group.render(found), radius - 1)
        self._kernel_witness = found
        self._kernel_searched = True
        return found

    # ------------------------------------------------------------------
    # Orbits and isotropy
    # ------------------------------------------------------------------

    def _compute_orbits(self, representatives: Optional[Sequence[Vertex]]) -> Orbits:
        g = self.graph
        if isinstance(g, FiniteGraph):
            rep_of: Dict[Vertex, Vertex] = {}
            blocks = []
            for v in g.vertices():
                if v in rep_of:
                    continue
                block = {v}
                stack = [v]
                while stack:
                    u = stack.pop()
                    for forward, backward in self._maps:
                        for w in (forward(u), backward(u)):
                            if w not in block:
                                block.add(w)
                                stack.append(w)
                for u in block:
                    rep_of[u] = v
                blocks.append(tuple(sorted(block)))
            reps = tuple(b[0] for b in blocks)
            if representatives is not None:
                given = sorted(rep_of[v] for v in representatives if g.has_vertex(v))
                if len(representatives) != len(reps) or given != sorted(reps):
                    raise ValidationError(
                        f"representatives {list(representatives)} do not pick one vertex per orbit",
                        location="action.representatives",
                    )
            self._rep_of = rep_of
            return Orbits(reps, tuple(blocks), note="exact")

        if self.is_regular:
            reps = tuple(representatives) if representatives is not None else (g.base_vertex(),)
            if len(reps) != 1 or not g.has_vertex(reps[0]):
                raise ValidationError(
                    f"{self.family} action is transitive; expected one representative, got {list(reps)}",
                    location="action.representatives",
                )
            ball = g.ball(reps[0], LAZY_CHECK_RADIUS)
            for u in sorted(ball):
                if self.act(self.transporter(reps[0], u), reps[0]) != u:
                    raise ValidationError(f"transporter from {reps[0]} to {u} is wrong")
            return Orbits(reps, None, note=f"transitive; certified on a radius-{LAZY_CHECK_RADIUS} ball")

        if representatives is not None:
            raise InconclusiveError(
                f"cannot certify representatives {list(representatives)} for the "
                f"{self.family} action on an infinite graph"
            )
        return Orbits((), None, note="infinitely many orbits")

    def orbits(self) -> Orbits:
        """
        Vertex orbits with least-vertex representatives

        Raises:
            InconclusiveError: If the graph is infinite and the action is not
                known to have finitely many orbits
        """
        if self._orbits.blocks is None and not self._orbits.representatives:
            raise InconclusiveError(f"{self.family} action on an infinite graph has infinitely many orbits")
        return self._orbits

    def representative(self, v: Vertex) -> Vertex:
        if self._orbits.blocks is not None:
            return self._rep_of[v]
        if self.is_regular:
            return self._orbits.representatives[0]
        raise InconclusiveError(f"no orbit data for vertex {v}")

    def isotropy(self, vertices: Iterable[Vertex], budget: int = 100_000) -> Isotropy:
        """
        Setwise and pointwise stabilizers of a nonempty finite vertex set

        Stabilizers are listed exactly when they are finite and certifiably
        so; otherwise they are None and `finite` carries the verdict.
        """
        E = frozenset(vertices)
        if not E:
            raise ValidationError("isotropy needs a nonempty vertex set")
        for v in E:
            if not self.graph.has_vertex(v):
                raise DomainError(f"unknown vertex: {v!r}")
        key = tuple(sorted(E))
        G = self.group

        if G.is_finite:
            setwise = [x for x in G.elements() if self.act_set(x, E) == E]
            pointwise = [x for x in setwise if all(self.act(x, v) == v for v in E)]
            return Isotropy(key, tuple(setwise), tuple(pointwise), Decision.of(True, note="finite group"))

        if self.is_regular:
            anchor = key[0]
            setwise = []
            for u in key:
                x = self.transporter(anchor, u)
                if self.act_set(x, E) == E:
                    setwise.append(x)
            setwise.sort(key=G.sort_key)
            return Isotropy(
                key,
                tuple(setwise),
                (G.identity(),),
                Decision.of(True, note="free action; setwise stabilizer found by transporters"),
            )

        if isinstance(self.graph, FiniteGraph):
            k = self.kernel_witness(budget)
            if k is not None:
                return Isotropy(
                    key,
                    None,
                    None,
                    Decision.of(
                        False,
                        witness=G.render(k),
                        note=f"{G.render(k)} acts trivially and has infinite order",
                    ),
                )
            return Isotropy(key, None, None, Decision.unknown("bounded search only"))

        if self.family == ActionFamily.TRIVIAL.value:
            gens = G.generators()
            if not gens:
                return Isotropy(key, (G.identity(),), (G.identity(),), Decision.of(True, note="trivial group"))
            return Isotropy(
                key,
                None,
                None,
                Decision.of(False, witness=G.render(gens[0]), note="trivial action of an infinite group"),
            )
        return Isotropy(key, None, None, Decision.unknown("bounded search only"))

    def mixing_set(self, vertices: Iterable[Vertex]) -> List[Element]:
        """
        The elements g with S and gS intersecting, for a finite vertex set S

        Raises:
            UnsupportedOperationError: If the set is infinite (infinite isotropy)
        """
        S = frozenset(vertices)
        G = self.group
        if not S:
            return []
        if G.is_finite:
            return [x for x in G.elements() if S & self.act_set(x, S)]
        if self.is_regular:
            found = {self.transporter(u, w) for u in S for w in S}
            return sorted(found, key=G.sort_key)
        raise UnsupportedOperationError(f"{self.family} action has infinite isotropy; mixing set is infinite")

    def max_stabilizer_order(self) -> int:
        """max over vertices of |G_v|, for actions with finite isotropy"""
        reps = self.orbits().representatives
        best = 0
        for v in reps:
            iso = self.isotropy([v])
            if iso.pointwise is None:
                raise UnsupportedOperationError("stabilizers are not finite")
            best = max(best, len(iso.pointwise))
        return best

    # ------------------------------------------------------------------
    # Hypotheses
    # ------------------------------------------------------------------

    def hypothesis_report(self, budget: int = 100_000) -> HypothesisReport:
        """Freeness, finite isotropy, orbit count and the star-fixing condition"""
        G = self.group
        orbit_count: Optional[int] = None
        reps: Tuple[Vertex, ...] = ()
        if self._orbits.representatives:
            reps = self._orbits.representatives
            orbit_count = len(reps)

        if not reps:
            # only the trivial family reaches here: every stabilizer is all of G
            gens = G.generators()
            witness = G.render(gens[0]) if gens else None
            free = Decision.of(not gens, witness=witness, note="trivial action")
            finite = Decision.of(G.is_finite, witness=witness, note="stabilizers equal the acting group")
            fixes = free
        else:
            free = Decision.of(True, note=f"trivial stabilizers at {len(reps)} representatives")
            finite = Decision.of(True, note="finite stabilizers at every representative")
            fixes = Decision.of(True, note="only the identity fixes a star pointwise")
            for v in reps:
                iso = self.isotropy([v], budget)
                if not iso.finite.is_true:
                    finite = iso.finite
                    if iso.finite.is_false:
                        free = Decision.of(False, witness=iso.finite.witness, note=iso.finite.note)
                    else:
                        free = Decision.unknown(iso.finite.note or "bounded search only")
                    break
                assert iso.pointwise is not None
                moving = [x for x in iso.pointwise if not G.is_identity(x)]
                if moving and free.is_true:
                    free = Decision.of(
                        False, witness=(G.render(moving[0]), v), note=f"{G.render(moving[0])} fixes {v}"
                    )
            if not finite.is_true:
                fixes = finite if finite.is_false else Decision.unknown("stabilizers not enumerated")
            else:
                for v in reps:
                    star = self.isotropy(self.graph.star(v), budget)
                    assert star.pointwise is not None
                    moving = [x for x in star.pointwise if not G.is_identity(x)]
                    if moving:
                        fixes = Decision.of(
                            False,
                            witness=(G.render(moving[0]), v),
                            note=f"{G.render(moving[0])} fixes St({v}) pointwise",
                        )
                        break

        report = HypothesisReport(
            free=free,
            finite_isotropy=finite,
            orbit_count=orbit_count,
            fixes_star_implies_trivial=fixes,
            connected=check_connected(self.graph, budget=min(budget, 10_000)),
            locally_finite=is_locally_finite(self.graph),
        )
        logger.debug("%r: hypotheses %s", self, report.model_dump_json())
        return report

    # ------------------------------------------------------------------
    # Quotient
    # ------------------------------------------------------------------

    def quotient_graph(self) -> Multigraph:
        """
        The quotient multigraph: vertex orbits joined by one edge per edge orbit

        Raises:
            InconclusiveError: If orbit data on an infinite graph cannot be certified
        """
        g = self.graph
        if isinstance(g, FiniteGraph):
            seen: Dict[Tuple[Vertex, Vertex], int] = {}
            counts: Dict[Tuple[Vertex, Vertex], int] = {}
            for edge in g.edges():
                if edge in seen:
                    continue
                stack = [edge]
                seen[edge] = 1
                while stack:
                    a, b = stack.pop()
                    for forward, backward in self._maps:
                        for fn in (forward, backward):
                            fa, fb = fn(a), fn(b)
                            image = (min(fa, fb), max(fa, fb))
                            if image not in seen:
                                seen[image] = 1
                                stack.append(image)
                ra, rb = self._rep_of[edge[0]], self._rep_of[edge[1]]
                pair = (min(ra, rb), max(ra, rb))
                counts[pair] = counts.get(pair, 0) + 1
            return Multigraph.from_counts(self._orbits.representatives, counts)

        if self.is_regular:
            base = self._orbits.representatives[0]
            link = sorted(g.neighbors(base))
            parent = {w: w for w in link}

            def find(w: Vertex) -> Vertex:
                while parent[w] != w:
                    w = parent[w]
                return w

            for w in link:
                for u in link:
                    # edges {base, w} and {base, u} share an orbit iff some x maps w to base and base to u
                    if w < u and self.act(self.transporter(base, u), w) == base:
                        parent[find(u)] = find(w)
            loops = len({find(w) for w in link})
            return Multigraph((base,), ((base, base, loops),))
        raise InconclusiveError(f"cannot certify orbit data for the {self.family} action on an infinite graph")


# ============================================================================
# Construction
# ============================================================================


def _permutation_maps(images: Sequence[Sequence[int]], vertices: Sequence[Vertex]) -> List[Tuple[VertexFn, VertexFn]]:
    maps: List[Tuple[VertexFn, VertexFn]] = []
    n = len(vertices)
    if list(vertices) != list(range(n)):
        raise ValidationError("explicit generator images need vertices 0..n-1")
    for i, row in enumerate(images):
        if sorted(row) != list(range(n)):
            raise ValidationError(
                f"generator image {i} is not a permutation of 0..{n - 1}: {list(row)}",
                location=f"action.generator_images.{i}",
            )
        forward = tuple(row)
        backward = tuple(sorted(range(n), key=lambda v: forward[v]))
        maps.append((forward.__getitem__, backward.__getitem__))
    return maps


def build_action(spec: ActionSpec, group: Group, graph: Graph) -> GraphAction:
    """
    Build a GraphAction from an ActionSpec and the already built group and graph

    Raises:
        ValidationError: If the family does not fit the group or graph, or the
            generator images are not automorphisms respecting the group relations
    """
    family = spec.family
    reps = spec.representatives
    n_gens = len(group.declared_generators())

    if spec.generator_images is not None:
        if not isinstance(graph, FiniteGraph):
            raise ValidationError("generator_images need a finite graph")
        maps = _permutation_maps(spec.generator_images, graph.vertices())
        return GraphAction(group, graph, "generator_images", maps, representatives=reps)

    if family == ActionFamily.TRIVIAL:
        ident: Tuple[VertexFn, VertexFn] = (lambda v: v, lambda v: v)
        return GraphAction(group, graph, family.value, [ident] * n_gens, representatives=reps)

    if family == ActionFamily.NATURAL:
        if not isinstance(group, PermutationGroup) or not isinstance(graph, FiniteGraph):
            raise ValidationError("natural action needs a permutation group and a finite graph")
        if group.degree != len(graph):
            raise ValidationError(f"permutation degree {group.degree} differs from {len(graph)} vertices")
        images = [list(p.array_form) for p in group.declared_generators()]
        return GraphAction(group, graph, family.value, _permutation_maps(images, graph.vertices()), representatives=reps)

    if family == ActionFamily.ROTATION:
        if not isinstance(group, (CyclicGroup, IntegerGroup)) or not isinstance(graph, FiniteGraph):
            raise ValidationError("rotation action needs a cyclic or integer group and a finite graph")
        n = len(graph)
        images = [[(v + 1) % n for v in range(n)]]
        return GraphAction(group, graph, family.value, _permutation_maps(images, graph.vertices()), representatives=reps)

    if family == ActionFamily.SHIFT:
        if not isinstance(group, IntegerGroup) or not isinstance(graph, LineGraph):
            raise ValidationError("shift action needs the integers acting on the line")
        return GraphAction(
            group,
            graph,
            family.value,
            [(lambda v: v + 1, lambda v: v - 1)],
            closed_form=lambda g, v: v + g,
            transporter=lambda v, u: u - v,
            representatives=reps,
        )

    if family == ActionFamily.LEFT_MULT:
        if not isinstance(group, FreeGroup) or not isinstance(graph, CayleyTreeGraph):
            raise ValidationError("left_mult action needs a free group acting on its Cayley tree")
        if group.rank != graph.rank:
            raise ValidationError(f"free group rank {group.rank} differs from tree rank {graph.rank}")
        tree = graph
        free = group

        def generator(i: int) -> Tuple[VertexFn, VertexFn]:
            return (
                lambda v: tree.vertex((i,) + tree.word(v)),
                lambda v: tree.vertex((-i,) + tree.word(v)),
            )

        def transport(v: Vertex, u: Vertex) -> Element:
            inverse = tuple(-x for x in reversed(tree.word(v)))
            return free.from_letters(tree.word(u) + inverse)

        return GraphAction(
            group,
            graph,
            family.value,
            [generator(i) for i in range(1, group.rank + 1)],
            closed_form=lambda g, v: tree.vertex(free.letters(g) + tree.word(v)),
            transporter=transport,
            representatives=reps,
        )
    raise ValidationError(f"unsupported action family: {family!r}")


# ============================================================================
# Multigraph isomorphism
# ============================================================================


def multigraph_iso(q1: Multigraph, q2: Multigraph, budget: int = ISO_VERTEX_BUDGET) -> Decision:
    """
    Decide isomorphism of two finite multigraphs

    The witness of a positive answer is a vertex mapping preserving edge
    multiplicities and loop counts.

    Raises:
        BudgetError: If either multigraph has more than `budget` vertices
    """
    n1, n2 = len(q1.vertices), len(q2.vertices)
    if max(n1, n2) > budget:
        raise BudgetError(f"multigraph isomorphism is limited to {budget} vertices", budget)
    if n1 != n2:
        return Decision.of(False, note=f"vertex counts {n1} vs {n2}")
    if q1.edge_count != q2.edge_count:
        return Decision.of(False, note=f"edge counts {q1.edge_count} vs {q2.edge_count}")
    loops1 = sorted(q1.loops(v) for v in q1.vertices)
    loops2 = sorted(q2.loops(v) for v in q2.vertices)
    if loops1 != loops2:
        return Decision.of(False, note=f"loop counts {loops1} vs {loops2}")
    if q1 == q2:
        return Decision.of(True, witness={v: v for v in q1.vertices}, note="identical")
    matcher = GraphMatcher(
        q1.to_networkx(),
        q2.to_networkx(),
        node_match=categorical_node_match("loops", 0),
        edge_match=categorical_edge_match("multiplicity", 1),
    )
    for mapping in matcher.isomorphisms_iter():
        return Decision.of(True, witness=dict(sorted(mapping.items())), note="isomorphism found")
    return Decision.of(False, note="no multiplicity-preserving bijection")


# ============================================================================
# Graph-wreath product
# ============================================================================


class WreathElement:
    """A pair (h, g) with h in H_Gamma and g in G"""

    __slots__ = ("product", "h", "g")

    def __init__(self, product: "GraphWreathProduct", h: GPElement, g: Element):
        self.product = product
        self.h = h
        self.g = g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WreathElement):
            return NotImplemented
        return self.product is other.product and self.h == other.h and self.g == other.g

    def __hash__(self) -> int:
        return hash((self.h, self.g))

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        return self.product.multiply(self, other)

    def __repr__(self) -> str:
        return f"WreathElement({self.product.render(self)!r})"


class GraphWreathProduct:
    """The semidirect product H_Gamma x| G for the Bernoulli action of G"""

    def __init__(self, action: GraphAction, vertex_group: Group):
        self.action = action
        self.vertex_group = vertex_group
        self.gp = GraphProduct(action.graph, vertex_group)

    @property
    def acting_group(self) -> Group:
        return self.action.group

    def __repr__(self) -> str:
        return f"GraphWreathProduct({self.vertex_group!r} over {self.action!r})"

    def _own(self, *elements: WreathElement) -> None:
        for z in elements:
            if z.product is not self:
                raise DomainError("wreath elements come from different contexts")

    def element(self, h: GPElement, g: Element) -> WreathElement:
        if h.product != self.gp:
            raise DomainError("graph-product part belongs to another graph product")
        self.acting_group._check(g)
        return WreathElement(self, h, g)

    def identity(self) -> WreathElement:
        return WreathElement(self, self.gp.identity(), self.acting_group.identity())

    def from_h(self, h: GPElement) -> WreathElement:
        return self.element(h, self.acting_group.identity())

    def from_g(self, g: Element) -> WreathElement:
        return self.element(self.gp.identity(), g)

    def sigma(self, g: Element, h: GPElement) -> GPElement:
        """The Bernoulli shift sigma_g(h)"""
        return self.gp.bernoulli(self.action.vertex_map(g), h)

    def multiply(self, z1: WreathElement, z2: WreathElement) -> WreathElement:
        self._own(z1, z2)
        G = self.acting_group
        return WreathElement(self, self.gp.multiply(z1.h, self.sigma(z1.g, z2.h)), G.product(z1.g, z2.g))

    def invert(self, z: WreathElement) -> WreathElement:
        self._own(z)
        g_inv = self.acting_group.inverse(z.g)
        return WreathElement(self, self.sigma(g_inv, self.gp.invert(z.h)), g_inv)

    def random_element(
        self,
        rng: random.Random,
        max_syllables: int,
        vertices: Optional[Sequence[Vertex]] = None,
        radius: int = 3,
    ) -> WreathElement:
        h = self.gp.random_element(rng, max_syllables, vertices, radius)
        return WreathElement(self, h, self.acting_group.random_element(rng, radius))

    def parse(self, text: str) -> WreathElement:
        """Parse "v:h v:h ... | g"; a missing group part means the identity"""
        left, sep, right = text.partition("|")
        h = self.gp.parse(left)
        g = self.acting_group.parse(right) if sep else self.acting_group.identity()
        return WreathElement(self, h, g)

    def render(self, z: WreathElement) -> str:
        return f"{self.gp.render(z.h)} | {self.acting_group.render(z.g)}"
