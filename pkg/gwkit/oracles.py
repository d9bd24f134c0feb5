"""
Brute-force oracles

Slow, independent reference computations that the verification suites and the
test-suite compare the library against. Every function here enumerates; none
of them shares an algorithm with the code it checks.
"""

import math
from collections import deque
from itertools import permutations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import BudgetError
from .graph_product import GPElement, GraphProduct, Syllable
from .graphs import Girth, Multigraph, Vertex
from .groups import Element, Group
from .wreath import GraphAction

Word = Tuple[Syllable, ...]


def rewriting_closure(gp: GraphProduct, word: Sequence[Syllable], budget: int = 200_000) -> Set[Word]:
    """
    Every word reachable by the elementary moves

    Moves: drop an identity syllable, merge two neighbouring syllables at the
    same vertex, swap two neighbouring syllables at adjacent vertices.
    """
    start = tuple(word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        moves: List[Word] = []
        for i, s in enumerate(w):
            if gp.group_at(s.vertex).is_identity(s.elem):
                moves.append(w[:i] + w[i + 1:])
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if a.vertex == b.vertex:
                merged = Syllable(a.vertex, gp.group_at(a.vertex).product(a.elem, b.elem))
                moves.append(w[:i] + (merged,) + w[i + 2:])
            elif gp.graph.adjacent(a.vertex, b.vertex):
                moves.append(w[:i] + (b, a) + w[i + 2:])
        for m in moves:
            if m not in seen:
                seen.add(m)
                queue.append(m)
                if len(seen) > budget:
                    raise BudgetError(f"rewriting closure exceeds {budget} words", budget)
    return seen


def normal_forms(gp: GraphProduct, word: Sequence[Syllable]) -> Set[Word]:
    """The shortest words in the rewriting closure, identity syllables excluded"""
    closure = [
        w for w in rewriting_closure(gp, word)
        if not any(gp.group_at(s.vertex).is_identity(s.elem) for s in w)
    ]
    best = min(len(w) for w in closure)
    return {w for w in closure if len(w) == best}


def canonical_form(gp: GraphProduct, word: Sequence[Syllable]) -> Word:
    """The normal form with the lexicographically least vertex sequence"""
    return min(normal_forms(gp, word), key=lambda w: tuple(s.vertex for s in w))


def is_irreducible(gp: GraphProduct, word: Sequence[Syllable]) -> bool:
    """Equal vertices are always separated by a vertex outside their link"""
    for i, a in enumerate(word):
        for j in range(i + 1, len(word)):
            if word[j].vertex == a.vertex:
                link = gp.graph.neighbors(a.vertex)
                if all(word[k].vertex in link for k in range(i + 1, j)):
                    return False
    return True


def leading_syllable(gp: GraphProduct, a: GPElement, v: Vertex) -> Element:
    """The first syllable of any shuffle of a that starts at v"""
    for w in gp.shuffle_class(a):
        if w and w[0].vertex == v:
            return w[0].elem
    return gp.group_at(v).identity()


def presentation_lengths(gp: GraphProduct, bound: int) -> Dict[Word, int]:
    """
    Shortest presentation length of every element that is a product of at
    most `bound` syllables, keyed by its canonical_form

    Products are identified through the rewriting closure only, never
    through GraphProduct.normalize or multiply.
    """
    letters = [
        Syllable(v, x)
        for v in gp.graph.vertices()
        for x in gp.group_at(v).elements()
        if not gp.group_at(v).is_identity(x)
    ]
    table: Dict[Word, int] = {(): 0}
    layer: List[Word] = [()]
    for k in range(1, bound + 1):
        nxt = []
        for w in layer:
            for s in letters:
                key = canonical_form(gp, w + (s,))
                if key not in table:
                    table[key] = k
                    nxt.append(key)
        layer = nxt
    return table


def presentation_length(gp: GraphProduct, a: GPElement, bound: int) -> Optional[int]:
    """Least k such that a is a product of k syllables, searching k <= bound"""
    return presentation_lengths(gp, bound).get(canonical_form(gp, a.syllables))


def _adjacency(vertices: Iterable[Vertex], edges: Iterable[Tuple[Vertex, Vertex]]) -> Dict[Vertex, Set[Vertex]]:
    adj: Dict[Vertex, Set[Vertex]] = {v: set() for v in vertices}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def girth(vertices: Sequence[Vertex], edges: Sequence[Tuple[Vertex, Vertex]]) -> Girth:
    """Shortest circuit by depth-first enumeration of simple cycles"""
    adj = _adjacency(vertices, edges)
    best: Girth = math.inf

    def extend(start: Vertex, path: List[Vertex], on_path: Set[Vertex]) -> None:
        nonlocal best
        if len(path) >= best:
            return
        for w in adj[path[-1]]:
            if w == start and len(path) >= 3:
                best = min(best, len(path))
            elif w > start and w not in on_path:
                path.append(w)
                on_path.add(w)
                extend(start, path, on_path)
                on_path.discard(w)
                path.pop()

    for s in vertices:
        extend(s, [s], {s})
    return best


def untransvectable(vertices: Sequence[Vertex], edges: Sequence[Tuple[Vertex, Vertex]]) -> bool:
    adj = _adjacency(vertices, edges)
    return not any(v != w and adj[v] <= adj[w] | {w} for v in vertices for w in vertices)


def rigid(vertices: Sequence[Vertex], edges: Sequence[Tuple[Vertex, Vertex]]) -> bool:
    adj = _adjacency(vertices, edges)
    for v in vertices:
        common = set(vertices)
        for u in adj[v]:
            common &= adj[u]
        if common != {v}:
            return False
    return True


def word_length(group: Group, g: Element, budget: int = 1_000_000) -> int:
    """Distance from the identity in the Cayley graph, by plain BFS"""
    dist = {group.identity(): 0}
    queue = deque([group.identity()])
    while queue:
        x = queue.popleft()
        if x == g:
            return dist[x]
        for s in group.generators():
            y = group.product(x, s)
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
                if len(dist) > budget:
                    raise BudgetError(f"Cayley graph search exceeds {budget} elements", budget)
    raise BudgetError(f"{group.render(g)} unreachable from the identity")


def quotient(action: GraphAction) -> Tuple[int, List[Tuple[int, int, int]]]:
    """
    Vertex orbit count and sorted (orbit, orbit, multiplicity) triples,
    computed by applying every group element; finite groups and graphs only
    """
    G = action.group
    elements = G.elements()
    vertices = action.graph.vertices()
    orbit_of: Dict[Vertex, FrozenSet[Vertex]] = {}
    for v in vertices:
        orbit_of[v] = frozenset(action.act(g, v) for g in elements)
    names = {o: i for i, o in enumerate(sorted(set(orbit_of.values()), key=min))}
    edge_orbits = set()
    for a, b in action.graph.edges():
        edge_orbits.add(frozenset(frozenset((action.act(g, a), action.act(g, b))) for g in elements))
    counts: Dict[Tuple[int, int], int] = {}
    for orbit in edge_orbits:
        a, b = sorted(next(iter(orbit)))
        x, y = sorted((names[orbit_of[a]], names[orbit_of[b]]))
        counts[(x, y)] = counts.get((x, y), 0) + 1
    return len(names), sorted((a, b, m) for (a, b), m in counts.items())


def multigraph_isomorphic(q1: Multigraph, q2: Multigraph) -> bool:
    """Try every vertex bijection"""
    if len(q1.vertices) != len(q2.vertices):
        return False
    if len(q1.vertices) > 8:
        raise BudgetError("permutation search is limited to 8 vertices", 8)
    for image in permutations(q2.vertices):
        m = dict(zip(q1.vertices, image))
        if all(
            q1.multiplicity(a, b) == q2.multiplicity(m[a], m[b])
            for a in q1.vertices
            for b in q1.vertices
        ):
            return True
    return False
