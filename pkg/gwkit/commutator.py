"""
Commutator Coefficients

Exact matrix coefficients of [f, J u_h J] on the basis {delta_x : x in H_Gamma}
indexed by canonical normal forms. A diagonal symbol f at vertex v multiplies
delta_x by f(h_1), where h_1 is the leading v-syllable of x (the identity if x
has none). Right multiplication by h in H_w sends delta_x to delta_{x h^-1}, so
each column of the commutator has at most one nonzero entry:

    [f, J u_h J] delta_x = (f(lead(x h^-1)) - f(lead(x))) delta_{x h^-1}

All scalars are Fractions.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from .errors import PropertyViolationError, ValidationError
from .graph_product import GPElement, GraphProduct
from .graphs import Vertex
from .groups import Element
from .types import SweepRecord
from .wreath import GraphWreathProduct, WreathElement

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


class DiagSymbol:
    """A finitely supported function on the vertex group H_v, acting diagonally"""

    __slots__ = ("vertex", "values")

    def __init__(self, vertex: Vertex, values: Optional[Mapping[Element, Scalar]] = None):
        self.vertex = vertex
        self.values: Dict[Element, Fraction] = {
            x: Fraction(c) for x, c in (values or {}).items() if c != 0
        }

    @classmethod
    def indicator(cls, vertex: Vertex, elements: Iterable[Element]) -> "DiagSymbol":
        return cls(vertex, {x: 1 for x in elements})

    def __call__(self, x: Element) -> Fraction:
        return self.values.get(x, Fraction(0))

    @property
    def support(self) -> List[Element]:
        return list(self.values)

    @property
    def is_zero(self) -> bool:
        return not self.values

    def __repr__(self) -> str:
        return f"DiagSymbol(vertex={self.vertex}, support={len(self.values)})"


@dataclass(frozen=True)
class CommutatorTerm:
    coefficient: Fraction
    target: Any


@dataclass(frozen=True)
class TranslateCover:
    """
    Left translates a_i H_{Lk v} covering every nonzero commutator column

    `checked` and `nonzero` record the exhaustive sweep that verified the cover.
    """

    product: GraphProduct
    vertex: Vertex
    translates: Tuple[GPElement, ...]
    radius: int = 0
    checked: int = 0
    nonzero: int = 0
    records: Tuple[SweepRecord, ...] = field(default=(), repr=False)

    def covers(self, x: GPElement) -> bool:
        """x lies in some a_i H_{Lk v}, i.e. supp(a_i^-1 x) is inside Lk(v)"""
        link = self.product.graph.neighbors(self.vertex)
        return any(
            self.product.support(self.product.multiply(self.product.invert(a), x)) <= link
            for a in self.translates
        )

    def __len__(self) -> int:
        return len(self.translates)


def _check_syllable(gp: GraphProduct, w: Vertex, h: Element) -> None:
    group = gp.group_at(w)
    if not group.contains(h):
        raise ValidationError(f"{h!r} is not in the vertex group at {w}")
    if group.is_identity(h):
        raise ValidationError("commutator with the identity syllable is degenerate")


def diag_coeff(f: DiagSymbol, x: GPElement) -> Fraction:
    """The diagonal entry of f at delta_x: f(leading v-syllable of x)"""
    return f(x.product.leading_syllable(x, f.vertex))


def commutator_coeff(f: DiagSymbol, w: Vertex, h: Element, x: GPElement) -> CommutatorTerm:
    """
    The single nonzero-candidate entry of [f, J u_h J] in column delta_x

    Args:
        f: Diagonal symbol at vertex v
        w: Vertex of the syllable h
        h: Non-identity element of H_w
        x: Basis element

    Returns:
        The coefficient together with its row x h^-1

    Raises:
        ValidationError: If h is the identity or not in H_w
    """
    gp = x.product
    _check_syllable(gp, w, h)
    target = gp.multiply(x, gp.single(w, gp.group_at(w).inverse(h)))
    return CommutatorTerm(diag_coeff(f, target) - diag_coeff(f, x), target)


def crossed_commutator_coeff(
    f: DiagSymbol, w: Vertex, h: Element, z: WreathElement
) -> CommutatorTerm:
    """
    The coefficient for z = (x, g): the plain coefficient with h moved to g w

    The row is z (h at w, e)^-1 = (x sigma_g(h^-1), g); the group part is untouched.
    """
    wp = z.product
    _check_syllable(wp.gp, w, h)
    gw = wp.action.act(z.g, w)
    plain = commutator_coeff(f, gw, h, z.h)
    target = wp.multiply(z, wp.invert(wp.from_h(wp.gp.single(w, h))))
    return CommutatorTerm(plain.coefficient, target)


def case_flags(f: DiagSymbol, w: Vertex, x: GPElement, target: GPElement) -> Tuple[bool, bool, bool]:
    """(v == w, supp x and supp target inside St(v), leading v-syllable in x or target)"""
    gp = x.product
    v = f.vertex
    star = gp.graph.star(v)
    e = gp.group_at(v).identity()
    in_star = gp.support(x) <= star and gp.support(target) <= star
    movable = gp.leading_syllable(x, v) != e or gp.leading_syllable(target, v) != e
    return v == w, in_star, movable


def star_formula(f: DiagSymbol, h: Element, x: GPElement) -> Fraction:
    """
    Closed form for x supported in St(v) and h at v

    Writing x = a y with a the leading v-syllable and y in H_{Lk v}, the
    coefficient is f(a h^-1) - f(a).
    """
    gp = x.product
    group = gp.group_at(f.vertex)
    a = gp.leading_syllable(x, f.vertex)
    return f(group.product(a, group.inverse(h))) - f(a)


def _record(source: str, term: CommutatorTerm, flags: Tuple[bool, bool, bool], target: str) -> SweepRecord:
    same, in_star, movable = flags
    return SweepRecord(
        source=source,
        coefficient=str(term.coefficient),
        target=target,
        same_vertex=same,
        in_star=in_star,
        front_movable=movable,
    )


def sweep_commutator(
    f: DiagSymbol, w: Vertex, h: Element, basis: Iterable[GPElement]
) -> List[Tuple[GPElement, CommutatorTerm, SweepRecord]]:
    """Evaluate every column in `basis`, with the case flags of each"""
    out = []
    for x in basis:
        term = commutator_coeff(f, w, h, x)
        flags = case_flags(f, w, x, term.target)
        out.append((x, term, _record(x.product.render(x), term, flags, x.product.render(term.target))))
    return out


def sweep_crossed_commutator(
    wp: GraphWreathProduct,
    f: DiagSymbol,
    w: Vertex,
    h: Element,
    basis: Iterable[GPElement],
    group_elements: Iterable[Element],
) -> List[Tuple[WreathElement, CommutatorTerm, SweepRecord]]:
    """Evaluate every column (x, g) of the crossed commutator"""
    out = []
    gs = list(group_elements)
    for x in basis:
        for g in gs:
            z = wp.element(x, g)
            term = crossed_commutator_coeff(f, w, h, z)
            gw = wp.action.act(g, w)
            flags = case_flags(f, gw, x, term.target.h)
            out.append((z, term, _record(wp.render(z), term, flags, wp.render(term.target))))
    return out


def smallness_witness(gp: GraphProduct, f: DiagSymbol, w: Vertex, h: Element, ball_radius: int) -> TranslateCover:
    """
    Build and verify a translate cover of the nonzero columns of [f, J u_h J]

    The translates are the single v-syllables a with a in supp f or
    a h^-1 in supp f (a may be the identity); the cover is empty when f = 0 or
    v != w. Every basis element of syllable length <= ball_radius is swept.

    Raises:
        PropertyViolationError: If a nonzero column escapes the cover
    """
    _check_syllable(gp, w, h)
    v = f.vertex
    translates: List[GPElement] = []
    if v == w and not f.is_zero:
        group = gp.group_at(v)
        heads = set(f.support) | {group.product(a, h) for a in f.support}
        for a in sorted(heads, key=group.sort_key):
            translates.append(gp.single(v, a))
    cover = TranslateCover(gp, v, tuple(translates))
    basis = gp.syllable_ball(ball_radius)
    nonzero = 0
    records = []
    for x, term, record in sweep_commutator(f, w, h, basis):
        if term.coefficient == 0:
            continue
        nonzero += 1
        records.append(record)
        if not cover.covers(x):
            raise PropertyViolationError(
                f"nonzero column outside the translate cover at vertex {v}",
                counterexample=f"x={gp.render(x)} coefficient={term.coefficient}",
            )
    logger.debug("cover at %s: %d translates, %d/%d nonzero columns", v, len(translates), nonzero, len(basis))
    return TranslateCover(gp, v, tuple(translates), ball_radius, len(basis), nonzero, tuple(records))
