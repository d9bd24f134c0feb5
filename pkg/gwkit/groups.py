"""
Groups

Exact arithmetic for the vertex groups H and acting groups G: finite cyclic
groups, the integers, free groups (sympy free groups), permutation groups
(sympy permutations) and finite groups given by a multiplication table.

Every group carries a declared generating list (referenced by generator
images of actions) and its symmetrization (used for word lengths and balls).
Words in the declared generators are tuples of signed 1-based indices:
(1, -2) means g_1 * g_2^-1.
"""

import random
import re
from abc import ABC, abstractmethod
from collections import deque
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import TypeAdapter
from pydantic import ValidationError as PydanticValidationError
from sympy.combinatorics import Permutation
from sympy.combinatorics.free_groups import FreeGroupElement, free_group

from .errors import (
    BudgetError,
    DomainError,
    GwkitError,
    UnsupportedOperationError,
    ValidationError,
)
from .graphs import Letters, letter_order, reduce_letters, render_letters
from .types import (
    CyclicGroupSpec,
    DihedralGroupSpec,
    FreeGroupSpec,
    GroupSpec,
    IntegerGroupSpec,
    PermutationGroupSpec,
    SymmetricGroupSpec,
    TableGroupSpec,
)

Element = Any

_GROUP_SPEC: TypeAdapter[Any] = TypeAdapter(GroupSpec)
_WORD_TOKEN = re.compile(r"([a-z])(?:\^(-?\d+))?")


class Group(ABC):
    """An exact group with a fixed generating set"""

    kind: str = "group"

    @property
    @abstractmethod
    def key(self) -> Tuple[Any, ...]:
        ...

    @abstractmethod
    def identity(self) -> Element:
        ...

    @abstractmethod
    def _product(self, a: Element, b: Element) -> Element:
        ...

    @abstractmethod
    def _inverse(self, a: Element) -> Element:
        ...

    @abstractmethod
    def contains(self, a: Any) -> bool:
        ...

    @abstractmethod
    def declared_generators(self) -> Tuple[Element, ...]:
        ...

    @abstractmethod
    def parse(self, text: str) -> Element:
        ...

    @abstractmethod
    def render(self, a: Element) -> str:
        ...

    @abstractmethod
    def sort_key(self, a: Element) -> Any:
        """Total order on elements, used to make enumerations deterministic"""

    @property
    def is_finite(self) -> bool:
        return self.order() is not None

    @property
    def torsion_free(self) -> bool:
        return False

    def order(self) -> Optional[int]:
        return None

    def _check(self, *elements: Any) -> None:
        for a in elements:
            if not self.contains(a):
                raise DomainError(f"{a!r} is not an element of {self!r}")

    def product(self, a: Element, b: Element) -> Element:
        self._check(a, b)
        return self._product(a, b)

    def inverse(self, a: Element) -> Element:
        self._check(a)
        return self._inverse(a)

    def equal(self, a: Element, b: Element) -> bool:
        self._check(a, b)
        return bool(a == b)

    def is_identity(self, a: Element) -> bool:
        return bool(a == self.identity())

    def power(self, a: Element, n: int) -> Element:
        base = a if n >= 0 else self.inverse(a)
        result = self.identity()
        for _ in range(abs(n)):
            result = self._product(result, base)
        return result

    def generators(self) -> Tuple[Element, ...]:
        """Symmetrized generating set without the identity, declared order first"""
        out: List[Element] = []
        for g in self.declared_generators():
            for x in (g, self._inverse(g)):
                if not self.is_identity(x) and x not in out:
                    out.append(x)
        return tuple(out)

    def _signed_generators(self) -> List[Tuple[int, Element]]:
        out: List[Tuple[int, Element]] = []
        for i, g in enumerate(self.declared_generators(), start=1):
            out.append((i, g))
            out.append((-i, self._inverse(g)))
        return out

    def evaluate(self, word: Iterable[int]) -> Element:
        """Multiply out a word in the declared generators"""
        gens = self.declared_generators()
        result = self.identity()
        for letter in word:
            g = gens[abs(letter) - 1]
            result = self._product(result, g if letter > 0 else self._inverse(g))
        return result

    def word_length(self, g: Element) -> int:
        """Length of a shortest word in the symmetrized generators"""
        return len(self.as_word(g))

    @abstractmethod
    def as_word(self, g: Element) -> Letters:
        """A shortest word in the declared generators representing g"""

    def ball(self, radius: int, budget: int = 1_000_000) -> List[Element]:
        """All elements of word length <= radius, ordered by length then sort_key"""
        if radius < 0:
            raise ValidationError("ball radius must be nonnegative")
        seen = {self.identity()}
        layers = [[self.identity()]]
        for _ in range(radius):
            nxt = []
            for x in layers[-1]:
                for s in self.generators():
                    y = self._product(x, s)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if len(seen) > budget:
                raise BudgetError(f"group ball of radius {radius} exceeds {budget} elements", budget)
            if not nxt:
                break
            layers.append(sorted(nxt, key=self.sort_key))
        return [x for layer in layers for x in layer]

    def elements(self) -> List[Element]:
        raise UnsupportedOperationError(f"{self!r} is infinite")

    def random_element(self, rng: random.Random, radius: int = 4) -> Element:
        """Uniform for finite groups, a random word of length <= radius otherwise"""
        if self.is_finite:
            return rng.choice(self.elements())
        gens = self.generators()
        result = self.identity()
        if not gens:
            return result
        for _ in range(rng.randint(0, radius)):
            result = self._product(result, rng.choice(gens))
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Group):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}{self.key[1:]}"


class CyclicGroup(Group):
    """Z/n with generator 1; elements are residues in [0, n)"""

    kind = "cyclic"

    def __init__(self, n: int):
        if n < 1:
            raise ValidationError("cyclic group order must be positive")
        self.n = n

    @property
    def key(self) -> Tuple[Any, ...]:
        return ("cyclic", self.n)

    def identity(self) -> int:
        return 0

    def _product(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def _inverse(self, a: int) -> int:
        return (-a) % self.n

    def contains(self, a: Any) -> bool:
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.n

    def declared_generators(self) -> Tuple[int, ...]:
        return (1 % self.n,)

    def order(self) -> int:
        return self.n

    def elements(self) -> List[int]:
        return list(range(self.n))

    def as_word(self, g: int) -> Letters:
        self._check(g)
        return (1,) * g if g <= self.n - g else (-1,) * (self.n - g)

    def word_length(self, g: int) -> int:
        self._check(g)
        return min(g, self.n - g)

    def parse(self, text: str) -> int:
        try:
            return int(text.strip()) % self.n
        except ValueError as e:
            raise ValidationError(f"not a residue mod {self.n}: {text!r}") from e

    def render(self, a: int) -> str:
        return str(a)

    def sort_key(self, a: int) -> int:
        return a


class IntegerGroup(Group):
    """The integers under addition with generator 1"""

    kind = "integers"

    @property
    def key(self) -> Tuple[Any, ...]:
        return ("integers",)

    @property
    def torsion_free(self) -> bool:
        return True

    def identity(self) -> int:
        return 0

    def _product(self, a: int, b: int) -> int:
        return a + b

    def _inverse(self, a: int) -> int:
        return -a

    def contains(self, a: Any) -> bool:
        return isinstance(a, int) and not isinstance(a, bool)

    def declared_generators(self) -> Tuple[int, ...]:
        return (1,)

    def as_word(self, g: int) -> Letters:
        self._check(g)
        return (1,) * g if g >= 0 else (-1,) * (-g)

    def word_length(self, g: int) -> int:
        self._check(g)
        return abs(g)

    def ball(self, radius: int, budget: int = 1_000_000) -> List[int]:
        if radius < 0:
            raise ValidationError("ball radius must be nonnegative")
        return sorted(range(-radius, radius + 1), key=lambda x: (abs(x), x))

    def parse(self, text: str) -> int:
        try:
            return int(text.strip())
        except ValueError as e:
            raise ValidationError(f"not an integer: {text!r}") from e

    def render(self, a: int) -> str:
        return str(a)

    def sort_key(self, a: int) -> Tuple[int, int]:
        return (abs(a), a)


class FreeGroup(Group):
    """Free group on the letters a, b, c, ... backed by sympy free groups"""

    kind = "free"

    def __init__(self, rank: int):
        if not 1 <= rank <= 26:
            raise ValidationError("free group rank must lie in 1..26")
        self.rank = rank
        names = [chr(ord("a") + i) for i in range(rank)]
        self._group, *gens = free_group(", ".join(names))
        self._gens: Tuple[FreeGroupElement, ...] = tuple(gens)
        self._index = {g.array_form[0][0]: i + 1 for i, g in enumerate(self._gens)}

    @property
    def key(self) -> Tuple[Any, ...]:
        return ("free", self.rank)

    @property
    def torsion_free(self) -> bool:
        return True

    def identity(self) -> FreeGroupElement:
        return self._group.identity

    def _product(self, a: FreeGroupElement, b: FreeGroupElement) -> FreeGroupElement:
        return a * b

    def _inverse(self, a: FreeGroupElement) -> FreeGroupElement:
        return a**-1

    def contains(self, a: Any) -> bool:
        return isinstance(a, FreeGroupElement) and a.group == self._group

    def declared_generators(self) -> Tuple[FreeGroupElement, ...]:
        return self._gens

    def letters(self, a: FreeGroupElement) -> Letters:
        """Reduced word of a as signed generator indices"""
        self._check(a)
        out: List[int] = []
        for symbol, exp in a.array_form:
            i = self._index[symbol]
            out.extend([i if exp > 0 else -i] * abs(exp))
        return tuple(out)

    def from_letters(self, letters: Iterable[int]) -> FreeGroupElement:
        return self.evaluate(reduce_letters(letters))

    def as_word(self, g: FreeGroupElement) -> Letters:
        return self.letters(g)

    def parse(self, text: str) -> FreeGroupElement:
        text = text.strip()
        if text in ("e", "1", ""):
            return self.identity()
        pos = 0
        letters: List[int] = []
        while pos < len(text):
            m = _WORD_TOKEN.match(text, pos)
            if m is None:
                raise ValidationError(f"malformed free-group word {text!r} at position {pos}")
            i = ord(m.group(1)) - ord("a") + 1
            if i > self.rank:
                raise ValidationError(f"letter {m.group(1)!r} exceeds rank {self.rank}")
            exp = int(m.group(2)) if m.group(2) is not None else 1
            letters.extend([i if exp > 0 else -i] * abs(exp))
            pos = m.end()
        return self.from_letters(letters)

    def render(self, a: FreeGroupElement) -> str:
        return render_letters(self.letters(a))

    def sort_key(self, a: FreeGroupElement) -> Tuple[int, Tuple[int, ...]]:
        word = self.letters(a)
        return (len(word), tuple(letter_order(x) for x in word))


class _EnumeratedGroup(Group):
    """Finite group whose Cayley graph is explored once, breadth first"""

    _words: Optional[Dict[Hashable, Letters]] = None

    def _word_table(self) -> Dict[Hashable, Letters]:
        if self._words is None:
            table: Dict[Hashable, Letters] = {self.identity(): ()}
            queue = deque([self.identity()])
            signed = self._signed_generators()
            while queue:
                x = queue.popleft()
                for letter, s in signed:
                    y = self._product(x, s)
                    if y not in table:
                        table[y] = table[x] + (letter,)
                        queue.append(y)
            self._words = table
        return self._words

    def contains(self, a: Any) -> bool:
        try:
            return a in self._word_table()
        except TypeError:
            return False

    def as_word(self, g: Element) -> Letters:
        self._check(g)
        return self._word_table()[g]

    def order(self) -> int:
        return len(self._word_table())

    def elements(self) -> List[Element]:
        return sorted(self._word_table(), key=self.sort_key)


class PermutationGroup(_EnumeratedGroup):
    """
    Permutations of 0..degree-1 generated by the declared permutations

    product(a, b) acts as "first b, then a" so that the group acts on the left.
    """

    kind = "perm"

    def __init__(self, degree: int, gens: Sequence[Sequence[int]], name: str = "perm"):
        if degree < 1:
            raise ValidationError("permutation degree must be positive")
        self.degree = degree
        self.name = name
        perms = []
        for i, images in enumerate(gens):
            if sorted(images) != list(range(degree)):
                raise ValidationError(
                    f"generator {i} is not a permutation of 0..{degree - 1}: {list(images)}",
                    location=f"gens.{i}",
                )
            perms.append(Permutation(list(images)))
        self._gens = tuple(perms)
        self._words = None

    @property
    def key(self) -> Tuple[Any, ...]:
        return ("perm", self.degree, tuple(tuple(g.array_form) for g in self._gens))

    def identity(self) -> Permutation:
        return Permutation(list(range(self.degree)))

    def _product(self, a: Permutation, b: Permutation) -> Permutation:
        return b * a

    def _inverse(self, a: Permutation) -> Permutation:
        return ~a

    def contains(self, a: Any) -> bool:
        return isinstance(a, Permutation) and a.size == self.degree and super().contains(a)

    def declared_generators(self) -> Tuple[Permutation, ...]:
        return self._gens

    def apply(self, a: Permutation, point: int) -> int:
        return int(a.array_form[point])

    def parse(self, text: str) -> Permutation:
        text = text.strip()
        if text == "e":
            return self.identity()
        try:
            images = [int(x) for x in text.strip("[]()").split(",")]
        except ValueError as e:
            raise ValidationError(f"malformed permutation literal {text!r}") from e
        if sorted(images) != list(range(self.degree)):
            raise ValidationError(f"{text!r} is not a permutation of 0..{self.degree - 1}")
        p = Permutation(images)
        self._check(p)
        return p

    def render(self, a: Permutation) -> str:
        return "[" + ",".join(str(x) for x in a.array_form) + "]"

    def sort_key(self, a: Permutation) -> Tuple[int, ...]:
        return tuple(a.array_form)

    def __repr__(self) -> str:
        return f"PermutationGroup({self.name}, degree={self.degree})"


class TableGroup(_EnumeratedGroup):
    """Finite group given by a verified multiplication table on 0..n-1"""

    kind = "table"

    def __init__(self, mul: Sequence[Sequence[int]], gens: Optional[Sequence[int]] = None):
        n = len(mul)
        if n == 0:
            raise ValidationError("multiplication table is empty")
        for i, row in enumerate(mul):
            if len(row) != n:
                raise ValidationError(f"row {i} has {len(row)} entries, expected {n}", location=f"mul.{i}")
            if sorted(row) != list(range(n)):
                raise ValidationError(f"row {i} is not a permutation of 0..{n - 1}", location=f"mul.{i}")
        for j in range(n):
            if sorted(mul[i][j] for i in range(n)) != list(range(n)):
                raise ValidationError(f"column {j} is not a permutation of 0..{n - 1}")
        units = [e for e in range(n) if all(mul[e][j] == j and mul[j][e] == j for j in range(n))]
        if not units:
            raise ValidationError("multiplication table has no two-sided identity")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                        raise ValidationError(f"not associative at ({a}, {b}, {c})")
        self._mul = tuple(tuple(row) for row in mul)
        self._e = units[0]
        self._inv = tuple(next(b for b in range(n) if mul[a][b] == self._e) for a in range(n))
        declared = list(gens) if gens is not None else [a for a in range(n) if a != self._e]
        for g in declared:
            if not 0 <= g < n:
                raise ValidationError(f"generator index {g} out of range", location="gens")
        self._gens = tuple(declared)
        self._words = None
        if len(self._word_table()) != n:
            raise ValidationError(
                f"generators {list(self._gens)} generate {len(self._word_table())} of {n} elements"
            )

    @property
    def key(self) -> Tuple[Any, ...]:
        return ("table", self._mul, self._gens)

    def identity(self) -> int:
        return self._e

    def _product(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def _inverse(self, a: int) -> int:
        return self._inv[a]

    def contains(self, a: Any) -> bool:
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < len(self._mul)

    def declared_generators(self) -> Tuple[int, ...]:
        return self._gens

    def parse(self, text: str) -> int:
        try:
            a = int(text.strip())
        except ValueError as e:
            raise ValidationError(f"not a table index: {text!r}") from e
        self._check(a)
        return a

    def render(self, a: int) -> str:
        return str(a)

    def sort_key(self, a: int) -> int:
        return a

    def __repr__(self) -> str:
        return f"TableGroup(order={len(self._mul)})"


def dihedral_group(n: int) -> PermutationGroup:
    """D_n of order 2n, generated by the rotation i -> i+1 and the reflection i -> -i"""
    rotation = [(i + 1) % n for i in range(n)]
    reflection = [(-i) % n for i in range(n)]
    return PermutationGroup(n, [rotation, reflection], name=f"D_{n}")


def symmetric_group(n: int) -> PermutationGroup:
    """S_n generated by the adjacent transpositions (i, i+1)"""
    gens = []
    for i in range(n - 1):
        images = list(range(n))
        images[i], images[i + 1] = images[i + 1], images[i]
        gens.append(images)
    return PermutationGroup(n, gens, name=f"S_{n}")


def build_group(spec: Union[Mapping[str, Any], Any]) -> Group:
    """
    Build a group from a GroupSpec or its dict form

    Args:
        spec: A group spec model or its JSON-like dict form

    Raises:
        ValidationError: If the description is malformed or a table/permutation is invalid
    """
    if isinstance(spec, Mapping):
        try:
            spec = _GROUP_SPEC.validate_python(spec)
        except PydanticValidationError as e:
            raise GwkitError.from_pydantic(e, "group") from e

    if isinstance(spec, CyclicGroupSpec):
        return CyclicGroup(spec.n)
    if isinstance(spec, IntegerGroupSpec):
        return IntegerGroup()
    if isinstance(spec, FreeGroupSpec):
        return FreeGroup(spec.rank)
    if isinstance(spec, TableGroupSpec):
        return TableGroup(spec.mul, spec.gens)
    if isinstance(spec, PermutationGroupSpec):
        return PermutationGroup(spec.degree, spec.gens)
    if isinstance(spec, DihedralGroupSpec):
        return dihedral_group(spec.n)
    if isinstance(spec, SymmetricGroupSpec):
        return symmetric_group(spec.n)
    raise ValidationError(f"unsupported group spec: {spec!r}")
