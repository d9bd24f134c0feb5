"""
Tests for group backends
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwkit.errors import DomainError, UnsupportedOperationError, ValidationError
from gwkit.groups import (
    CyclicGroup,
    FreeGroup,
    IntegerGroup,
    PermutationGroup,
    TableGroup,
    build_group,
    dihedral_group,
    symmetric_group,
)

KLEIN = [
    [0, 1, 2, 3],
    [1, 0, 3, 2],
    [2, 3, 0, 1],
    [3, 2, 1, 0],
]


class TestCyclicGroup:
    """Test Z/n"""

    def test_arithmetic(self):
        """Test products and inverses mod n"""
        g = CyclicGroup(5)

        assert g.product(3, 4) == 2
        assert g.inverse(2) == 3
        assert g.order() == 5

    def test_word_length(self):
        """Test |k| = min(k, n - k)"""
        g = CyclicGroup(5)

        assert [g.word_length(k) for k in range(5)] == [0, 1, 2, 2, 1]

    def test_generators(self):
        """Test the symmetrized generating set"""
        assert CyclicGroup(5).generators() == (1, 4)
        assert CyclicGroup(2).generators() == (1,)
        assert CyclicGroup(1).generators() == ()

    def test_parse_reduces(self):
        """Test literals are read mod n"""
        assert CyclicGroup(5).parse("7") == 2

    def test_parse_rejects_garbage(self):
        """Test malformed literals"""
        with pytest.raises(ValidationError, match="not a residue mod 5"):
            CyclicGroup(5).parse("x")

    def test_foreign_element(self):
        """Test elements outside the group are refused"""
        with pytest.raises(DomainError, match="is not an element of"):
            CyclicGroup(5).product(1, 9)


class TestIntegerGroup:
    """Test Z"""

    def test_word_length(self):
        """Test |n| = abs(n)"""
        assert IntegerGroup().word_length(-4) == 4

    def test_ball(self):
        """Test balls are ordered by length then value"""
        assert IntegerGroup().ball(2) == [0, -1, 1, -2, 2]

    def test_infinite(self):
        """Test Z is infinite and cannot be listed"""
        g = IntegerGroup()

        assert not g.is_finite
        assert g.torsion_free
        with pytest.raises(UnsupportedOperationError, match="is infinite"):
            g.elements()

    def test_random_element_in_ball(self):
        """Test random elements respect the radius"""
        g = IntegerGroup()
        rng = random.Random(3)

        for _ in range(50):
            assert abs(g.random_element(rng, radius=4)) <= 4


class TestFreeGroup:
    """Test the sympy-backed free group"""

    def test_parse_and_render(self):
        """Test the word syntax"""
        f = FreeGroup(2)
        x = f.parse("ab^-1")

        assert f.render(x) == "ab^-1"
        assert f.letters(x) == (1, -2)
        assert f.word_length(x) == 2

    def test_free_reduction(self):
        """Test parsing reduces freely"""
        f = FreeGroup(2)

        assert f.is_identity(f.parse("ab^2b^-2a^-1"))
        assert f.render(f.parse("e")) == "e"

    def test_product(self):
        """Test concatenation with cancellation"""
        f = FreeGroup(2)

        assert f.letters(f.product(f.parse("ab"), f.parse("b^-1a"))) == (1, 1)

    def test_letter_exceeds_rank(self):
        """Test letters beyond the rank"""
        with pytest.raises(ValidationError, match="exceeds rank 2"):
            FreeGroup(2).parse("c")

    def test_ball_size(self):
        """Test the radius-2 ball of F_2 has 1 + 4 + 12 elements"""
        assert len(FreeGroup(2).ball(2)) == 17

    def test_bad_rank(self):
        """Test the rank range"""
        with pytest.raises(ValidationError, match="rank must lie in 1..26"):
            FreeGroup(0)

    @given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=12))
    def test_length_is_reduced_length(self, letters):
        """Test |w| is the length of the freely reduced word"""
        f = FreeGroup(2)
        x = f.from_letters(letters)

        assert f.word_length(x) == len(f.letters(x))
        assert f.word_length(f.inverse(x)) == f.word_length(x)


class TestPermutationGroup:
    """Test permutation groups"""

    def test_symmetric_group_order(self):
        """Test |S_3| = 6"""
        assert symmetric_group(3).order() == 6

    def test_transposition_13_has_length_3(self):
        """Test (13) needs three adjacent transpositions"""
        s3 = symmetric_group(3)

        assert s3.word_length(s3.parse("[2,1,0]")) == 3
        assert s3.word_length(s3.parse("[1,0,2]")) == 1

    def test_left_action(self):
        """Test product(a, b) applies b first"""
        s3 = symmetric_group(3)
        a, b = s3.parse("[1,0,2]"), s3.parse("[0,2,1]")
        ab = s3.product(a, b)

        for p in range(3):
            assert s3.apply(ab, p) == s3.apply(a, s3.apply(b, p))

    def test_dihedral_group(self):
        """Test D_4 has order 8 and a rotation of order 4"""
        d4 = dihedral_group(4)
        rotation = d4.declared_generators()[0]

        assert d4.order() == 8
        assert d4.render(rotation) == "[1,2,3,0]"
        assert d4.is_identity(d4.power(rotation, 4))
        assert not d4.is_identity(d4.power(rotation, 2))

    def test_parse_identity(self):
        """Test "e" is the identity"""
        s3 = symmetric_group(3)

        assert s3.is_identity(s3.parse("e"))

    def test_parse_outside_subgroup(self):
        """Test permutations outside the generated subgroup"""
        g = PermutationGroup(3, [[1, 2, 0]])

        with pytest.raises(DomainError):
            g.parse("[1,0,2]")

    def test_invalid_generator(self):
        """Test generators must be permutations"""
        with pytest.raises(ValidationError, match="generator 0 is not a permutation"):
            PermutationGroup(3, [[0, 0, 1]])


class TestTableGroup:
    """Test groups from multiplication tables"""

    def test_klein_four(self):
        """Test the Klein four-group"""
        g = TableGroup(KLEIN)

        assert g.order() == 4
        assert g.identity() == 0
        assert g.inverse(3) == 3
        assert g.product(1, 2) == 3

    def test_generators_must_generate(self):
        """Test a non-generating set is refused"""
        with pytest.raises(ValidationError, match="generate 2 of 4 elements"):
            TableGroup(KLEIN, gens=[1])

    def test_not_latin(self):
        """Test rows must be permutations"""
        with pytest.raises(ValidationError, match="row 0 is not a permutation"):
            TableGroup([[0, 0], [1, 0]])

    def test_not_associative(self):
        """Test associativity is checked"""
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(ValidationError, match="not associative"):
            TableGroup(table)


class TestBuildGroup:
    """Test build_group() from specs"""

    def test_specs(self):
        """Test each spec type"""
        assert build_group({"type": "cyclic", "n": 3}) == CyclicGroup(3)
        assert build_group({"type": "integers"}) == IntegerGroup()
        assert build_group({"type": "free", "rank": 2}) == FreeGroup(2)
        assert build_group({"type": "dihedral", "n": 4}).order() == 8
        assert build_group({"type": "symmetric", "n": 3}).order() == 6
        assert build_group({"type": "table", "mul": KLEIN}).order() == 4
        assert build_group({"type": "perm", "degree": 3, "gens": [[1, 2, 0]]}).order() == 3

    def test_bad_spec(self):
        """Test a malformed spec"""
        with pytest.raises(ValidationError, match="group: field"):
            build_group({"type": "cyclic", "n": 0})


class TestGroupAxioms:
    """Property tests shared by every finite backend"""

    @settings(max_examples=40)
    @given(st.sampled_from(["c6", "s3", "d4", "klein"]), st.data())
    def test_axioms(self, name, data):
        """Test associativity, inverses and subadditivity of word length"""
        g = {
            "c6": CyclicGroup(6),
            "s3": symmetric_group(3),
            "d4": dihedral_group(4),
            "klein": TableGroup(KLEIN),
        }[name]
        elements = g.elements()
        a, b, c = (data.draw(st.sampled_from(elements)) for _ in range(3))

        assert g.product(g.product(a, b), c) == g.product(a, g.product(b, c))
        assert g.is_identity(g.product(a, g.inverse(a)))
        assert g.word_length(g.product(a, b)) <= g.word_length(a) + g.word_length(b)
        assert g.evaluate(g.as_word(a)) == a
