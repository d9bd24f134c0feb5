"""
Tests for graph products and their normal forms
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwkit import oracles
from gwkit.errors import BudgetError, DomainError, UnknownVertexError, ValidationError
from gwkit.graph_product import GraphProduct, Syllable
from gwkit.graphs import FiniteGraph, build_graph
from gwkit.groups import CyclicGroup, IntegerGroup, symmetric_group


def words(vertices, low=-2, high=2, max_size=6):
    return st.lists(
        st.tuples(st.sampled_from(vertices), st.integers(min_value=low, max_value=high)),
        max_size=max_size,
    )


@pytest.fixture
def c4_integers(c4):
    return GraphProduct(c4, IntegerGroup())


class TestNormalize:
    """Test normalize() and parse()"""

    def test_forced_cancellation(self, k2_integers):
        """Test cancellation across a commuting syllable"""
        assert k2_integers.render(k2_integers.parse("0:1 1:2 0:-1")) == "1:2"

    def test_merge_across_link(self, path_z2):
        """Test syllables merge through a commuting neighbour"""
        assert path_z2.render(path_z2.parse("0:1 1:1 0:1")) == "1:1"

    def test_free_product_keeps_length(self):
        """Test no cancellation without an edge"""
        gp = GraphProduct(FiniteGraph(range(2), []), IntegerGroup())

        assert len(gp.parse("0:1 1:1 0:-1")) == 3

    def test_canonical_order(self, path_z2):
        """Test commuting syllables are sorted, blocked ones are not"""
        assert path_z2.render(path_z2.parse("1:1 0:1")) == "0:1 1:1"
        assert path_z2.render(path_z2.parse("2:1 0:1")) == "2:1 0:1"
        assert path_z2.parse("1:1 2:1 0:1").vertex_word == (1, 2, 0)

    def test_identity_syllables_dropped(self, k2_integers):
        """Test identity syllables vanish"""
        a = k2_integers.parse("0:0 1:3")

        assert a.syllables == (Syllable(1, 3),)
        assert k2_integers.render(k2_integers.parse("e")) == "e"
        assert k2_integers.parse("").is_identity

    def test_unknown_vertex(self, k2_integers):
        """Test syllables outside the graph"""
        with pytest.raises(UnknownVertexError):
            k2_integers.parse("5:1")

    def test_malformed_token(self, k2_integers):
        """Test tokens without a colon"""
        with pytest.raises(ValidationError, match="expected vertex:element"):
            k2_integers.parse("0-1")

    def test_wrong_group_element(self, path_z2):
        """Test elements outside the vertex group"""
        with pytest.raises(DomainError, match="is not in the vertex group at 0"):
            path_z2.normalize([(0, 3)])

    def test_per_vertex_groups(self):
        """Test a graph product with different vertex groups"""
        graph = build_graph({"type": "path", "n": 2})
        s3 = symmetric_group(3)
        gp = GraphProduct(graph, {0: CyclicGroup(2), 1: s3})
        a = gp.parse("1:[1,0,2] 0:1 1:[1,0,2]")

        assert gp.render(a) == "0:1"
        assert gp.uniform_group is None

    def test_missing_vertex_group(self):
        """Test every vertex needs a group"""
        with pytest.raises(ValidationError, match=r"no vertex group for vertices \[1\]"):
            GraphProduct(build_graph({"type": "path", "n": 2}), {0: CyclicGroup(2)})

    @settings(max_examples=60, deadline=None)
    @given(words([0, 1, 2, 3], low=0, high=1, max_size=6))
    def test_matches_rewriting_oracle(self, word):
        """Test normalize returns the lex-least shortest word of the rewriting closure"""
        gp = GraphProduct(build_graph({"type": "cycle", "n": 4}), CyclicGroup(2))
        syllables = [Syllable(v, x) for v, x in word]

        assert gp.normalize(syllables).syllables == oracles.canonical_form(gp, syllables)


class TestGroupLaws:
    """Test multiplication and inversion"""

    @settings(max_examples=80)
    @given(words([0, 1, 2, 3]), words([0, 1, 2, 3]), words([0, 1, 2, 3]))
    def test_associative(self, x, y, z):
        """Test (ab)c = a(bc)"""
        gp = GraphProduct(build_graph({"type": "cycle", "n": 4}), IntegerGroup())
        a, b, c = gp.normalize(x), gp.normalize(y), gp.normalize(z)

        assert (a * b) * c == a * (b * c)

    @settings(max_examples=80)
    @given(words([0, 1, 2, 3, 4]))
    def test_inverse(self, word):
        """Test a a^-1 = e and normalization is idempotent"""
        gp = GraphProduct(build_graph({"type": "cycle", "n": 5}), IntegerGroup())
        a = gp.normalize(word)

        assert (a * ~a).is_identity
        assert gp.normalize(a.syllables) == a

    @settings(max_examples=80)
    @given(words([0, 1, 2, 3, 4]))
    def test_product_equals_concatenation(self, word):
        """Test multiplying syllable by syllable equals normalizing the word"""
        gp = GraphProduct(build_graph({"type": "cycle", "n": 5}), IntegerGroup())
        a = gp.identity()
        for v, x in word:
            a = a * gp.single(v, x)

        assert a == gp.normalize(word)

    def test_mixed_products(self, k2_integers, path_z2):
        """Test elements of different products do not mix"""
        with pytest.raises(DomainError, match="different contexts"):
            k2_integers.multiply(k2_integers.identity(), path_z2.identity())


class TestSyllables:
    """Test syllable data of normal forms"""

    def test_support_and_length(self, c4_integers):
        """Test supp and syllable length"""
        a = c4_integers.parse("0:1 1:1 0:1")

        assert c4_integers.render(a) == "0:2 1:1"
        assert c4_integers.syllable_length(a) == 2
        assert c4_integers.support(a) == {0, 1}
        assert len(c4_integers.parse("0:1 2:1 0:1")) == 3

    def test_leading_syllable(self, path_z2):
        """Test leading syllables look through the link"""
        a = path_z2.parse("0:1 1:1")

        assert path_z2.leading_syllable(a, 1) == 1
        assert path_z2.leading_syllable(a, 2) == 0
        assert path_z2.trailing_syllable(a, 0) == 1

    def test_leading_syllable_matches_oracle(self, c4_integers):
        """Test leading syllables against a search of the shuffle class"""
        a = c4_integers.parse("1:2 0:1 3:-1 1:1 2:3")
        for v in range(4):
            assert c4_integers.leading_syllable(a, v) == oracles.leading_syllable(c4_integers, a, v)

    def test_in_subgroup(self, c4_integers):
        """Test membership in vertex subgroups"""
        a = c4_integers.parse("0:1 2:1")

        assert c4_integers.in_subgroup(a, [0, 2])
        assert not c4_integers.in_subgroup(a, [0, 1])

    def test_shuffle_class(self, path_z2):
        """Test the shuffles of a commuting pair"""
        a = path_z2.parse("0:1 1:1")

        assert len(path_z2.shuffle_class(a)) == 2

    def test_shuffle_class_bound(self, k2_integers):
        """Test the shuffle bound"""
        a = k2_integers.parse("0:1 1:1")

        with pytest.raises(BudgetError, match="exceeds bound 1"):
            k2_integers.shuffle_class(a, bound=1)

    def test_syllable_ball(self, path_z2):
        """Test the ball of syllable length 1"""
        ball = path_z2.syllable_ball(1)

        assert [path_z2.render(x) for x in ball] == ["e", "0:1", "1:1", "2:1"]


class TestShapes:
    """Test the one-syllable product shapes"""

    def test_left_shapes(self, k2_integers):
        """Test prepend, merge and cancel"""
        h = k2_integers.parse("0:2 1:1")

        assert k2_integers.left_shape(1, 3, k2_integers.parse("0:2")) == "prepend"
        assert k2_integers.left_shape(0, 1, h) == "merge"
        assert k2_integers.left_shape(0, -2, h) == "cancel"

    def test_right_shapes(self, path_z2):
        """Test right-hand shapes through the link"""
        h = path_z2.parse("0:1 1:1")

        assert path_z2.right_shape(h, 0, 1) == "cancel"
        assert path_z2.right_shape(h, 2, 1) == "prepend"

    @settings(max_examples=60)
    @given(words([0, 1, 2, 3, 4]), st.sampled_from([0, 1, 2, 3, 4]), st.integers(-2, 2).filter(bool))
    def test_shapes_always_classify(self, word, v, g):
        """Test every one-syllable product has a shape"""
        gp = GraphProduct(build_graph({"type": "cycle", "n": 5}), IntegerGroup())
        h = gp.normalize(word)

        assert gp.left_shape(v, g, h) in {"prepend", "merge", "cancel"}
        assert gp.right_shape(h, v, g) in {"prepend", "merge", "cancel"}


class TestBernoulli:
    """Test relabelling syllables along a vertex map"""

    def test_rotation(self, c5):
        """Test rotating C_5 shifts every syllable"""
        gp = GraphProduct(c5, IntegerGroup())
        a = gp.parse("0:1 2:3")

        assert gp.render(gp.bernoulli(lambda v: (v + 1) % 5, a)) == "1:1 3:3"

    def test_non_automorphism(self, c5):
        """Test maps breaking adjacency are refused"""
        gp = GraphProduct(c5, IntegerGroup())

        with pytest.raises(DomainError, match="does not preserve adjacency"):
            gp.bernoulli({0: 0, 1: 2, 2: 1, 3: 3, 4: 4}, gp.parse("0:1"))
