"""
Tests for the brute-force oracles
"""

import math

import pytest

from gwkit import oracles
from gwkit.errors import BudgetError
from gwkit.graph_product import GraphProduct, Syllable
from gwkit.graphs import Multigraph
from gwkit.groups import CyclicGroup, symmetric_group
from gwkit.suites.quotient import c4_half_turn, c4_rotation


class TestRewriting:
    """Test the rewriting closure"""

    def test_swap_and_merge(self, k2_integers):
        """Test every elementary move is applied"""
        word = [Syllable(0, 1), Syllable(1, 2), Syllable(0, -1)]
        closure = oracles.rewriting_closure(k2_integers, word)

        assert (Syllable(1, 2), Syllable(0, 1), Syllable(0, -1)) in closure
        assert (Syllable(1, 2),) in closure

    def test_normal_forms(self, k2_integers):
        """Test the shortest reachable words"""
        word = [Syllable(0, 1), Syllable(1, 2)]

        assert oracles.normal_forms(k2_integers, word) == {
            (Syllable(0, 1), Syllable(1, 2)),
            (Syllable(1, 2), Syllable(0, 1)),
        }
        assert oracles.canonical_form(k2_integers, word) == (Syllable(0, 1), Syllable(1, 2))

    def test_closure_budget(self, k2_integers):
        """Test the closure stops at its budget"""
        word = [Syllable(v % 2, 1) for v in range(6)]

        with pytest.raises(BudgetError, match="rewriting closure exceeds 5 words"):
            oracles.rewriting_closure(k2_integers, word, budget=5)

    def test_is_irreducible(self, path_z2):
        """Test equal vertices separated only by link vertices reduce"""
        assert not oracles.is_irreducible(path_z2, [Syllable(0, 1), Syllable(1, 1), Syllable(0, 1)])
        assert oracles.is_irreducible(path_z2, [Syllable(0, 1), Syllable(2, 1), Syllable(0, 1)])

    def test_presentation_length(self, path_z2):
        """Test the shortest product of syllables"""
        a = path_z2.parse("0:1 2:1 0:1")

        assert oracles.presentation_length(path_z2, a, 4) == 3
        assert oracles.presentation_length(path_z2, a, 2) is None

    def test_presentation_lengths_table(self, path_z2):
        """Test the table is keyed by canonical words and agrees with the normal forms"""
        table = oracles.presentation_lengths(path_z2, 2)

        assert table[()] == 0
        assert sorted(table.values()) == [0, 1, 1, 1, 2, 2, 2, 2]
        for key, k in table.items():
            assert key == oracles.canonical_form(path_z2, key)
            assert len(path_z2.normalize(list(key))) == k

    def test_presentation_lengths_use_rewriting_only(self, path_z2, monkeypatch):
        """Test the table never calls the normal-form code it is compared with"""

        def refuse(*args, **kwargs):
            raise AssertionError("oracle reached GraphProduct")

        monkeypatch.setattr(GraphProduct, "normalize", refuse)
        monkeypatch.setattr(GraphProduct, "multiply", refuse)
        table = oracles.presentation_lengths(path_z2, 3)

        assert table[(Syllable(0, 1), Syllable(2, 1), Syllable(0, 1))] == 3


class TestGraphOracles:
    """Test the graph-predicate oracles"""

    def test_c5(self, c5):
        """Test C_5"""
        assert oracles.girth(c5.vertices(), c5.edges()) == 5
        assert oracles.untransvectable(c5.vertices(), c5.edges())
        assert oracles.rigid(c5.vertices(), c5.edges())

    def test_c4(self, c4):
        """Test C_4"""
        assert oracles.girth(c4.vertices(), c4.edges()) == 4
        assert not oracles.untransvectable(c4.vertices(), c4.edges())
        assert not oracles.rigid(c4.vertices(), c4.edges())

    def test_forest(self):
        """Test forests have infinite girth"""
        assert oracles.girth([0, 1, 2], [(0, 1), (1, 2)]) == math.inf


class TestGroupOracles:
    """Test Cayley-graph distances"""

    def test_word_length(self):
        """Test BFS distances"""
        s3 = symmetric_group(3)

        assert oracles.word_length(s3, s3.parse("[2,1,0]")) == 3
        assert oracles.word_length(CyclicGroup(7), 4) == 3


class TestQuotientOracles:
    """Test orbit enumeration and multigraph isomorphism"""

    def test_quotients(self):
        """Test the two C_4 quotients"""
        assert oracles.quotient(c4_rotation()) == (1, [(0, 0, 1)])
        assert oracles.quotient(c4_half_turn()) == (2, [(0, 1, 2)])

    def test_multigraph_isomorphic(self):
        """Test the permutation search"""
        q1 = Multigraph.from_counts([0, 1], {(0, 0): 1, (0, 1): 1})
        q2 = Multigraph.from_counts([0, 1], {(1, 1): 1, (0, 1): 1})

        assert oracles.multigraph_isomorphic(q1, q2)
        assert not oracles.multigraph_isomorphic(q1, Multigraph.from_counts([0, 1], {(0, 1): 2}))

    def test_permutation_budget(self):
        """Test the permutation search is bounded"""
        big = Multigraph.from_counts(range(9), {})

        with pytest.raises(BudgetError, match="limited to 8 vertices"):
            oracles.multigraph_isomorphic(big, big)
