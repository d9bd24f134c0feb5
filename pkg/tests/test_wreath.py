"""
Tests for group actions, quotients and graph-wreath products
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwkit.errors import BudgetError, DomainError, InconclusiveError, UnsupportedOperationError, ValidationError
from gwkit.graphs import CayleyTreeGraph, LineGraph, Multigraph, build_graph
from gwkit.groups import CyclicGroup, FreeGroup, IntegerGroup, dihedral_group
from gwkit.suites.quotient import c4_half_turn, c4_rotation
from gwkit.types import ActionSpec
from gwkit.wreath import GraphWreathProduct, build_action, multigraph_iso


@pytest.fixture
def d4_natural(c4):
    return build_action(ActionSpec(family="natural"), dihedral_group(4), c4)


class TestBuildAction:
    """Test build_action() for each family"""

    def test_rotation(self, c5_rotation):
        """Test Z/5 rotating C_5"""
        assert c5_rotation.act(2, 4) == 1
        assert c5_rotation.permutation(1) == (1, 2, 3, 4, 0)

    def test_shift(self, line_shift):
        """Test Z shifting the line"""
        assert line_shift.act(3, 2) == 5
        assert line_shift.transporter(2, 5) == 3
        assert line_shift.is_regular

    def test_left_mult(self):
        """Test F_2 acting on its Cayley tree"""
        tree = CayleyTreeGraph(2)
        free = FreeGroup(2)
        action = build_action(ActionSpec(family="left_mult"), free, tree)
        a = free.parse("a")

        assert action.act(a, 0) == tree.vertex((1,))
        assert action.act(free.parse("b^-1"), tree.vertex((2, 1))) == tree.vertex((1,))
        assert action.transporter(0, tree.vertex((1, 2))) == free.parse("ab")

    def test_generator_images_not_automorphism(self, c4):
        """Test images must preserve adjacency"""
        with pytest.raises(ValidationError, match="does not preserve adjacency"):
            build_action(ActionSpec(generator_images=[[1, 0, 2, 3]]), CyclicGroup(2), c4)

    def test_generator_images_break_relation(self, c4):
        """Test images must respect the group relations"""
        with pytest.raises(ValidationError, match="violate a relation"):
            build_action(ActionSpec(generator_images=[[1, 2, 3, 0]]), CyclicGroup(2), c4)

    def test_wrong_image_count(self, c4):
        """Test one image per declared generator"""
        with pytest.raises(ValidationError, match="2 generator images for 1 declared generators"):
            build_action(ActionSpec(generator_images=[[0, 1, 2, 3], [0, 1, 2, 3]]), CyclicGroup(2), c4)

    def test_family_mismatch(self, c5):
        """Test families check their group and graph"""
        with pytest.raises(ValidationError, match="shift action needs the integers acting on the line"):
            build_action(ActionSpec(family="shift"), IntegerGroup(), c5)

    def test_bad_representatives(self, c5):
        """Test representatives must pick one vertex per orbit"""
        with pytest.raises(ValidationError, match="do not pick one vertex per orbit"):
            build_action(ActionSpec(family="rotation", representatives=[0, 2]), CyclicGroup(5), c5)

    def test_unknown_vertex(self, c5_rotation):
        """Test acting on a missing vertex"""
        with pytest.raises(DomainError, match="unknown vertex"):
            c5_rotation.act(1, 9)


class TestOrbitsAndIsotropy:
    """Test orbits, stabilizers and mixing sets"""

    def test_rotation_orbits(self, c5_rotation):
        """Test rotation is transitive"""
        orbits = c5_rotation.orbits()

        assert orbits.count == 1
        assert orbits.blocks == ((0, 1, 2, 3, 4),)

    def test_half_turn_orbits(self):
        """Test the half-turn has two orbits"""
        assert c4_half_turn().orbits().blocks == ((0, 2), (1, 3))

    def test_dihedral_stabilizer(self, d4_natural):
        """Test the stabilizer of a vertex is {e, reflection}"""
        iso = d4_natural.isotropy([0])
        group = d4_natural.group

        assert len(iso.pointwise) == 2
        assert iso.finite.is_true
        assert [group.render(x) for x in iso.pointwise] == ["[0,1,2,3]", "[0,3,2,1]"]
        assert d4_natural.max_stabilizer_order() == 2

    def test_setwise_stabilizer(self, d4_natural):
        """Test the setwise stabilizer of an edge"""
        iso = d4_natural.isotropy([0, 1])

        assert len(iso.setwise) == 2
        assert len(iso.pointwise) == 1

    def test_empty_isotropy(self, d4_natural):
        """Test isotropy needs a vertex"""
        with pytest.raises(ValidationError, match="nonempty vertex set"):
            d4_natural.isotropy([])

    def test_mixing_set_finite(self, c5_rotation):
        """Test g with S and gS intersecting"""
        assert c5_rotation.mixing_set([0, 1]) == [0, 1, 4]

    def test_mixing_set_regular(self, line_shift):
        """Test mixing sets of the shift are differences"""
        assert line_shift.mixing_set([0, 1]) == [0, -1, 1]

    def test_line_isotropy(self, line_shift):
        """Test the shift is free"""
        iso = line_shift.isotropy([0, 1])

        assert iso.pointwise == (0,)
        assert iso.setwise == (0,)

    def test_kernel_witness(self, c5):
        """Test Z rotating C_5 has a kernel"""
        action = build_action(ActionSpec(family="rotation"), IntegerGroup(), c5)
        k = action.kernel_witness()

        assert k != 0 and k % 5 == 0
        assert all(action.act(k, v) == v for v in c5.vertices())

    def test_infinite_isotropy_mixing(self):
        """Test trivial actions of infinite groups have no finite mixing set"""
        action = build_action(ActionSpec(family="trivial"), IntegerGroup(), LineGraph())

        with pytest.raises(UnsupportedOperationError, match="infinite isotropy"):
            action.mixing_set([0])

    def test_trivial_on_line_orbits(self):
        """Test the trivial action on the line has no orbit data"""
        action = build_action(ActionSpec(family="trivial"), CyclicGroup(2), LineGraph())

        with pytest.raises(InconclusiveError, match="infinitely many orbits"):
            action.orbits()


class TestHypothesisReport:
    """Test hypothesis reports"""

    def test_rotation(self, c5_rotation):
        """Test Z/5 on C_5 satisfies every hypothesis"""
        report = c5_rotation.hypothesis_report()

        assert report.free.is_true
        assert report.finite_isotropy.is_true
        assert report.orbit_count == 1
        assert report.fixes_star_implies_trivial.is_true
        assert report.connected.is_true
        assert report.locally_finite.is_true

    def test_dihedral(self, d4_natural):
        """Test D_4 is not free but stars are rigid"""
        report = d4_natural.hypothesis_report()

        assert report.free.is_false
        assert report.free.witness[1] == 0
        assert report.finite_isotropy.is_true
        assert report.fixes_star_implies_trivial.is_true

    def test_integers_rotating(self, c5):
        """Test a kernel refutes finite isotropy"""
        action = build_action(ActionSpec(family="rotation"), IntegerGroup(), c5)
        report = action.hypothesis_report()

        assert report.finite_isotropy.is_false
        assert report.free.is_false

    def test_trivial_integers_on_line(self):
        """Test the trivial action of Z on the line"""
        action = build_action(ActionSpec(family="trivial"), IntegerGroup(), LineGraph())
        report = action.hypothesis_report()

        assert report.free.is_false
        assert report.free.witness == "1"
        assert report.orbit_count is None


class TestQuotient:
    """Test quotient multigraphs"""

    def test_rotation_quotient(self):
        """Test Z/4 on C_4 leaves one vertex with a loop"""
        q = c4_rotation().quotient_graph()

        assert q.vertices == (0,)
        assert q.edges == ((0, 0, 1),)

    def test_half_turn_quotient(self):
        """Test the half-turn leaves a double edge"""
        q = c4_half_turn().quotient_graph()

        assert q.render() == "vertices=[0, 1] edges=[0-1x2]"

    def test_trivial_quotient(self, c5):
        """Test the trivial action returns the graph"""
        q = build_action(ActionSpec(), CyclicGroup(1), c5).quotient_graph()

        assert q.vertices == (0, 1, 2, 3, 4)
        assert q.edge_count == 5

    def test_line_quotient(self, line_shift):
        """Test the line modulo Z is a loop"""
        assert line_shift.quotient_graph() == Multigraph((0,), ((0, 0, 1),))

    def test_tree_quotient(self):
        """Test the Cayley tree modulo F_2 is a rose with two petals"""
        action = build_action(ActionSpec(family="left_mult"), FreeGroup(2), CayleyTreeGraph(2))

        assert action.quotient_graph().loops(0) == 2

    def test_uncertified_quotient(self):
        """Test lazy non-regular actions have no quotient"""
        action = build_action(ActionSpec(family="trivial"), CyclicGroup(2), LineGraph())

        with pytest.raises(InconclusiveError, match="cannot certify orbit data"):
            action.quotient_graph()


class TestMultigraphIso:
    """Test multigraph_iso()"""

    def test_vertex_counts_differ(self):
        """Test the two C_4 quotients"""
        decision = multigraph_iso(c4_rotation().quotient_graph(), c4_half_turn().quotient_graph())

        assert decision.is_false
        assert decision.note == "vertex counts 1 vs 2"

    def test_identical(self):
        """Test identical multigraphs"""
        q = c4_half_turn().quotient_graph()

        assert multigraph_iso(q, q).note == "identical"

    def test_relabelled(self):
        """Test an isomorphism that swaps vertices"""
        q1 = Multigraph.from_counts([0, 1], {(0, 0): 1, (0, 1): 1})
        q2 = Multigraph.from_counts([0, 1], {(1, 1): 1, (0, 1): 1})
        decision = multigraph_iso(q1, q2)

        assert decision.is_true
        assert decision.witness == {0: 1, 1: 0}

    def test_loop_counts_differ(self):
        """Test loop counts are compared"""
        q1 = Multigraph.from_counts([0, 1], {(0, 0): 2})
        q2 = Multigraph.from_counts([0, 1], {(0, 1): 2})

        assert multigraph_iso(q1, q2).note == "loop counts [0, 2] vs [0, 0]"

    def test_multiplicities_differ(self):
        """Test same counts but different multiplicities"""
        q1 = Multigraph.from_counts([0, 1, 2], {(0, 1): 2, (1, 2): 1})
        q2 = Multigraph.from_counts([0, 1, 2], {(0, 1): 1, (1, 2): 1, (0, 2): 1})

        assert multigraph_iso(q1, q2).is_false

    def test_budget(self):
        """Test the vertex budget"""
        big = Multigraph.from_counts(range(13), {})

        with pytest.raises(BudgetError, match="limited to 12 vertices"):
            multigraph_iso(big, big)


class TestGraphWreathProduct:
    """Test the wreath product multiplication"""

    def test_parse_and_render(self, c5_wreath):
        """Test the "h | g" syntax"""
        z = c5_wreath.parse("0:1 2:3 | 1")

        assert c5_wreath.render(z) == "0:1 2:3 | 1"
        assert c5_wreath.render(c5_wreath.parse("0:1")) == "0:1 | 0"

    def test_multiply_shifts(self, c5_wreath):
        """Test (h, g)(h', g') = (h sigma_g(h'), g g')"""
        z = c5_wreath.parse("0:1 | 1")

        assert c5_wreath.render(z * z) == "0:1 1:1 | 2"

    def test_inverse(self, c5_wreath):
        """Test z z^-1 = e"""
        z = c5_wreath.parse("0:1 2:-3 | 3")

        assert c5_wreath.multiply(z, c5_wreath.invert(z)) == c5_wreath.identity()

    def test_mixed_contexts(self, c5_wreath, c5_rotation):
        """Test elements of different wreath products do not mix"""
        other = GraphWreathProduct(c5_rotation, IntegerGroup())

        with pytest.raises(DomainError, match="different contexts"):
            c5_wreath.multiply(c5_wreath.identity(), other.identity())

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32))
    def test_group_laws(self, seed):
        """Test associativity and inverses on random elements"""
        rng = random.Random(seed)
        action = build_action(ActionSpec(family="natural"), dihedral_group(5), build_graph({"type": "cycle", "n": 5}))
        wp = GraphWreathProduct(action, CyclicGroup(3))
        a, b, c = (wp.random_element(rng, 4) for _ in range(3))

        assert (a * b) * c == a * (b * c)
        assert wp.multiply(a, wp.invert(a)) == wp.identity()

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32))
    def test_shift_group_laws(self, seed):
        """Test the wreath product over the line"""
        rng = random.Random(seed)
        action = build_action(ActionSpec(family="shift"), IntegerGroup(), LineGraph())
        wp = GraphWreathProduct(action, IntegerGroup())
        vertices = list(range(-3, 4))
        a, b, c = (wp.random_element(rng, 4, vertices) for _ in range(3))

        assert (a * b) * c == a * (b * c)
        assert wp.multiply(wp.invert(a), a) == wp.identity()
