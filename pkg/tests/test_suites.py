"""
Tests for the verification suites and their runner
"""

import random

import pytest

from gwkit.errors import InconclusiveError
from gwkit.suites import SUITES, SuiteContext, instance_rng, instance_seed, run_suites
from gwkit.suites.base import Suite, violation
from gwkit.graph_product import GraphProduct
from gwkit.graphs import FiniteGraph, atlas_graphs, build_graph
from gwkit.groups import CyclicGroup, IntegerGroup
from gwkit.suites.hypotheses import EXHAUSTIVE_VERTICES, HypothesesSuite, check_graph
from gwkit.suites.normal_form import SAMPLED_FIVE_VERTEX, NormalFormSuite, catalogue_groups
from gwkit.suites.syllable_bounds import check_presentations
from gwkit.types import RunConfig, SuiteName


@pytest.fixture
def c5_z2_config(c5_config):
    """Z/5 rotating C_5 with vertex group Z/2, small enough for full sweeps"""
    return {**c5_config, "vertex_group": {"type": "cyclic", "n": 2}}


@pytest.fixture
def context(c5_config):
    return SuiteContext(RunConfig.model_validate(c5_config))


class _Failing(Suite):
    name = SuiteName.NORMAL_FORM
    statement = "always fails"

    def check(self, rng):
        raise violation("boom", f"draw={rng.random():.6f}")


class _Unknown(Suite):
    name = SuiteName.QUOTIENT
    statement = "never decides"

    def check(self, rng):
        raise InconclusiveError("bounded search only")


class TestSeeding:
    """Test per-instance seeds"""

    def test_deterministic(self):
        """Test the same coordinates give the same seed"""
        assert instance_seed(1, "quotient", 3) == instance_seed(1, "quotient", 3)

    def test_coordinates_matter(self):
        """Test seed, suite and index all feed the seed"""
        base = instance_seed(1, "quotient", 3)

        assert instance_seed(2, "quotient", 3) != base
        assert instance_seed(1, "commutator", 3) != base
        assert instance_seed(1, "quotient", 4) != base
        assert 0 <= base < 2**64

    def test_rng(self):
        """Test instance_rng is seeded by instance_seed"""
        assert instance_rng(5, "x", 0).random() == random.Random(instance_seed(5, "x", 0)).random()


class TestSuiteRunner:
    """Test Suite.run tallies"""

    def test_failure_tally(self, context):
        """Test failures keep the first counterexample"""
        report = _Failing(context).run()

        assert report.failed == context.config.samples
        assert report.passed == 0
        assert report.counterexample.startswith("instance 0: boom [draw=")
        assert report.exit_code == 1

    def test_counterexample_is_reproducible(self, context):
        """Test the same seed reproduces the same counterexample"""
        assert _Failing(context).run().counterexample == _Failing(context).run().counterexample

    def test_inconclusive_tally(self, context):
        """Test inconclusive instances keep their notes"""
        report = _Unknown(context).run()

        assert report.inconclusive == report.total
        assert report.details["notes"] == ["bounded search only"]
        assert report.exit_code == 3

    def test_registry_order(self):
        """Test suites run in enum order"""
        assert list(SUITES) == list(SuiteName)


class TestSuitesOnRotation:
    """Run every suite on Z/5 rotating C_5"""

    @pytest.mark.parametrize(
        "name",
        [
            SuiteName.NORMAL_FORM,
            SuiteName.SYLLABLE_BOUNDS,
            SuiteName.LENGTH_FUNCTIONS,
            SuiteName.MMAP_INEQUALITIES,
            SuiteName.MIXING_SUPPORT,
            SuiteName.QUOTIENT,
            SuiteName.HYPOTHESES,
        ],
    )
    def test_suite_passes(self, c5_config, name):
        """Test the suite finds no violation"""
        (report,) = run_suites(RunConfig.model_validate(c5_config), [name])

        assert report.suite == name
        assert report.failed == 0, report.counterexample
        assert report.passed > 0

    @pytest.mark.parametrize("name", [SuiteName.COMMUTATOR, SuiteName.CROSSED_COMMUTATOR])
    def test_sweeps_pass(self, c5_z2_config, name):
        """Test the commutator sweeps with a finite vertex group"""
        (report,) = run_suites(RunConfig.model_validate(c5_z2_config), [name])

        assert report.failed == 0, report.counterexample
        assert report.passed == 5 * 5
        assert report.details["basis"] > 0

    def test_sweeps_need_finite_vertex_group(self, c5_config):
        """Test Z vertex groups leave the sweeps inconclusive"""
        (report,) = run_suites(RunConfig.model_validate(c5_config), [SuiteName.COMMUTATOR])

        assert report.inconclusive == 1
        assert report.exit_code == 3

    def test_syllable_bounds_presentations(self, c5_z2_config):
        """Test the shortest-presentation case runs with finite vertex groups"""
        (report,) = run_suites(RunConfig.model_validate(c5_z2_config), [SuiteName.SYLLABLE_BOUNDS])

        assert report.inconclusive == 0
        assert report.failed == 0, report.counterexample

    def test_reports_are_deterministic(self, c5_config):
        """Test two runs agree apart from wall time"""
        config = RunConfig.model_validate(c5_config)
        first = [r.model_dump(exclude={"wall_time"}) for r in run_suites(config, [SuiteName.MMAP_INEQUALITIES])]
        second = [r.model_dump(exclude={"wall_time"}) for r in run_suites(config, [SuiteName.MMAP_INEQUALITIES])]

        assert first == second


class TestSuitesOnLine:
    """Run the suites that make sense on Z shifting the line"""

    @pytest.mark.parametrize(
        "name",
        [
            SuiteName.NORMAL_FORM,
            SuiteName.SYLLABLE_BOUNDS,
            SuiteName.LENGTH_FUNCTIONS,
            SuiteName.MMAP_INEQUALITIES,
            SuiteName.MIXING_SUPPORT,
            SuiteName.QUOTIENT,
        ],
    )
    def test_suite_passes(self, line_config, name):
        """Test the suite finds no violation on the lazy line"""
        (report,) = run_suites(RunConfig.model_validate(line_config), [name])

        assert report.failed == 0, report.counterexample


class TestCheckGraph:
    """Test the exhaustive graph check used by the hypotheses suite"""

    def test_c5_passes(self, c5):
        """Test C_5 agrees with every oracle"""
        check_graph(c5)

    def test_isolated_vertices(self):
        """Test graphs with isolated vertices are still checked"""
        check_graph(FiniteGraph(range(3), [(0, 1)]))

    def test_atlas_sweep(self):
        """Test every graph on at most six vertices, one per isomorphism class"""
        for n in range(1, EXHAUSTIVE_VERTICES + 1):
            for graph in atlas_graphs(n):
                check_graph(graph)


class TestHypothesesSuite:
    """Test the hypotheses suite sweeps the atlas without sampling"""

    def test_counts_every_atlas_graph(self, c5_config):
        """Test 1 + 2 + 4 + 11 + 34 + 156 graphs are checked"""
        (report,) = run_suites(RunConfig.model_validate(c5_config), [SuiteName.HYPOTHESES])

        assert report.failed == 0, report.counterexample
        assert report.details["graphs"] == 208

    def test_case_count_ignores_samples(self, c5_config):
        """Test the sample count does not add random graphs"""
        small = RunConfig.model_validate({**c5_config, "samples": 1})
        large = RunConfig.model_validate({**c5_config, "samples": 50})

        assert len(HypothesesSuite(SuiteContext(small)).cases()) == len(HypothesesSuite(SuiteContext(large)).cases())


class TestNormalFormCatalogue:
    """Test the normal-form catalogue of graphs and vertex groups"""

    def test_catalogue(self, context):
        """Test the configured product leads every graph on three and four vertices and sampled five-vertex graphs"""
        catalogue = NormalFormSuite(context).catalogue()

        assert len(catalogue) == 1 + (8 + 64 + SAMPLED_FIVE_VERTEX) * 3
        assert catalogue[0] is context.gp
        assert sum(len(gp.graph) == 5 for gp in catalogue[1:]) == SAMPLED_FIVE_VERTEX * 3

    def test_catalogue_groups(self, context):
        """Test Z/2, Z/3 and Z each appear as vertex groups"""
        orders = {gp.group_at(0).order() for gp in NormalFormSuite(context).catalogue()[1:]}

        assert orders == {2, 3, None}
        assert isinstance(catalogue_groups()[2], IntegerGroup)

    def test_five_vertex_sample_is_seeded(self, c5_config):
        """Test the sampled five-vertex graphs depend on the seed only"""

        def five(config):
            suite = NormalFormSuite(SuiteContext(RunConfig.model_validate(config)))
            return [gp.graph.edges() for gp in suite.catalogue() if len(gp.graph) == 5]

        assert five(c5_config) == five(c5_config)
        assert five(c5_config) != five({**c5_config, "seed": 8})

    def test_run_covers_catalogue(self, c5_config):
        """Test one run visits every catalogue product even with few samples"""
        (report,) = run_suites(RunConfig.model_validate(c5_config), [SuiteName.NORMAL_FORM])

        assert report.total == report.details["products"] == 313
        assert report.failed == 0, report.counterexample


class TestPresentations:
    """Test syllable length against the shortest presentation at radius four"""

    def test_path_z2(self, path_z2):
        """Test the path product agrees in both directions"""
        # 1 + 3 + 4 + 4 + 4
        assert check_presentations(path_z2, 10_000) == 16

    def test_cycle_z3(self):
        """Test a product with Z/3 vertex groups on a cycle"""
        gp = GraphProduct(build_graph({"type": "cycle", "n": 4}), CyclicGroup(3))

        assert check_presentations(gp, 200_000, radius=3) == len(gp.syllable_ball(3, 200_000))

    def test_reported(self, c5_config):
        """Test the catalogue products run even with an infinite vertex group"""
        (report,) = run_suites(RunConfig.model_validate(c5_config), [SuiteName.SYLLABLE_BOUNDS])

        assert report.inconclusive == 0
        assert report.failed == 0, report.counterexample
        assert report.details["presented"] > 0
