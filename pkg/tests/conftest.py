"""
Pytest configuration and fixtures for gwkit tests
"""

import json

import pytest

from gwkit import (
    ActionSpec,
    CyclicGroup,
    FiniteGraph,
    GraphProduct,
    GraphWreathProduct,
    Gwkit,
    IntegerGroup,
    LineGraph,
    build_action,
    build_graph,
    make_lengths,
)
from gwkit.utils.validation import BUDGET_ENV


@pytest.fixture(autouse=True)
def no_budget_cap(monkeypatch):
    """Keep a developer's GWKIT_BUDGET out of the tests"""
    monkeypatch.delenv(BUDGET_ENV, raising=False)


@pytest.fixture
def c5_config():
    """Z/5 rotating C_5 with vertex group Z"""
    return {
        "graph": {"type": "cycle", "n": 5},
        "vertex_group": {"type": "integers"},
        "acting_group": {"type": "cyclic", "n": 5},
        "action": {"family": "rotation"},
        "samples": 20,
        "radius": 2,
        "max_syllables": 4,
        "seed": 7,
    }


@pytest.fixture
def line_config():
    """Z shifting the line with vertex group Z"""
    return {
        "graph": {"type": "line"},
        "vertex_group": {"type": "integers"},
        "acting_group": {"type": "integers"},
        "action": {"family": "shift"},
        "samples": 20,
        "radius": 2,
        "max_syllables": 4,
        "seed": 7,
    }


@pytest.fixture
def c5_file(tmp_path, c5_config):
    path = tmp_path / "c5.json"
    path.write_text(json.dumps(c5_config))
    return path


@pytest.fixture
def kit(c5_config):
    return Gwkit(c5_config)


@pytest.fixture
def c5():
    return build_graph({"type": "cycle", "n": 5})


@pytest.fixture
def c4():
    return build_graph({"type": "cycle", "n": 4})


@pytest.fixture
def star_graph():
    """Centre 0 joined to the leaves 1 and 2"""
    return FiniteGraph(range(3), [(0, 1), (0, 2)])


@pytest.fixture
def k2_integers():
    """Z x Z as the graph product over K_2"""
    return GraphProduct(build_graph({"type": "complete", "n": 2}), IntegerGroup())


@pytest.fixture
def path_z2():
    """Z/2 * (Z/2 x Z/2) over the path 0 - 1 - 2"""
    return GraphProduct(build_graph({"type": "path", "n": 3}), CyclicGroup(2))


@pytest.fixture
def c5_rotation(c5):
    return build_action(ActionSpec(family="rotation"), CyclicGroup(5), c5)


@pytest.fixture
def c5_wreath(c5_rotation):
    return GraphWreathProduct(c5_rotation, IntegerGroup())


@pytest.fixture
def c5_lengths(c5_rotation):
    return make_lengths(c5_rotation, IntegerGroup())


@pytest.fixture
def line_shift():
    return build_action(ActionSpec(family="shift"), IntegerGroup(), LineGraph())


@pytest.fixture
def line_wreath(line_shift):
    return GraphWreathProduct(line_shift, IntegerGroup())


@pytest.fixture
def line_lengths(line_shift):
    return make_lengths(line_shift, IntegerGroup())
