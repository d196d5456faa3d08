"""
Unit tests `blowdown.plumbing.graph`.
"""

from __future__ import annotations
import os
import sys

import pytest

from blowdown.blowup.configuration import PointSpec, define_configuration
from blowdown.blowup.engine import BlowupStep, blow_up
from blowdown.blowup.homology import HomologyClass
from blowdown.plumbing import graph
from blowdown.scenario import expected

# sys hack to import from parent
sys.path.insert(1, os.path.join(sys.path[0], ".."))
import _paper


@pytest.fixture(scope="module")
def plumbing() -> graph.PlumbingGraph:
    entry = _paper.scenario(_paper.B4).plumbing
    return graph.extract_plumbing(
        _paper.configuration(_paper.B4), entry.curves, labels=entry.labels
    )


def test_extract_plumbing(plumbing: graph.PlumbingGraph):
    assert plumbing.names == tuple(expected.P_CLASSES)
    assert plumbing.weights == (-4, -3, -4, -2, -2, -2, -3, -4)
    assert set(plumbing.edges) == {
        ("u1", "u2"),
        ("u2", "u3"),
        ("u2", "u4"),
        ("u2", "u5"),
        ("u5", "u6"),
        ("u6", "u7"),
        ("u7", "u8"),
    }
    assert plumbing.vertex("u7").curve == "q1"
    assert plumbing.vertex("u4").homology == HomologyClass.parse("e2 - e12")


def test_neighbors(plumbing: graph.PlumbingGraph):
    assert plumbing.neighbors("u2") == ["u1", "u3", "u4", "u5"]
    assert plumbing.valence("u2") == 4
    assert plumbing.valence("u8") == 1
    assert plumbing.index("u5") == 4
    assert len(plumbing) == 8
    with pytest.raises(KeyError, match="no vertex 'u9'"):
        plumbing.vertex("u9")


def test_intersection_matrix(plumbing: graph.PlumbingGraph):
    matrix = graph.intersection_matrix(plumbing)
    assert [[int(entry) for entry in row] for row in matrix] == expected.M


def test_to_networkx(plumbing: graph.PlumbingGraph):
    nx_graph = plumbing.to_networkx()
    assert nx_graph.nodes["u2"]["weight"] == -3
    assert nx_graph.nodes["u2"]["curve"] == "L1"
    assert nx_graph.number_of_edges() == 7


def test_default_labels():
    config = define_configuration([("L", 1), ("M", 1)], [])
    plumbing = graph.extract_plumbing(config, ["L", "M"])
    assert plumbing.names == ("L", "M")
    assert plumbing.edges == (("L", "M"),)
    assert plumbing.weights == (1, 1)


def test_not_simple():
    config = define_configuration([("L", 1), ("q", 2)], [])
    with pytest.raises(graph.NotASimplePlumbingError, match="= 2"):
        graph.extract_plumbing(config, ["L", "q"])


def test_not_a_tree():
    config = define_configuration([("L", 1), ("M", 1), ("N", 1)], [])
    with pytest.raises(graph.NotATreeError, match="cycle"):
        graph.extract_plumbing(config, ["L", "M", "N"])
    config = blow_up(
        define_configuration([("L", 1), ("M", 1)], [PointSpec("A", ("L", "M"))]),
        BlowupStep.at("A"),
    )
    with pytest.raises(graph.NotATreeError, match="isn't connected"):
        graph.extract_plumbing(config, ["L", "M"])


def test_bad_inputs():
    config = define_configuration([("L", 1), ("M", 1)], [])
    with pytest.raises(ValueError, match="labels"):
        graph.extract_plumbing(config, ["L", "M"], labels=["u1"])
    with pytest.raises(ValueError, match="duplicate"):
        graph.extract_plumbing(config, ["L", "L"])
    with pytest.raises(ValueError, match="non-empty"):
        graph.extract_plumbing(config, [])
    with pytest.raises(TypeError, match="ordered"):
        graph.extract_plumbing(config, {"L", "M"})
    vertex = graph.PlumbingVertex("u1", "L", HomologyClass.line())
    with pytest.raises(ValueError, match="outside the plumbing"):
        graph.PlumbingGraph(vertices=(vertex,), edges=(("u1", "u2"),))
