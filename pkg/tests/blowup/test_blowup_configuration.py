"""
Unit tests `blowdown.blowup.configuration`.
"""

from __future__ import annotations
import os
import sys

import pytest

from blowdown.blowup import configuration as conf
from blowdown.blowup.configuration import Curve, PointSpec, define_configuration
from blowdown.blowup.homology import HomologyClass

# sys hack to import from parent
sys.path.insert(1, os.path.join(sys.path[0], ".."))
import _paper


########################################################################################
######################################## Curves ########################################
########################################################################################


def test_curve():
    line = Curve(name="L1", homology=HomologyClass.line(), degree=1)
    assert not line.is_exceptional
    assert line.exceptional_index is None
    assert line.self_intersection == 1
    exceptional = Curve(name="e12", homology=HomologyClass.exceptional(12))
    assert exceptional.is_exceptional
    assert exceptional.exceptional_index == 12


@pytest.mark.parametrize(
    "name, degree, match",
    (
        ("L1", None, "must be named e<k>"),
        ("e3", 1, "reserved for exceptional curves"),
        ("C", 3, "degree must be 1 or 2"),
    ),
)
def test_curve_bad(name, degree, match):
    with pytest.raises(ValueError, match=match):
        Curve(name=name, homology=HomologyClass.line(), degree=degree)


########################################################################################
######################################## Points ########################################
########################################################################################


def test_point_spec_normalizes():
    point = PointSpec.from_mapping(
        "P", ["q2", "L1", "q1"], {("q2", "q1"): 2, ("L1", "q1"): 1}
    )
    assert point.branches == ("L1", "q1", "q2")
    assert point.multiplicities == ((("q1", "q2"), 2),)
    assert point.multiplicity("q2", "q1") == 2
    assert point.multiplicity("L1", "q2") == 1
    assert point.multiplicity("L1", "L9") == 0
    assert point.pairs() == [
        (("L1", "q1"), 1),
        (("L1", "q2"), 1),
        (("q1", "q2"), 2),
    ]


@pytest.mark.parametrize(
    "branches, multiplicities, match",
    (
        ((), (), "must be non-empty"),
        (("a", "a"), (), "duplicate names"),
        (("a", "b"), ((("a", "c"), 2),), "not one of its branches"),
        (("a", "b"), ((("a", "b"), 2), (("b", "a"), 3)), "twice"),
        (("a", "b"), ((("a", "b"), 0),), "must be >= 1"),
        (("a", "b"), ((("a", "a"), 2),), "two different curves"),
    ),
)
def test_point_spec_bad(branches, multiplicities, match):
    with pytest.raises(ValueError, match=match):
        PointSpec(name="P", branches=branches, multiplicities=multiplicities)


def test_direction_classes():
    point = PointSpec.from_mapping(
        "X", ["q1", "q2", "q3", "q4", "L"], {("q1", "q2"): 2, ("q3", "q4"): 3}
    )
    assert point.direction_classes() == [("L",), ("q1", "q2"), ("q3", "q4")]


def test_direction_ambiguity():
    point = PointSpec.from_mapping(
        "X", ["a", "b", "c"], {("a", "b"): 2, ("b", "c"): 2}
    )
    with pytest.raises(conf.DirectionAmbiguityError, match="consistently"):
        point.direction_classes()
    with pytest.raises(conf.DirectionAmbiguityError):
        define_configuration([("a", 2), ("b", 2), ("c", 2)], [point])


########################################################################################
#################################### Configurations ####################################
########################################################################################


def test_define_configuration_residuals():
    config = define_configuration(
        [("q", 2), ("L", 1), ("M", 1)],
        [PointSpec.from_mapping("T", ["q", "L"], {("L", "q"): 2})],
    )
    assert config.num_blowups == 0
    assert config.residual("q", "L") == 0
    assert config.residual("L", "q") == 0
    assert config.residual("q", "M") == 2
    assert config.residual("L", "M") == 1
    assert config.product("q", "M") == 2
    assert config.live_multiplicity("q", "L") == 2


def test_define_configuration_paper():
    config = _paper.initial_configuration(_paper.B4)
    assert config.curve_names == ("q1", "q2", "L1", "L2", "L3", "L4")
    # the anonymous third intersection of the conics isn't live
    assert "R" not in [point.name for point in config.points]
    assert config.residual("q1", "q2") == 1
    assert config.live_multiplicity("q1", "q2") == 3
    assert config.residual("L1", "L2") == 1
    assert config.residual("L2", "L3") == 0


def test_infeasible():
    points = [PointSpec("A", ("L", "M")), PointSpec("B", ("L", "M"))]
    with pytest.raises(conf.InfeasibleConfigurationError, match="add up to 2"):
        define_configuration([("L", 1), ("M", 1)], points)
    with pytest.raises(conf.InfeasibleConfigurationError, match="< 0"):
        conf.Configuration(
            num_blowups=0, curves=(), points=(), residuals=((("L", "M"), -1),)
        )


def test_unknown_curve():
    with pytest.raises(conf.UnknownCurveError, match="isn't a declared curve"):
        define_configuration([("L", 1)], [PointSpec("A", ("L", "M"))])
    config = define_configuration([("L", 1)], [])
    with pytest.raises(conf.UnknownCurveError, match="no curve named 'M'"):
        config.curve("M")


@pytest.mark.parametrize(
    "curves, points, match",
    (
        ([("L'", 1)], [], "reserved"),
        ([("L", 1)], [PointSpec("L@e1", ("L",))], "reserved"),
        ([("L", 1), ("L", 2)], [], "duplicate names"),
    ),
)
def test_bad_names(curves, points, match):
    with pytest.raises(ValueError, match=match):
        define_configuration(curves, points)


def test_stale_point():
    config = define_configuration([("L", 1), ("M", 1)], [PointSpec("A", ("L", "M"))])
    with pytest.raises(conf.StalePointError, match="no live point named 'B'"):
        config.point("B")
    consumed = conf.Configuration(
        num_blowups=config.num_blowups,
        curves=config.curves,
        points=(),
        consumed=("A",),
    )
    with pytest.raises(conf.StalePointError, match="already blown up"):
        consumed.point("A")
