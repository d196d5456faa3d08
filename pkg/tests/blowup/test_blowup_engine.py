"""
Unit tests `blowdown.blowup.engine`.
"""

from __future__ import annotations
import os
import sys

import pytest

from blowdown.blowup import engine
from blowdown.blowup.configuration import (
    Configuration,
    Curve,
    PointSpec,
    StalePointError,
    UnknownCurveError,
    define_configuration,
)
from blowdown.blowup.engine import BlowupStep
from blowdown.blowup.homology import HomologyClass
from blowdown.scenario import expected

# sys hack to import from parent
sys.path.insert(1, os.path.join(sys.path[0], ".."))
import _paper


@pytest.fixture(scope="module")
def two_lines() -> Configuration:
    return define_configuration(
        [("L", 1), ("M", 1), ("q", 2)],
        [
            PointSpec("A", ("L", "M")),
            PointSpec.from_mapping("T", ["L", "q"], {("L", "q"): 2}),
        ],
    )


def test_step():
    assert str(BlowupStep.at("P1")) == "blow up P1"
    assert str(BlowupStep.generic("L1")) == "blow up a generic point of L1"
    with pytest.raises(ValueError, match="kind must be"):
        BlowupStep(kind="somewhere", target="P1")


########################################################################################
####################################### Blow-ups #######################################
########################################################################################


def test_blow_up_transverse(two_lines: Configuration):
    config = engine.blow_up(two_lines, BlowupStep.at("A"))
    assert config.num_blowups == 1
    assert config.curve("L").homology == HomologyClass.parse("h - e1")
    assert config.curve("M").homology == HomologyClass.parse("h - e1")
    assert config.curve("e1").self_intersection == -1
    assert config.product("L", "M") == 0
    names = {point.name for point in config.points}
    assert names == {"T", "L@e1", "M@e1"}
    assert config.consumed == ("A",)
    # input isn't modified
    assert two_lines.num_blowups == 0
    assert two_lines.point("A").name == "A"


def test_blow_up_tangent(two_lines: Configuration):
    config = engine.blow_up(two_lines, BlowupStep.at("T"))
    residual = config.point("T'")
    assert residual.branches == ("L", "e1", "q")
    assert residual.multiplicity("L", "q") == 1
    assert config.product("L", "q") == 1
    config = engine.blow_up(config, BlowupStep.at("T'"))
    assert config.product("L", "q") == 0
    assert config.curve("e1").homology == HomologyClass.parse("e1 - e2")
    assert {"L@e2", "q@e2", "e1@e2"} <= {point.name for point in config.points}
    assert not engine.conservation_audit(config)


def test_blow_up_several_tangent_classes():
    conics = [(f"q{number}", 2) for number in range(1, 5)]
    point = PointSpec.from_mapping(
        "X", ["q1", "q2", "q3", "q4"], {("q1", "q2"): 2, ("q3", "q4"): 2}
    )
    config = engine.blow_up(define_configuration(conics, [point]), BlowupStep.at("X"))
    assert config.point("X'1").branches == ("e1", "q1", "q2")
    assert config.point("X'2").branches == ("e1", "q3", "q4")
    assert config.product("q1", "q3") == 3
    assert not engine.conservation_audit(config)


def test_blow_up_generic(two_lines: Configuration):
    config = engine.blow_up(two_lines, BlowupStep.generic("q"))
    assert config.curve("q").homology == HomologyClass.parse("2h - e1")
    assert config.point("q@e1").branches == ("e1", "q")
    assert config.points[:2] == two_lines.points
    assert not config.consumed


def test_blow_up_errors(two_lines: Configuration):
    with pytest.raises(StalePointError):
        engine.blow_up(two_lines, BlowupStep.at("B"))
    with pytest.raises(UnknownCurveError):
        engine.blow_up(two_lines, BlowupStep.generic("N"))


def test_run_script(two_lines: Configuration):
    seen = []
    steps = [BlowupStep.at("A"), BlowupStep.at("T"), BlowupStep.generic("e1")]
    config = engine.run_script(
        two_lines, steps, on_step=lambda index, step, _: seen.append((index, step))
    )
    assert seen == list(enumerate(steps, start=1))
    assert config.num_blowups == 3
    assert config.curve("e1").homology == HomologyClass.parse("e1 - e3")


@pytest.mark.parametrize(
    "steps, step_index, cause, match",
    (
        (
            [BlowupStep.at("A"), BlowupStep.at("A")],
            2,
            StalePointError,
            "already blown up",
        ),
        ([BlowupStep.generic("N")], 1, UnknownCurveError, "no curve named 'N'"),
        (
            [BlowupStep.at("T"), BlowupStep.at("A"), BlowupStep.at("T''")],
            3,
            StalePointError,
            "no live point",
        ),
    ),
)
def test_run_script_error(two_lines: Configuration, steps, step_index, cause, match):
    with pytest.raises(engine.ScriptError, match=match) as exception_info:
        engine.run_script(two_lines, steps)
    assert exception_info.value.step_index == step_index
    assert isinstance(exception_info.value.cause, cause)
    assert exception_info.value.step == steps[step_index - 1]


########################################################################################
################################## Graphs and audits ###################################
########################################################################################


@pytest.mark.parametrize("name", _paper.BUILTINS)
def test_audits_every_state(name: str):
    audited = []

    def audit(index: int, step: BlowupStep, config: Configuration):
        assert all(value == -2 for _, value in engine.adjunction_audit(config))
        assert not engine.conservation_audit(config), step
        engine.incidence_graph(config)
        audited.append(index)

    engine.run_script(
        _paper.initial_configuration(name), _paper.scenario(name).script, audit
    )
    assert audited == list(range(1, expected.NUM_BLOWUPS[name] + 1))


@pytest.mark.parametrize("name", _paper.BUILTINS)
@pytest.mark.parametrize("curve", expected.BASE_CURVES)
def test_base_configuration(name: str, curve: str):
    config = _paper.configuration(name, expected.BASE_STEPS)
    homology, self_intersection = expected.BASE_CURVES[curve]
    assert config.curve(curve).homology == HomologyClass.parse(homology)
    assert config.curve(curve).self_intersection == self_intersection


def test_base_incidences():
    config = _paper.configuration(_paper.B4, expected.BASE_STEPS)
    graph = engine.incidence_graph(config).subgraph(expected.BASE_CURVES)
    edges = {tuple(sorted(edge)) for edge in graph.edges}
    assert edges == {("q1", "q2"), ("L1", "L2"), ("L1", "L3"), ("L1", "L4")}
    assert all(weight == 1 for _, _, weight in graph.edges.data("weight"))


@pytest.mark.parametrize(
    "name, classes",
    ((_paper.B4, expected.P_CLASSES), (_paper.C4, expected.Q_CLASSES)),
)
def test_plumbing_classes(name: str, classes: dict[str, str]):
    config = _paper.configuration(name)
    assert config.num_blowups == expected.NUM_BLOWUPS[name]
    vertices = dict(_paper.scenario(name).plumbing.vertices)
    assert vertices.keys() == classes.keys()
    for label, curve in vertices.items():
        assert config.curve(curve).homology == HomologyClass.parse(classes[label])


def test_incidence_graph_inconsistent():
    config = Configuration(
        num_blowups=1,
        curves=(
            Curve(name="L", homology=HomologyClass.parse("h + e1"), degree=1),
            Curve(name="e1", homology=HomologyClass.exceptional(1)),
        ),
        points=(),
    )
    with pytest.raises(engine.EmbeddingInconsistencyError, match="L . e1 = -1"):
        engine.incidence_graph(config)


def test_conservation_violation(two_lines: Configuration):
    config = Configuration(
        num_blowups=0, curves=two_lines.curves, points=two_lines.points
    )
    violations = engine.conservation_audit(config)
    assert violations == [engine.ConservationViolation(("M", "q"), 2, 0)]
