"""
Blow up points of a configuration and track how classes and intersections change.

Blowing up a point replaces it with a new exceptional curve ``ek``. Every curve through
the point loses ``ek`` from its class. Branches which shared a tangent direction still
meet on ``ek``, at a new point named ``<point>'``. Every other branch crosses ``ek`` at
its own new point named ``<curve>@ek``.
"""

from __future__ import annotations
from dataclasses import dataclass, replace
import logging
from typing import Callable, Literal, Optional, Sequence

import networkx as nx

from blowdown.blowup.configuration import (
    Configuration,
    Curve,
    PointSpec,
    StalePointError,
    UnknownCurveError,
    _pair,
)
from blowdown.blowup.homology import HomologyClass, canonical_class


logger = logging.getLogger(__name__)


class EmbeddingInconsistencyError(ValueError):
    """
    Two distinct curves have a negative intersection number, so they can't both be
    embedded complex curves.
    """


class ScriptError(ValueError):
    """
    A step of a blow-up script failed. `step_index` counts from 1.
    """

    def __init__(self, step_index: int, step: BlowupStep, cause: Exception):
        self.step_index = step_index
        self.step = step
        self.cause = cause
        super().__init__(f"Step {step_index} ({step}) failed: {cause}")


@dataclass(frozen=True)
class BlowupStep:
    """
    One blow-up: at a live point, or at a generic point of a curve.
    """

    kind: Literal["at-point", "generic-on-curve"]
    target: str

    def __post_init__(self):
        if self.kind not in ("at-point", "generic-on-curve"):
            raise ValueError(
                f"kind must be 'at-point' or 'generic-on-curve'. Got {self.kind!r}."
            )

    @classmethod
    def at(cls, point: str) -> BlowupStep:
        return cls(kind="at-point", target=point)

    @classmethod
    def generic(cls, curve: str) -> BlowupStep:
        return cls(kind="generic-on-curve", target=curve)

    def __str__(self) -> str:
        if self.kind == "at-point":
            return f"blow up {self.target}"
        return f"blow up a generic point of {self.target}"


########################################################################################
####################################### Blow-ups #######################################
########################################################################################


def _residual_point_names(point_name: str, num_classes: int) -> list[str]:
    if num_classes == 1:
        return [f"{point_name}'"]
    return [f"{point_name}'{number}" for number in range(1, num_classes + 1)]


def _new_points(point: PointSpec, exceptional: str) -> list[PointSpec]:
    tangent_classes = [
        members for members in point.direction_classes() if len(members) >= 2
    ]
    separated = [
        members[0] for members in point.direction_classes() if len(members) == 1
    ]
    new_points = []
    names = _residual_point_names(point.name, len(tangent_classes))
    for name, members in zip(names, tangent_classes):
        multiplicities = {
            pair: point.multiplicity(*pair) - 1
            for pair in (
                _pair(a, b) for i, a in enumerate(members) for b in members[i + 1 :]
            )
        }
        new_points.append(
            PointSpec.from_mapping(name, members + (exceptional,), multiplicities)
        )
    for branch in separated:
        new_points.append(
            PointSpec(name=f"{branch}@{exceptional}", branches=(branch, exceptional))
        )
    return new_points


def blow_up(config: Configuration, step: BlowupStep) -> Configuration:
    """
    Performs one blow-up.

    Parameters
    ----------
    config : Configuration
        configuration before the blow-up
    step : BlowupStep
        where to blow up

    Returns
    -------
    Configuration
        a new configuration with exceptional curve ``e<k>``, where ``k =
        config.num_blowups + 1``. `config` isn't modified

    Raises
    ------
    StalePointError
        if the point isn't live
    UnknownCurveError
        if the curve doesn't exist
    """
    index = config.num_blowups + 1
    exceptional = f"e{index}"
    exceptional_class = HomologyClass.exceptional(index)
    if step.kind == "at-point":
        point = config.point(step.target)
        through = set(point.branches)
        created = _new_points(point, exceptional)
        consumed = config.consumed + (point.name,)
    else:
        config.curve(step.target)
        through = {step.target}
        created = [
            PointSpec(
                name=f"{step.target}@{exceptional}",
                branches=(step.target, exceptional),
            )
        ]
        consumed = config.consumed
    taken = {point.name for point in config.points} | set(config.consumed)
    for point in created:
        if point.name in taken:
            raise StalePointError(f"Blow-up would create {point.name!r} twice.")
    curves = tuple(
        replace(curve, homology=curve.homology - exceptional_class)
        if curve.name in through
        else curve
        for curve in config.curves
    ) + (Curve(name=exceptional, homology=exceptional_class),)
    if step.kind == "at-point":
        remaining = tuple(
            existing for existing in config.points if existing.name != step.target
        )
    else:
        remaining = config.points
    logger.debug(
        "%s: %s lose %s, new points %s",
        step,
        sorted(through),
        exceptional,
        [point.name for point in created],
    )
    return Configuration(
        num_blowups=index,
        curves=curves,
        points=remaining + tuple(created),
        residuals=config.residuals,
        consumed=consumed,
    )


def run_script(
    config: Configuration,
    steps: Sequence[BlowupStep],
    on_step: Optional[Callable[[int, BlowupStep, Configuration], None]] = None,
) -> Configuration:
    """
    Performs `steps` in order. Exceptional curves are numbered in script order.

    Parameters
    ----------
    config : Configuration
        starting configuration
    steps : Sequence[BlowupStep]
        blow-ups to perform
    on_step : Callable[[int, BlowupStep, Configuration], None] | None, optional
        called after each step with the step's index (counting from 1), the step, and
        the configuration after it. By default, nothing is called

    Returns
    -------
    Configuration
        configuration after the last step

    Raises
    ------
    ScriptError
        if a step fails. It has the index of the step and the original error
    """
    for step_index, step in enumerate(steps, start=1):
        try:
            config = blow_up(config, step)
        except (StalePointError, UnknownCurveError) as exception:
            raise ScriptError(step_index, step, exception) from exception
        if on_step is not None:
            on_step(step_index, step, config)
    logger.debug(
        "Ran %d blow-ups, now in CP2 # %d -CP2", len(steps), config.num_blowups
    )
    return config


########################################################################################
################################## Graphs and audits ###################################
########################################################################################


def incidence_graph(config: Configuration) -> nx.Graph:
    """
    Graph with a vertex per curve and an edge between curves which meet.

    Returns
    -------
    nx.Graph
        vertex attribute ``self_intersection``, edge attribute ``weight`` (the
        intersection number, always positive)

    Raises
    ------
    EmbeddingInconsistencyError
        if two distinct curves have negative intersection number
    """
    graph = nx.Graph()
    for curve in config.curves:
        graph.add_node(curve.name, self_intersection=curve.self_intersection)
    names = config.curve_names
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            weight = config.product(a, b)
            if weight < 0:
                raise EmbeddingInconsistencyError(
                    f"{a} . {b} = {weight} < 0, but distinct complex curves meet "
                    "non-negatively."
                )
            if weight > 0:
                graph.add_edge(a, b, weight=weight)
    return graph


def adjunction_audit(config: Configuration) -> list[tuple[str, int]]:
    """
    ``K . C + C . C`` for every curve ``C``, where ``K`` is the canonical class. Every
    value is -2 for spheres.
    """
    canonical = canonical_class(config.num_blowups)
    return [
        (curve.name, canonical.pairing(curve.homology) + curve.self_intersection)
        for curve in config.curves
    ]


@dataclass(frozen=True)
class ConservationViolation:
    curves: tuple[str, str]
    product: int
    accounted: int


def conservation_audit(config: Configuration) -> list[ConservationViolation]:
    """
    Pairs of distinct curves whose intersection number isn't their residual count plus
    their multiplicities at live points. Empty for every configuration that
    :func:`blowdown.blowup.configuration.define_configuration` and :func:`blow_up`
    build.
    """
    violations = []
    names = config.curve_names
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            product = config.product(a, b)
            accounted = config.residual(a, b) + config.live_multiplicity(a, b)
            if product != accounted:
                violations.append(
                    ConservationViolation(
                        curves=(a, b), product=product, accounted=accounted
                    )
                )
    return violations
