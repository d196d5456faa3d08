"""
Scenario files: YAML documents with the sections ``curves``, ``points``, ``script``,
``plumbing``, ``pi1_facts`` and ``surgery``. See ``docs/source/scenario_format.rst``
for the full schema.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from importlib import resources
import os
import re
from typing import Any, Optional, Sequence, Union

import yaml

from blowdown.blowup.configuration import PointSpec
from blowdown.blowup.engine import BlowupStep
from blowdown.field.curves import HomogeneousPoly, ProjectivePoint
from blowdown.field.numbers import parse_field_element, parse_field_elements
from blowdown.plumbing.triviality import GeometricFacts, IdentifyFact, KillFact


BUILTINS = ("example-B4", "example-C4")

SECTIONS = ("name", "curves", "points", "script", "plumbing", "pi1_facts", "surgery")

_EXCEPTIONAL_NAME = re.compile(r"^e([1-9][0-9]*)$")
_DERIVED_POINT = re.compile(r"['@]")


class ScenarioError(ValueError):
    """
    A scenario file can't be parsed or doesn't validate.

    Parameters
    ----------
    message : str
        what's wrong
    section : str | None, optional
        top-level section of the file, e.g., ``"points"``
    location : str | None, optional
        where in the section, e.g., ``"points[3].branches"``, or ``"line 12"``
    """

    def __init__(
        self,
        message: str,
        section: Optional[str] = None,
        location: Optional[str] = None,
    ):
        self.message = message
        self.section = section
        self.location = location
        where = location or section
        super().__init__(f"{where}: {message}" if where else message)


########################################################################################
######################################## Entries #######################################
########################################################################################


@dataclass(frozen=True)
class CurveEntry:
    name: str
    degree: int
    polynomial: Optional[HomogeneousPoly] = None


@dataclass(frozen=True)
class PointEntry:
    spec: PointSpec
    coordinates: Optional[ProjectivePoint] = None

    @property
    def name(self) -> str:
        return self.spec.name


@dataclass(frozen=True)
class PlumbingEntry:
    """
    Parameters
    ----------
    vertices : tuple[tuple[str, str], ...]
        ``(label, curve)`` in matrix order
    center : str | None
        label of the central sphere, if given
    legs : tuple[str, ...] | None
        leaf labels whose Seifert pairs are listed first, in this order, if given
    """

    vertices: tuple[tuple[str, str], ...]
    center: Optional[str] = None
    legs: Optional[tuple[str, ...]] = None

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.vertices)

    @property
    def curves(self) -> tuple[str, ...]:
        return tuple(curve for _, curve in self.vertices)


@dataclass(frozen=True)
class SurgeryEntry:
    expect: Optional[str] = None
    ambient: Optional[int] = None


@dataclass(frozen=True)
class Scenario:
    """
    A validated scenario file.
    """

    name: str
    curves: tuple[CurveEntry, ...]
    points: tuple[PointEntry, ...] = ()
    script: tuple[BlowupStep, ...] = ()
    plumbing: Optional[PlumbingEntry] = None
    facts: GeometricFacts = field(default_factory=GeometricFacts)
    surgery: SurgeryEntry = field(default_factory=SurgeryEntry)
    source: str = "<string>"
    # index in pi1_facts of each kill, then each identification
    fact_positions: tuple[int, ...] = ()

    def curve(self, name: str) -> CurveEntry:
        for curve in self.curves:
            if curve.name == name:
                return curve
        raise KeyError(name)


########################################################################################
####################################### Parsing ########################################
########################################################################################


def _expect_type(value: Any, kind: type | tuple[type, ...], section: str, where: str):
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        names = (
            " or ".join(k.__name__ for k in kind)
            if isinstance(kind, tuple)
            else kind.__name__
        )
        raise ScenarioError(
            f"Expected {names}, got {type(value).__name__} {value!r}.", section, where
        )
    return value


def _expect_keys(
    entry: dict,
    required: Sequence[str],
    optional: Sequence[str],
    section: str,
    where: str,
):
    _expect_type(entry, dict, section, where)
    missing = [key for key in required if key not in entry]
    if missing:
        raise ScenarioError(f"Missing required keys {missing}.", section, where)
    unknown = [key for key in entry if key not in (*required, *optional)]
    if unknown:
        raise ScenarioError(
            f"Unknown keys {unknown}. Allowed: {[*required, *optional]}.",
            section,
            where,
        )


def _parse_curves(raw: Any) -> tuple[CurveEntry, ...]:
    _expect_type(raw, list, "curves", "curves")
    curves = []
    for i, entry in enumerate(raw):
        where = f"curves[{i}]"
        _expect_keys(entry, ("name", "degree"), ("polynomial",), "curves", where)
        name = _expect_type(entry["name"], str, "curves", f"{where}.name")
        degree = _expect_type(entry["degree"], int, "curves", f"{where}.degree")
        if degree not in (1, 2):
            raise ScenarioError(
                f"Curve {name} must be a line or a conic. Got degree {degree}.",
                "curves",
                f"{where}.degree",
            )
        polynomial = None
        if "polynomial" in entry:
            terms = []
            raw_terms = _expect_type(
                entry["polynomial"], list, "curves", f"{where}.polynomial"
            )
            for j, term in enumerate(raw_terms):
                term_where = f"{where}.polynomial[{j}]"
                _expect_keys(
                    term, ("monomial", "coefficient"), (), "curves", term_where
                )
                monomial = _expect_type(
                    term["monomial"], list, "curves", f"{term_where}.monomial"
                )
                try:
                    coefficient = parse_field_element(term["coefficient"])
                except ValueError as exception:
                    raise ScenarioError(
                        str(exception), "curves", f"{term_where}.coefficient"
                    ) from exception
                terms.append((tuple(monomial), coefficient))
            try:
                polynomial = HomogeneousPoly(degree=degree, terms=tuple(terms))
            except (ValueError, TypeError) as exception:
                raise ScenarioError(
                    str(exception), "curves", f"{where}.polynomial"
                ) from exception
        curves.append(CurveEntry(name=name, degree=degree, polynomial=polynomial))
    return tuple(curves)


def _parse_points(raw: Any) -> tuple[PointEntry, ...]:
    _expect_type(raw, list, "points", "points")
    points = []
    for i, entry in enumerate(raw):
        where = f"points[{i}]"
        _expect_keys(
            entry,
            ("name", "branches"),
            ("multiplicities", "coordinates", "anonymous"),
            "points",
            where,
        )
        name = _expect_type(entry["name"], str, "points", f"{where}.name")
        branches = _expect_type(entry["branches"], list, "points", f"{where}.branches")
        for j, branch in enumerate(branches):
            _expect_type(branch, str, "points", f"{where}.branches[{j}]")
        multiplicities = {}
        raw_multiplicities = _expect_type(
            entry.get("multiplicities", []), list, "points", f"{where}.multiplicities"
        )
        for j, item in enumerate(raw_multiplicities):
            item_where = f"{where}.multiplicities[{j}]"
            _expect_keys(item, ("pair", "value"), (), "points", item_where)
            pair = _expect_type(item["pair"], list, "points", f"{item_where}.pair")
            if len(pair) != 2:
                raise ScenarioError(
                    f"A pair has 2 curves, got {pair}.", "points", f"{item_where}.pair"
                )
            for k, curve in enumerate(pair):
                _expect_type(curve, str, "points", f"{item_where}.pair[{k}]")
            value = _expect_type(item["value"], int, "points", f"{item_where}.value")
            multiplicities[tuple(pair)] = value
        anonymous = _expect_type(
            entry.get("anonymous", False), bool, "points", f"{where}.anonymous"
        )
        try:
            spec = PointSpec.from_mapping(
                name, branches, multiplicities, anonymous=anonymous
            )
        except ValueError as exception:
            raise ScenarioError(str(exception), "points", where) from exception
        coordinates = None
        if "coordinates" in entry:
            raw_coordinates = _expect_type(
                entry["coordinates"], list, "points", f"{where}.coordinates"
            )
            try:
                coordinates = ProjectivePoint(parse_field_elements(raw_coordinates))
            except ValueError as exception:
                raise ScenarioError(
                    str(exception), "points", f"{where}.coordinates"
                ) from exception
        points.append(PointEntry(spec=spec, coordinates=coordinates))
    return tuple(points)


def _parse_script(raw: Any) -> tuple[BlowupStep, ...]:
    _expect_type(raw, list, "script", "script")
    steps = []
    for i, entry in enumerate(raw):
        where = f"script[{i}]"
        _expect_type(entry, dict, "script", where)
        if len(entry) != 1 or next(iter(entry)) not in ("at", "generic"):
            raise ScenarioError(
                f"A step is either {{at: point}} or {{generic: curve}}. Got {entry}.",
                "script",
                where,
            )
        ((kind, target),) = entry.items()
        target = _expect_type(target, str, "script", f"{where}.{kind}")
        steps.append(
            BlowupStep.at(target) if kind == "at" else BlowupStep.generic(target)
        )
    return tuple(steps)


def _parse_plumbing(raw: Any) -> PlumbingEntry:
    if isinstance(raw, list):
        raw = {"vertices": raw}
    _expect_keys(raw, ("vertices",), ("center", "legs"), "plumbing", "plumbing")
    raw_vertices = _expect_type(raw["vertices"], list, "plumbing", "plumbing.vertices")
    vertices = []
    for i, entry in enumerate(raw_vertices):
        where = f"plumbing.vertices[{i}]"
        if isinstance(entry, str):
            vertices.append((entry, entry))
            continue
        _expect_keys(entry, ("name", "curve"), (), "plumbing", where)
        vertices.append(
            (
                _expect_type(entry["name"], str, "plumbing", f"{where}.name"),
                _expect_type(entry["curve"], str, "plumbing", f"{where}.curve"),
            )
        )
    center = raw.get("center")
    if center is not None:
        _expect_type(center, str, "plumbing", "plumbing.center")
    legs = raw.get("legs")
    if legs is not None:
        _expect_type(legs, list, "plumbing", "plumbing.legs")
        for i, leaf in enumerate(legs):
            _expect_type(leaf, str, "plumbing", f"plumbing.legs[{i}]")
        legs = tuple(legs)
    return PlumbingEntry(vertices=tuple(vertices), center=center, legs=legs)


def _parse_facts(raw: Any) -> tuple[GeometricFacts, tuple[int, ...]]:
    _expect_type(raw, list, "pi1_facts", "pi1_facts")
    kills = []
    identifications = []
    kill_positions: list[int] = []
    identify_positions: list[int] = []
    for i, entry in enumerate(raw):
        where = f"pi1_facts[{i}]"
        _expect_type(entry, dict, "pi1_facts", where)
        if "kill" in entry:
            _expect_keys(entry, ("kill", "witness"), (), "pi1_facts", where)
            leaf = _expect_type(entry["kill"], str, "pi1_facts", f"{where}.kill")
            witness = _expect_type(
                entry["witness"], str, "pi1_facts", f"{where}.witness"
            )
            kills.append(KillFact(leaf=leaf, witness=witness))
            kill_positions.append(i)
        elif "identify" in entry:
            _expect_keys(
                entry, ("identify", "witness"), ("also_meets",), "pi1_facts", where
            )
            leaves = _expect_type(
                entry["identify"], list, "pi1_facts", f"{where}.identify"
            )
            if len(leaves) != 2:
                raise ScenarioError(
                    f"identify takes 2 leaves, got {leaves}.",
                    "pi1_facts",
                    f"{where}.identify",
                )
            also_meets = _expect_type(
                entry.get("also_meets", []), list, "pi1_facts", f"{where}.also_meets"
            )
            for key, spheres in (("identify", leaves), ("also_meets", also_meets)):
                for j, sphere in enumerate(spheres):
                    _expect_type(sphere, str, "pi1_facts", f"{where}.{key}[{j}]")
            witness = _expect_type(
                entry["witness"], str, "pi1_facts", f"{where}.witness"
            )
            identify_positions.append(i)
            identifications.append(
                IdentifyFact(
                    leaves=tuple(leaves),
                    witness=witness,
                    also_meets=tuple(also_meets),
                )
            )
        else:
            raise ScenarioError(
                f"A fact is either kill or identify. Got {entry}.", "pi1_facts", where
            )
    facts = GeometricFacts(kills=tuple(kills), identifications=tuple(identifications))
    return facts, tuple(kill_positions + identify_positions)


def _parse_surgery(raw: Any) -> SurgeryEntry:
    _expect_keys(raw, (), ("expect", "ambient"), "surgery", "surgery")
    expect = raw.get("expect")
    if expect is not None:
        _expect_type(expect, str, "surgery", "surgery.expect")
    ambient = raw.get("ambient")
    if ambient is not None:
        _expect_type(ambient, int, "surgery", "surgery.ambient")
    return SurgeryEntry(expect=expect, ambient=ambient)


########################################################################################
###################################### Validation ######################################
########################################################################################


def _is_known_curve(name: str, scenario_curves: set[str], num_steps: int) -> bool:
    match = _EXCEPTIONAL_NAME.match(name)
    if match:
        return int(match.group(1)) <= num_steps
    return name in scenario_curves


def validate_scenario(scenario: Scenario):
    """
    Checks that every section's references resolve.

    Raises
    ------
    ScenarioError
        naming the first dangling reference
    """
    curves = {curve.name for curve in scenario.curves}
    num_steps = len(scenario.script)
    for i, point in enumerate(scenario.points):
        for branch in point.spec.branches:
            if branch not in curves:
                raise ScenarioError(
                    f"Point {point.name} goes through {branch!r}, which isn't a curve. "
                    f"Curves: {sorted(curves)}.",
                    "points",
                    f"points[{i}].branches",
                )
    live_points = {point.name for point in scenario.points if not point.spec.anonymous}
    anonymous = {point.name for point in scenario.points if point.spec.anonymous}
    for i, step in enumerate(scenario.script):
        where = f"script[{i}]"
        if step.kind == "at-point":
            if _DERIVED_POINT.search(step.target):
                continue
            if step.target in anonymous:
                raise ScenarioError(
                    f"Point {step.target} is anonymous, so it can't be blown up.",
                    "script",
                    where,
                )
            if step.target not in live_points:
                raise ScenarioError(
                    f"Point {step.target} isn't declared. Points: "
                    f"{sorted(live_points)}.",
                    "script",
                    where,
                )
        elif not _is_known_curve(step.target, curves, i):
            raise ScenarioError(
                f"Curve {step.target} doesn't exist before step {i + 1}.",
                "script",
                where,
            )
    if scenario.plumbing is None:
        if len(scenario.facts):
            raise ScenarioError(
                "pi1_facts need a plumbing section.", "pi1_facts", "pi1_facts"
            )
        return
    plumbing = scenario.plumbing
    labels = plumbing.labels
    if len(set(labels)) != len(labels):
        raise ScenarioError(
            f"Plumbing labels repeat: {list(labels)}.", "plumbing", "plumbing.vertices"
        )
    for i, curve in enumerate(plumbing.curves):
        if not _is_known_curve(curve, curves, num_steps):
            raise ScenarioError(
                f"Plumbing sphere {labels[i]} is curve {curve!r}, which doesn't exist "
                "after the script.",
                "plumbing",
                f"plumbing.vertices[{i}]",
            )
    if plumbing.center is not None and plumbing.center not in labels:
        raise ScenarioError(
            f"Center {plumbing.center} isn't a plumbing sphere: {list(labels)}.",
            "plumbing",
            "plumbing.center",
        )
    for leaf in plumbing.legs or ():
        if leaf not in labels:
            raise ScenarioError(
                f"Leg leaf {leaf} isn't a plumbing sphere: {list(labels)}.",
                "plumbing",
                "plumbing.legs",
            )
    facts = (*scenario.facts.kills, *scenario.facts.identifications)
    positions = scenario.fact_positions or range(len(facts))
    for position, fact in zip(positions, facts):
        where = f"pi1_facts[{position}]"
        leaves = (fact.leaf,) if isinstance(fact, KillFact) else fact.leaves
        extra = () if isinstance(fact, KillFact) else fact.also_meets
        for sphere in (*leaves, *extra):
            if sphere not in labels:
                raise ScenarioError(
                    f"{sphere!r} isn't a plumbing sphere: {list(labels)}.",
                    "pi1_facts",
                    where,
                )
        if not _is_known_curve(fact.witness, curves, num_steps):
            raise ScenarioError(
                f"Witness {fact.witness!r} isn't a curve after the script.",
                "pi1_facts",
                where,
            )


########################################################################################
####################################### Loading ########################################
########################################################################################


def parse_scenario(text: str, source: str = "<string>") -> Scenario:
    """
    Parses and validates the YAML text of a scenario.

    Raises
    ------
    ScenarioError
        if the text isn't YAML, a section is malformed, or a reference dangles
    """
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as exception:
        mark = getattr(exception, "problem_mark", None)
        location = None if mark is None else f"line {mark.line + 1}"
        problem = getattr(exception, "problem", None) or str(exception)
        raise ScenarioError(
            f"{source} isn't valid YAML: {problem}", location=location
        ) from exception
    if not isinstance(document, dict):
        raise ScenarioError(f"{source} must be a mapping of sections.")
    unknown = [key for key in document if key not in SECTIONS]
    if unknown:
        raise ScenarioError(f"Unknown sections {unknown}. Allowed: {list(SECTIONS)}.")
    if "curves" not in document:
        raise ScenarioError("The curves section is required.", "curves")
    name = document.get("name")
    if name is None:
        name = os.path.splitext(os.path.basename(source))[0]
    facts, fact_positions = _parse_facts(document.get("pi1_facts") or [])
    scenario = Scenario(
        name=str(name),
        curves=_parse_curves(document["curves"]),
        points=_parse_points(document.get("points") or []),
        script=_parse_script(document.get("script") or []),
        plumbing=(
            None
            if document.get("plumbing") is None
            else _parse_plumbing(document["plumbing"])
        ),
        facts=facts,
        surgery=_parse_surgery(document.get("surgery") or {}),
        source=source,
        fact_positions=fact_positions,
    )
    validate_scenario(scenario)
    return scenario


def load_scenario(path: Union[str, os.PathLike]) -> Scenario:
    """
    Reads and validates a scenario file.
    """
    path = os.fspath(path)
    try:
        with open(path, encoding="utf-8") as file:
            text = file.read()
    except OSError as exception:
        raise ScenarioError(f"Can't read {path}: {exception}") from exception
    return parse_scenario(text, source=path)


def builtin_text(name: str) -> str:
    if name not in BUILTINS:
        raise ScenarioError(f"No built-in scenario {name!r}. Built-ins: {BUILTINS}.")
    return (
        resources.files("blowdown.scenario")
        .joinpath("scenarios")
        .joinpath(f"{name}.yaml")
        .read_text(encoding="utf-8")
    )


def load_builtin(name: str) -> Scenario:
    """
    One of the scenarios in :data:`BUILTINS`. They're ordinary scenario files shipped
    with the package.
    """
    return parse_scenario(builtin_text(name), source=f"{name}.yaml")
