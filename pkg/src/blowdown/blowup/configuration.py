"""
Configurations of plane curves, their intersection points, and the combinatorial
invariants which blow-ups have to preserve
"""

from __future__ import annotations
from dataclasses import dataclass, field
import re
from typing import Mapping, Optional, Sequence

import networkx as nx

from blowdown.blowup.homology import HomologyClass
from blowdown.utils import _check


_EXCEPTIONAL_NAME = re.compile(r"^e([1-9][0-9]*)$")
_RESERVED_CHARACTERS = ("'", "@")


########################################################################################
######################################## Errors ########################################
########################################################################################


class InfeasibleConfigurationError(ValueError):
    """
    Declared intersections of two curves exceed the product of their degrees.
    """


class DirectionAmbiguityError(ValueError):
    """
    At some point, tangency (multiplicity >= 2) isn't a transitive relation among the
    curves through that point. Blow-ups can't tell which branches stay together.
    """


class UnknownCurveError(KeyError):
    """
    No curve has this name.
    """

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class StalePointError(KeyError):
    """
    The point isn't live: a previous blow-up consumed it, or it was never declared.
    """

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


########################################################################################
######################################### Types ########################################
########################################################################################


@dataclass(frozen=True)
class Curve:
    """
    A named sphere in the blown-up plane.

    Parameters
    ----------
    name : str
        ``e<k>`` for the k'th exceptional curve, anything else for a plane curve
    homology : HomologyClass
        class of the curve, or of its proper transform
    degree : int | None, optional
        degree of a plane curve: 1 or 2. `None` for an exceptional curve
    """

    name: str
    homology: HomologyClass
    degree: Optional[int] = None

    def __post_init__(self):
        is_exceptional_name = _EXCEPTIONAL_NAME.match(self.name) is not None
        if self.degree is None and not is_exceptional_name:
            raise ValueError(
                f"Curve {self.name!r} has no degree, so it must be named e<k>."
            )
        if self.degree is not None:
            if is_exceptional_name:
                raise ValueError(
                    f"Name {self.name!r} is reserved for exceptional curves."
                )
            if self.degree not in (1, 2):
                raise ValueError(
                    f"Curve {self.name!r} has degree {self.degree}. Only lines and "
                    "conics are rational smooth curves, so degree must be 1 or 2."
                )

    @property
    def is_exceptional(self) -> bool:
        return self.degree is None

    @property
    def exceptional_index(self) -> Optional[int]:
        match = _EXCEPTIONAL_NAME.match(self.name)
        return None if self.degree is not None else int(match.group(1))

    @property
    def self_intersection(self) -> int:
        return self.homology.self_intersection


def _pair(a: str, b: str) -> tuple[str, str]:
    if a == b:
        raise ValueError(
            f"A pair of curves needs two different curves. Got {a!r} twice."
        )
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class PointSpec:
    """
    A point of the configuration, with the curves through it and their local
    intersection multiplicities there.

    Parameters
    ----------
    name : str
        name of the point
    branches : tuple[str, ...]
        names of the curves through the point. Each curve has one smooth branch there
    multiplicities : tuple[tuple[tuple[str, str], int], ...], optional
        ``((curve, other curve), multiplicity)``. Pairs of branches that aren't listed
        meet transversally, i.e., with multiplicity 1
    anonymous : bool, optional
        ``True`` if the point is declared for the record only. Anonymous points can't be
        blown up. Their intersections count as residual intersections of the
        configuration. By default, False
    """

    name: str
    branches: tuple[str, ...]
    multiplicities: tuple[tuple[tuple[str, str], int], ...] = field(default=())
    anonymous: bool = False

    def __post_init__(self):
        _check.nonempty(self.branches, variable_name=f"branches of point {self.name}")
        _check.unique_names(
            self.branches, variable_name=f"branches of point {self.name}"
        )
        merged: dict[tuple[str, str], int] = {}
        for (a, b), multiplicity in self.multiplicities:
            pair = _pair(a, b)
            for curve in pair:
                if curve not in self.branches:
                    raise ValueError(
                        f"Point {self.name} declares a multiplicity for {pair}, but "
                        f"{curve!r} is not one of its branches {list(self.branches)}."
                    )
            if pair in merged:
                raise ValueError(f"Point {self.name} declares {pair} twice.")
            if int(multiplicity) < 1:
                raise ValueError(
                    f"Point {self.name}: multiplicity of {pair} must be >= 1. Got "
                    f"{multiplicity}."
                )
            merged[pair] = int(multiplicity)
        object.__setattr__(self, "branches", tuple(sorted(self.branches)))
        object.__setattr__(
            self,
            "multiplicities",
            tuple((pair, m) for pair, m in sorted(merged.items()) if m != 1),
        )

    @classmethod
    def from_mapping(
        cls,
        name: str,
        branches: Sequence[str],
        multiplicities: Mapping[tuple[str, str], int] | None = None,
        anonymous: bool = False,
    ) -> PointSpec:
        return cls(
            name=name,
            branches=tuple(branches),
            multiplicities=tuple((multiplicities or {}).items()),
            anonymous=anonymous,
        )

    def multiplicity(self, a: str, b: str) -> int:
        """
        Local intersection multiplicity of `a` and `b` at this point, or 0 if one of
        them doesn't go through it.
        """
        if a not in self.branches or b not in self.branches:
            return 0
        return dict(self.multiplicities).get(_pair(a, b), 1)

    def pairs(self) -> list[tuple[tuple[str, str], int]]:
        """
        Every pair of branches with its multiplicity.
        """
        return [
            ((a, b), self.multiplicity(a, b))
            for i, a in enumerate(self.branches)
            for b in self.branches[i + 1 :]
        ]

    def direction_classes(self) -> list[tuple[str, ...]]:
        """
        Groups of branches sharing a tangent direction, sorted. Singletons included.

        Raises
        ------
        DirectionAmbiguityError
            if tangency isn't transitive at this point
        """
        tangency = nx.Graph()
        tangency.add_nodes_from(self.branches)
        tangency.add_edges_from(pair for pair, m in self.multiplicities if m >= 2)
        classes = []
        for component in nx.connected_components(tangency):
            members = tuple(sorted(component))
            for i, a in enumerate(members):
                for b in members[i + 1 :]:
                    if self.multiplicity(a, b) < 2:
                        raise DirectionAmbiguityError(
                            f"At point {self.name}, {list(members)} are linked by "
                            f"tangencies but {a} and {b} meet transversally. Declare "
                            "which branches share a tangent direction consistently."
                        )
            classes.append(members)
        return sorted(classes)


@dataclass(frozen=True)
class Configuration:
    """
    Curves in ``CP^2 # num_blowups (-CP^2)``, their live intersection points, and the
    number of intersections that no live point accounts for.

    For every pair of distinct curves, the pairing of their classes equals their
    residual count plus their multiplicities at live points.

    Parameters
    ----------
    num_blowups : int
        number of blow-ups performed so far
    curves : tuple[Curve, ...]
        curves in order of creation
    points : tuple[PointSpec, ...]
        live points
    residuals : tuple[tuple[tuple[str, str], int], ...]
        nonzero residual intersection counts
    consumed : tuple[str, ...]
        names of points already blown up
    """

    num_blowups: int
    curves: tuple[Curve, ...]
    points: tuple[PointSpec, ...]
    residuals: tuple[tuple[tuple[str, str], int], ...] = field(default=())
    consumed: tuple[str, ...] = field(default=())

    def __post_init__(self):
        for (a, b), count in self.residuals:
            if count < 0:
                raise InfeasibleConfigurationError(
                    f"Residual intersection count of {a} and {b} is {count} < 0."
                )

    @property
    def curve_names(self) -> tuple[str, ...]:
        return tuple(curve.name for curve in self.curves)

    def curve(self, name: str) -> Curve:
        for curve in self.curves:
            if curve.name == name:
                return curve
        raise UnknownCurveError(
            f"There's no curve named {name!r}. Curves: {list(self.curve_names)}."
        )

    def point(self, name: str) -> PointSpec:
        for point in self.points:
            if point.name == name:
                return point
        if name in self.consumed:
            raise StalePointError(
                f"Point {name!r} was already blown up. Address the points its blow-up "
                "created instead, e.g., the residual point or a <curve>@e<k> point."
            )
        raise StalePointError(
            f"There's no live point named {name!r}. Live points: "
            f"{[point.name for point in self.points]}."
        )

    def residual(self, a: str, b: str) -> int:
        return dict(self.residuals).get(_pair(a, b), 0)

    def product(self, a: str, b: str) -> int:
        return self.curve(a).homology.pairing(self.curve(b).homology)

    def live_multiplicity(self, a: str, b: str) -> int:
        """
        Sum of the local multiplicities of `a` and `b` over all live points.
        """
        return sum(point.multiplicity(a, b) for point in self.points)


########################################################################################
##################################### Construction #####################################
########################################################################################


def define_configuration(
    curves: Sequence[tuple[str, int]], points: Sequence[PointSpec]
) -> Configuration:
    """
    Validates plane curves and their declared intersection points.

    Parameters
    ----------
    curves : Sequence[tuple[str, int]]
        ``(name, degree)`` of each plane curve. Degree must be 1 or 2
    points : Sequence[PointSpec]
        declared intersection points. Anonymous points are checked against Bezout's
        bound but aren't live

    Returns
    -------
    Configuration
        no blow-ups yet. Each curve has class ``degree * h``, and the residual count of
        each pair is ``degree * degree'`` minus their multiplicities at live points

    Raises
    ------
    InfeasibleConfigurationError
        if the declared multiplicities of a pair of curves add up to more than the
        product of their degrees
    DirectionAmbiguityError
        if tangency isn't transitive at a point
    UnknownCurveError
        if a point goes through an undeclared curve
    ValueError
        if names repeat or use the reserved characters ``'`` or ``@``

    Example
    -------
    Two lines meet once, somewhere::

        from blowdown.blowup.configuration import define_configuration

        config = define_configuration([("L1", 1), ("L2", 1)], [])
        assert config.residual("L1", "L2") == 1
    """
    _check.unique_names([name for name, _ in curves], variable_name="curve names")
    _check.unique_names([point.name for point in points], variable_name="point names")
    for name in [name for name, _ in curves] + [point.name for point in points]:
        if any(character in name for character in _RESERVED_CHARACTERS):
            raise ValueError(
                f"Name {name!r} can't contain {list(_RESERVED_CHARACTERS)}. They're "
                "reserved for the points that blow-ups create."
            )
    plane_curves = tuple(
        Curve(name=name, homology=HomologyClass.line(degree), degree=degree)
        for name, degree in curves
    )
    degrees = {curve.name: curve.degree for curve in plane_curves}
    declared: dict[tuple[str, str], int] = {}
    live: dict[tuple[str, str], int] = {}
    for point in points:
        for branch in point.branches:
            if branch not in degrees:
                raise UnknownCurveError(
                    f"Point {point.name} goes through {branch!r}, which isn't a "
                    f"declared curve. Curves: {list(degrees)}."
                )
        point.direction_classes()
        for pair, multiplicity in point.pairs():
            declared[pair] = declared.get(pair, 0) + multiplicity
            if not point.anonymous:
                live[pair] = live.get(pair, 0) + multiplicity
    for pair, total in declared.items():
        bound = degrees[pair[0]] * degrees[pair[1]]
        if total > bound:
            raise InfeasibleConfigurationError(
                f"{pair[0]} and {pair[1]} have degrees {degrees[pair[0]]} and "
                f"{degrees[pair[1]]}, so they meet {bound} times counted with "
                f"multiplicity. But their declared points add up to {total}."
            )
    names = [curve.name for curve in plane_curves]
    residuals = []
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            pair = _pair(a, b)
            count = degrees[a] * degrees[b] - live.get(pair, 0)
            if count:
                residuals.append((pair, count))
    return Configuration(
        num_blowups=0,
        curves=plane_curves,
        points=tuple(point for point in points if not point.anonymous),
        residuals=tuple(sorted(residuals)),
    )
