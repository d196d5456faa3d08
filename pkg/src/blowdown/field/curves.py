"""
Plane curves and points over Q(i, sqrt2, sqrt3), and exact certificates of how two
curves meet at a point
"""

from __future__ import annotations
from dataclasses import dataclass
import logging
from typing import Literal, Mapping, Sequence

from blowdown.field.numbers import ONE, ZERO, FieldElement


logger = logging.getLogger(__name__)


Contact = Literal["tangent", "transverse", "not-on-both"]
"""
How two curves meet at a point. ``"tangent"`` means the point is on both curves and
their gradients are proportional, so the local intersection multiplicity is at least 2.
"""

Monomial = tuple[int, int, int]
"""
Exponents of ``(z1, z2, z3)``.
"""

_VARIABLES = ("z1", "z2", "z3")


class PolynomialError(ValueError):
    """
    The polynomial isn't a homogeneous polynomial of degree 1 or 2, or it's singular
    where it's asked to certify a contact.
    """


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """
    A point ``[z1 : z2 : z3]`` of the projective plane. Equality is up to a nonzero
    scalar.
    """

    coordinates: tuple[FieldElement, FieldElement, FieldElement]

    def __post_init__(self):
        if len(self.coordinates) != 3:
            raise ValueError(
                f"A point of the plane has 3 coordinates, got {len(self.coordinates)}."
            )
        if not any(self.coordinates):
            raise ValueError("[0 : 0 : 0] is not a point of the projective plane.")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        x, y = self.coordinates, other.coordinates
        return all(
            x[i] * y[j] == x[j] * y[i] for i in range(3) for j in range(i + 1, 3)
        )

    __hash__ = None

    def scaled(self, factor: FieldElement) -> ProjectivePoint:
        """
        The same point, with coordinates multiplied by the nonzero `factor`.
        """
        if not factor:
            raise ZeroDivisionError("Can't scale a projective point by 0.")
        return ProjectivePoint(
            tuple(factor * coordinate for coordinate in self.coordinates)
        )

    def __str__(self) -> str:
        return "[" + " : ".join(map(str, self.coordinates)) + "]"


@dataclass(frozen=True)
class HomogeneousPoly:
    """
    A homogeneous polynomial in ``z1, z2, z3`` of degree 1 or 2.

    Parameters
    ----------
    degree : int
        1 for a line, 2 for a conic
    terms : tuple[tuple[Monomial, FieldElement], ...]
        ``(exponents, coefficient)`` pairs. Repeated monomials are added together and
        zero coefficients are dropped

    Raises
    ------
    PolynomialError
        if the degree is not 1 or 2, if a monomial doesn't have total degree `degree`,
        or if every coefficient is zero
    """

    degree: int
    terms: tuple[tuple[Monomial, FieldElement], ...]

    def __post_init__(self):
        if self.degree not in (1, 2):
            raise PolynomialError(
                f"Only lines and conics are supported. Got degree {self.degree}."
            )
        merged: dict[Monomial, FieldElement] = {}
        for monomial, coefficient in self.terms:
            monomial = tuple(int(exponent) for exponent in monomial)
            if len(monomial) != 3 or any(exponent < 0 for exponent in monomial):
                raise PolynomialError(
                    f"Monomial {monomial} must be 3 non-negative exponents."
                )
            if sum(monomial) != self.degree:
                raise PolynomialError(
                    f"Monomial {monomial} has degree {sum(monomial)}, but the "
                    f"polynomial has degree {self.degree}."
                )
            merged[monomial] = merged.get(monomial, ZERO) + coefficient
        terms = tuple(
            (monomial, coefficient)
            for monomial, coefficient in sorted(merged.items(), reverse=True)
            if coefficient
        )
        if not terms:
            raise PolynomialError("The zero polynomial doesn't define a curve.")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_mapping(
        cls, degree: int, coefficients: Mapping[Monomial, FieldElement]
    ) -> HomogeneousPoly:
        return cls(degree=degree, terms=tuple(coefficients.items()))

    def __str__(self) -> str:
        pieces = []
        for monomial, coefficient in self.terms:
            factors = [
                name if exponent == 1 else f"{name}^{exponent}"
                for name, exponent in zip(_VARIABLES, monomial)
                if exponent
            ]
            pieces.append(
                "*".join(factors)
                if coefficient == ONE
                else f"({coefficient})*" + "*".join(factors)
            )
        return " + ".join(pieces)


########################################################################################
##################################### Evaluation #######################################
########################################################################################


def _monomial_value(monomial: Sequence[int], point: ProjectivePoint) -> FieldElement:
    value = ONE
    for coordinate, exponent in zip(point.coordinates, monomial):
        value = value * coordinate**exponent
    return value


def evaluate(poly: HomogeneousPoly, point: ProjectivePoint) -> FieldElement:
    """
    Exact value of `poly` at a representative of `point`. It's zero iff the point is on
    the curve, whichever representative is used.
    """
    value = ZERO
    for monomial, coefficient in poly.terms:
        value = value + coefficient * _monomial_value(monomial, point)
    return value


def gradient(
    poly: HomogeneousPoly, point: ProjectivePoint
) -> tuple[FieldElement, FieldElement, FieldElement]:
    """
    Partial derivatives ``(d/dz1, d/dz2, d/dz3)`` of `poly`, evaluated at `point`.
    """
    partials = [ZERO, ZERO, ZERO]
    for monomial, coefficient in poly.terms:
        for variable, exponent in enumerate(monomial):
            if not exponent:
                continue
            lowered = list(monomial)
            lowered[variable] -= 1
            partials[variable] = partials[variable] + (
                coefficient * exponent * _monomial_value(lowered, point)
            )
    return tuple(partials)


def certify_contact(
    p: HomogeneousPoly, q: HomogeneousPoly, point: ProjectivePoint
) -> Contact:
    """
    Certifies how the curves `p` and `q` meet at `point`.

    Parameters
    ----------
    p : HomogeneousPoly
        a line or a smooth conic
    q : HomogeneousPoly
        a line or a smooth conic
    point : ProjectivePoint
        the point to check

    Returns
    -------
    Contact
        ``"not-on-both"`` if either polynomial is nonzero at `point`. Otherwise
        ``"tangent"`` if every 2 x 2 minor of the Jacobian ``[grad p; grad q]``
        vanishes, else ``"transverse"``

    Raises
    ------
    PolynomialError
        if either curve is singular at `point`
    """
    if evaluate(p, point) or evaluate(q, point):
        return "not-on-both"
    grad_p, grad_q = gradient(p, point), gradient(q, point)
    for poly, grad in ((p, grad_p), (q, grad_q)):
        if not any(grad):
            raise PolynomialError(f"{poly} is singular at {point}.")
    minors = (
        grad_p[i] * grad_q[j] - grad_p[j] * grad_q[i]
        for i in range(3)
        for j in range(i + 1, 3)
    )
    return "transverse" if any(minors) else "tangent"


########################################################################################
####################################### Bezout #########################################
########################################################################################


_MULTIPLICITY: dict[Contact, int] = {"tangent": 2, "transverse": 1, "not-on-both": 0}


@dataclass(frozen=True)
class BezoutAudit:
    """
    Contacts of two curves at named points, compared with Bezout's bound.

    Parameters
    ----------
    contacts : tuple[tuple[str, Contact], ...]
        ``(point name, contact)`` in the order the points were given
    total : int
        sum of contact multiplicities, counting a tangency as 2
    expected : int
        product of the degrees
    """

    contacts: tuple[tuple[str, Contact], ...]
    total: int
    expected: int

    @property
    def complete(self) -> bool:
        """
        ``True`` iff the listed points account for every intersection, which pins every
        tangency to multiplicity exactly 2.
        """
        return self.total == self.expected


def bezout_audit(
    p: HomogeneousPoly, q: HomogeneousPoly, points: Mapping[str, ProjectivePoint]
) -> BezoutAudit:
    """
    Certifies the contact of `p` and `q` at every point in `points` and adds up their
    multiplicities.

    Raises
    ------
    ValueError
        if two of the points are the same projective point
    PolynomialError
        if the multiplicities add up to more than ``p.degree * q.degree``
    """
    names = list(points)
    for i, name in enumerate(names):
        for other in names[i + 1 :]:
            if points[name] == points[other]:
                raise ValueError(f"Points {name} and {other} are the same point.")
    contacts = tuple((name, certify_contact(p, q, points[name])) for name in names)
    total = sum(_MULTIPLICITY[contact] for _, contact in contacts)
    expected = p.degree * q.degree
    if total > expected:
        raise PolynomialError(
            f"Contacts {dict(contacts)} add up to {total}, which exceeds Bezout's "
            f"bound {expected}. One of the curves must be reducible."
        )
    logger.debug("Bezout audit of %s and %s: %s / %s", p, q, total, expected)
    return BezoutAudit(contacts=contacts, total=total, expected=expected)
