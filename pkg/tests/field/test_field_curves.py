"""
Unit tests `blowdown.field.curves`.
"""

from __future__ import annotations
import os
import sys

import pytest

from blowdown.field import curves
from blowdown.field.curves import HomogeneousPoly, ProjectivePoint
from blowdown.field.numbers import I, ONE, SQRT2, ZERO, parse_field_elements

# sys hack to import from parent
sys.path.insert(1, os.path.join(sys.path[0], ".."))
import _paper


def _point(*coordinates) -> ProjectivePoint:
    return ProjectivePoint(parse_field_elements(coordinates))


def _line(a, b, c) -> HomogeneousPoly:
    coefficients = parse_field_elements((a, b, c))
    monomials = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    return HomogeneousPoly(degree=1, terms=tuple(zip(monomials, coefficients)))


@pytest.fixture(scope="module")
def scenario():
    return _paper.scenario(_paper.B4)


@pytest.fixture(scope="module")
def q1(scenario) -> HomogeneousPoly:
    return scenario.curve("q1").polynomial


@pytest.fixture(scope="module")
def q2(scenario) -> HomogeneousPoly:
    return scenario.curve("q2").polynomial


@pytest.fixture(scope="module")
def points(scenario) -> dict[str, ProjectivePoint]:
    return {
        point.name: point.coordinates
        for point in scenario.points
        if point.coordinates is not None
    }


########################################################################################
######################################## Points ########################################
########################################################################################


def test_projective_point_equality():
    point = _point("1", "1/2*sqrt2*i", "1/2*sqrt2*i")
    assert point == point.scaled(SQRT2 + I)
    assert point != _point("1", "0", "0")
    with pytest.raises(TypeError):
        hash(point)


def test_projective_point_bad():
    with pytest.raises(ValueError, match="not a point"):
        ProjectivePoint((ZERO, ZERO, ZERO))
    with pytest.raises(ValueError, match="3 coordinates"):
        ProjectivePoint((ONE, ONE))
    with pytest.raises(ZeroDivisionError):
        _point("1", "0", "0").scaled(ZERO)


########################################################################################
##################################### Polynomials ######################################
########################################################################################


@pytest.mark.parametrize(
    "degree, terms, match",
    (
        (3, (((3, 0, 0), ONE),), "Only lines and conics"),
        (2, (((1, 0, 0), ONE),), "has degree 1"),
        (1, (((1, 0), ONE),), "3 non-negative exponents"),
        (1, (((1, 0, 0), ONE), ((1, 0, 0), -ONE)), "zero polynomial"),
    ),
)
def test_homogeneous_poly_bad(degree, terms, match):
    with pytest.raises(curves.PolynomialError, match=match):
        HomogeneousPoly(degree=degree, terms=terms)


def test_homogeneous_poly_merges_terms():
    poly = HomogeneousPoly(
        degree=1, terms=(((1, 0, 0), ONE), ((0, 1, 0), ONE), ((1, 0, 0), ONE))
    )
    assert dict(poly.terms) == {(1, 0, 0): ONE + ONE, (0, 1, 0): ONE}
    assert poly == HomogeneousPoly.from_mapping(1, {(0, 1, 0): ONE, (1, 0, 0): 2 * ONE})


def test_evaluate_is_projective(q1, points):
    for point in points.values():
        assert not curves.evaluate(q1, point)
        assert not curves.evaluate(q1, point.scaled(SQRT2 - 3 * I))


def test_gradient(q1, points):
    # q1 = z1^2 + z2^2 + z3^2, so the gradient is 2 * point
    gradient = curves.gradient(q1, points["P8"])
    assert gradient == tuple(2 * coordinate for coordinate in points["P8"].coordinates)


########################################################################################
####################################### Contacts #######################################
########################################################################################


@pytest.mark.parametrize(
    "point, contact_expected",
    (("P1", "transverse"), ("P8", "tangent"), ("R", "transverse")),
)
def test_certify_contact_conics(q1, q2, points, point, contact_expected):
    assert curves.certify_contact(q1, q2, points[point]) == contact_expected
    assert curves.certify_contact(q2, q1, points[point]) == contact_expected


def test_bezout_audit_conics(q1, q2, points):
    audit = curves.bezout_audit(q1, q2, points)
    assert dict(audit.contacts) == {
        "P1": "transverse",
        "P8": "tangent",
        "R": "transverse",
    }
    assert audit.total == 4
    assert audit.expected == 4
    assert audit.complete


def test_perturbed_conic_misses_tangency(q1, points):
    # 2*sqrt2*i becomes 2*i
    perturbed = HomogeneousPoly(
        degree=2,
        terms=(((1, 1, 0), ONE), ((0, 1, 1), 2 * I), ((1, 0, 1), ONE)),
    )
    assert curves.evaluate(perturbed, points["P8"])
    assert curves.certify_contact(q1, perturbed, points["P8"]) == "not-on-both"


def test_line_tangent_to_conic():
    conic = HomogeneousPoly(degree=2, terms=(((0, 2, 0), ONE), ((1, 0, 1), -ONE)))
    line = _line("1", "0", "0")
    audit = curves.bezout_audit(conic, line, {"O": _point("0", "0", "1")})
    assert audit.contacts == (("O", "tangent"),)
    assert audit.complete


def test_bezout_audit_incomplete():
    line = _line("1", "0", "0")
    other = _line("0", "1", "0")
    far = _line("0", "0", "1")
    audit = curves.bezout_audit(line, other, {"O": _point("0", "0", "1")})
    assert audit.complete
    audit = curves.bezout_audit(line, far, {"O": _point("0", "0", "1")})
    assert audit.contacts == (("O", "not-on-both"),)
    assert audit.total == 0
    assert not audit.complete


def test_singular_conic():
    reducible = HomogeneousPoly(degree=2, terms=(((1, 1, 0), ONE),))
    line = _line("1", "-1", "0")
    with pytest.raises(curves.PolynomialError, match="singular"):
        curves.certify_contact(reducible, line, _point("0", "0", "1"))


def test_bezout_bound_exceeded():
    reducible = HomogeneousPoly(degree=2, terms=(((1, 1, 0), ONE),))
    line = _line("1", "0", "0")
    points = {
        name: _point("0", "1", t) for name, t in (("A", "0"), ("B", "1"), ("C", "2"))
    }
    with pytest.raises(curves.PolynomialError, match="exceeds Bezout's bound"):
        curves.bezout_audit(reducible, line, points)


def test_bezout_audit_repeated_point(q1, q2, points):
    repeated = {"P8": points["P8"], "again": points["P8"].scaled(2 * ONE)}
    with pytest.raises(ValueError, match="same point"):
        curves.bezout_audit(q1, q2, repeated)
