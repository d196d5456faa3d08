"""
Unit tests `blowdown.surgery.accounting`.
"""

from __future__ import annotations
import os
import sys

import pytest

from blowdown.blowup.configuration import define_configuration
from blowdown.plumbing.graph import extract_plumbing
from blowdown.plumbing.seifert import SeifertInvariant
from blowdown.scenario import expected
from blowdown.surgery import accounting
from blowdown.surgery.accounting import AmbientManifold

# sys hack to import from parent
sys.path.insert(1, os.path.join(sys.path[0], ".."))
import _paper


def test_ambient_manifold():
    ambient = AmbientManifold(16)
    assert (ambient.euler, ambient.signature) == (19, -15)
    assert str(ambient) == "CP2#16-CP2"
    with pytest.raises(ValueError, match=">= 0"):
        AmbientManifold(-1)


@pytest.mark.parametrize("name", _paper.BUILTINS)
def test_euler_signature(name: str):
    ambient = AmbientManifold(expected.NUM_BLOWUPS[name])
    assert accounting.euler_signature(ambient, 8) == expected.EULER_SIGNATURE[name]


def test_euler_signature_edge_cases():
    ambient = AmbientManifold(3)
    assert accounting.euler_signature(ambient, 0) == (6, -2)
    ball = accounting.RationalBallModel(euler=2, signature=1)
    assert accounting.euler_signature(ambient, 1, ball=ball) == (6, 0)
    with pytest.raises(ValueError, match="num_vertices"):
        accounting.euler_signature(ambient, -1)


@pytest.mark.parametrize("name", _paper.BUILTINS)
def test_homeomorphism_type(name: str):
    euler, signature = expected.EULER_SIGNATURE[name]
    homeomorphism = accounting.homeomorphism_type(euler, signature, True)
    assert homeomorphism.parity == "odd"
    assert homeomorphism.b_plus == 1
    assert homeomorphism.b2 == euler - 2
    assert homeomorphism.standard == expected.HOMEOMORPHISM[name]
    assert homeomorphism.m == -signature + 1


@pytest.mark.parametrize(
    "euler, signature, parity, standard",
    (
        (18, -16, "undetermined", None),
        (7, -1, "odd", None),
        (3, 1, "odd", "CP2#0-CP2"),
        (4, 0, "undetermined", None),
    ),
)
def test_homeomorphism_candidate(euler, signature, parity, standard):
    homeomorphism = accounting.homeomorphism_candidate(euler, signature)
    assert homeomorphism.parity == parity
    assert homeomorphism.standard == standard
    if standard is None:
        assert homeomorphism.m is None


def test_homeomorphism_errors():
    with pytest.raises(ValueError, match="different parities"):
        accounting.homeomorphism_candidate(11, -6)
    for simply_connected in (False, None):
        with pytest.raises(accounting.UnclassifiableError):
            accounting.homeomorphism_type(11, -7, simply_connected)


def test_simple_connectivity():
    ambient = AmbientManifold(16)
    unknown = accounting.simple_connectivity(ambient, None)
    assert not unknown.simply_connected
    assert "isn't certified" in unknown.steps[-1]
    triviality = _paper.report(_paper.B4).triviality
    known = accounting.simple_connectivity(ambient, triviality)
    assert known.simply_connected
    assert f"{len(triviality.deductions)} replayed deductions" in known.steps[2]
    assert known.steps[-1].startswith("pi1(X) = ")


def test_check_blowdown_admissible():
    result = _paper.report(_paper.B4).plumbing
    accounting.check_blowdown_admissible(result.plumbing, result.invariant)
    not_qhs = SeifertInvariant(central=1, pairs=((2, 1), (2, 1)))
    with pytest.raises(accounting.InadmissibleBlowdownError, match="homology sphere"):
        accounting.check_blowdown_admissible(result.plumbing, not_qhs)
    lines = extract_plumbing(define_configuration([("L", 1), ("M", 1)], []), ["L"])
    with pytest.raises(accounting.InadmissibleBlowdownError, match="definite"):
        accounting.check_blowdown_admissible(lines, result.invariant)
