"""
Unit tests `blowdown.plumbing.presentation`.
"""

from __future__ import annotations
import os
import sys

import pytest

from blowdown.kernel.smith import AbelianGroup
from blowdown.plumbing import presentation as pres
from blowdown.plumbing.seifert import SeifertInvariant
from blowdown.scenario import expected

# sys hack to import from parent
sys.path.insert(1, os.path.join(sys.path[0], ".."))
import _paper


@pytest.mark.parametrize(
    "syllables, reduced",
    (
        ([], ()),
        ([("a", 1), ("a", -1), ("b", 1)], (("b", 1),)),
        ([("a", 1), ("b", 1), ("b", -1), ("a", 1)], (("a", 2),)),
        ([("a", 0), ("b", 2)], (("b", 2),)),
    ),
)
def test_reduce_word(syllables, reduced):
    assert pres.reduce_word(syllables) == reduced


@pytest.mark.parametrize(
    "word, reduced",
    (
        ([("a", 1), ("b", 2), ("a", -1)], (("b", 2),)),
        ([("a", 2), ("b", 1), ("a", 1)], (("a", 3), ("b", 1))),
        ([("a", 1), ("b", 1)], (("a", 1), ("b", 1))),
    ),
)
def test_cyclically_reduce(word, reduced):
    assert pres.cyclically_reduce(word) == reduced


def test_word_operations():
    word = (("a", 1), ("b", 1))
    assert pres.invert_word(word) == (("b", -1), ("a", -1))
    assert pres.power_word(word, 2) == (("a", 1), ("b", 1), ("a", 1), ("b", 1))
    assert pres.power_word(word, -1) == pres.invert_word(word)
    assert pres.power_word(word, 0) == ()
    assert pres.format_word(()) == "1"
    assert pres.format_word((("q1", 2), ("h", 1))) == "q1^2 h"
    assert pres.exponent_sums((("a", 2), ("b", 1), ("a", -3))) == {"a": -1, "b": 1}


@pytest.fixture(scope="module")
def invariant() -> SeifertInvariant:
    return _paper.report(_paper.B4).plumbing.invariant


def test_fundamental_group(invariant: SeifertInvariant):
    group = pres.fundamental_group(invariant)
    assert group.generators == ("q0", "q1", "q2", "q3", "q4", "h")
    # product, 5 commutators, central, 4 legs
    assert len(group.relators) == 11
    assert group.relators[0] == tuple((g, 1) for g in ("q0", "q1", "q2", "q3", "q4"))
    assert (("q0", 1), ("h", -3)) in group.relators
    assert (("q4", 25), ("h", 18)) in group.relators
    assert group.leaf_generators == (("q1", "u4"), ("q2", "u1"), ("q3", "u3"))
    assert group.generator_of_leaf("u3") == "q3"
    with pytest.raises(KeyError, match="u8"):
        group.generator_of_leaf("u8")
    assert str(group).startswith("< q0, q1, q2, q3, q4, h | q0 q1 q2 q3 q4, ")


def test_printed_central_relator(invariant: SeifertInvariant):
    assert pres.printed_central_relator(invariant) == (("q0", 1), ("h", 3))


@pytest.mark.parametrize("name", _paper.BUILTINS)
def test_abelianization(name: str):
    group = pres.fundamental_group(_paper.report(name).plumbing.invariant)
    assert pres.abelianization(group).order == expected.DETERMINANTS[name]
    assert pres.abelianization(group, trivial=group.generators).is_trivial
    matrix = pres.relation_matrix(group)
    assert len(matrix) == len(group.relators)
    assert all(len(row) == len(group.generators) for row in matrix)


def test_abelianization_free():
    group = pres.GroupPresentation(generators=("x", "y"), relators=())
    assert pres.abelianization(group) == AbelianGroup(invariant_factors=(), free_rank=2)
    cyclic = pres.abelianization(group, substitutions={"y": (("x", 1),)})
    assert cyclic.free_rank == 1


def test_bad_presentation():
    with pytest.raises(ValueError, match="isn't a generator"):
        pres.GroupPresentation(generators=("x",), relators=((("y", 1),),))
    with pytest.raises(ValueError, match="zero exponents"):
        pres.GroupPresentation(generators=("x",), relators=((("x", 0),),))
