"""
Unit tests `blowdown.surgery.symplectic`.
"""

from __future__ import annotations
from fractions import Fraction
import os
import sys

import pytest

from blowdown.blowup.homology import HomologyClass
from blowdown.kernel.forms import b
from blowdown.plumbing.graph import PlumbingGraph
from blowdown.scenario import expected
from blowdown.surgery import symplectic
from blowdown.surgery.accounting import AmbientManifold, homeomorphism_candidate

# sys hack to import from parent
sys.path.insert(1, os.path.join(sys.path[0], ".."))
import _paper


def _plumbing(name: str) -> PlumbingGraph:
    return _paper.report(name).plumbing.plumbing


def test_symplectic_class_form():
    omega = symplectic.SymplecticClassForm(2)
    assert str(omega) == "a h - b1 e1 - b2 e2"
    assert omega.pairing(HomologyClass.parse("2h - e1")) == expected.form("2a - b1")
    with pytest.raises(ValueError, match="only 2 blow-ups"):
        omega.pairing(HomologyClass.parse("h - e3"))
    with pytest.raises(ValueError, match=">= 0"):
        symplectic.SymplecticClassForm(-1)


@pytest.mark.parametrize("name", _paper.BUILTINS)
def test_restrict(name: str):
    num_blowups = expected.NUM_BLOWUPS[name]
    plumbing = _plumbing(name)
    canonical = symplectic.restrict(symplectic.canonical_form(num_blowups), plumbing)
    assert canonical == expected.CANONICAL_RESTRICTION[name]
    omega = symplectic.restrict(symplectic.SymplecticClassForm(num_blowups), plumbing)
    assert omega == tuple(
        expected.form(text) for text in expected.SYMPLECTIC_RESTRICTION[name]
    )


def test_standard_product():
    product = symplectic.standard_product(AmbientManifold(2))
    assert product == expected.form("-3a + b1 + b2")


@pytest.mark.parametrize("name", _paper.BUILTINS)
def test_blowdown_product(name: str):
    num_blowups = expected.NUM_BLOWUPS[name]
    product = symplectic.blowdown_product(_plumbing(name), AmbientManifold(num_blowups))
    symbols = ["a"] + [b(index) for index in range(1, num_blowups + 1)]
    assert product.constant == 0
    assert set(product.symbols) <= set(symbols)
    coefficients = tuple(product.coefficient(symbol) for symbol in symbols)
    assert coefficients == expected.FINAL_COEFFICIENTS[name]


def test_blowdown_product_corrected_coefficient():
    num_blowups = expected.NUM_BLOWUPS[_paper.C4]
    product = symplectic.blowdown_product(
        _plumbing(_paper.C4), AmbientManifold(num_blowups)
    )
    assert product.coefficient("b10") == Fraction(-3, 4)
    # recompute from the published inverse, restrictions and classes alone
    inverse = [
        [expected.N_INVERSE_SCALE * entry for entry in row]
        for row in expected.N_INVERSE_INTEGERS
    ]
    canonical = expected.CANONICAL_RESTRICTION[_paper.C4]
    omega = [
        expected.form(text).coefficient("b10")
        for text in expected.SYMPLECTIC_RESTRICTION[_paper.C4]
    ]
    correction = sum(
        canonical[i] * inverse[i][j] * omega[j] for i in range(8) for j in range(8)
    )
    assert 1 - correction == Fraction(-3, 4)


def test_published_coefficients_differ_only_where_corrected():
    for name, published in expected.PUBLISHED_FINAL_COEFFICIENTS.items():
        corrections = expected.CORRECTIONS.get(name, {})
        final = expected.FINAL_COEFFICIENTS[name]
        assert len(final) == expected.NUM_BLOWUPS[name] + 1
        differ = {
            index: (left, right)
            for index, (left, right) in enumerate(zip(published, final))
            if left != right
        }
        assert differ == corrections
    assert expected.CORRECTIONS[_paper.C4][10][0] == Fraction(-67, 96)


def test_blowdown_product_empty():
    ambient = AmbientManifold(3)
    empty = PlumbingGraph(vertices=(), edges=())
    assert symplectic.blowdown_product(empty, ambient) == (
        symplectic.standard_product(ambient)
    )


@pytest.mark.parametrize("name", _paper.BUILTINS)
def test_exoticness_verdict(name: str):
    num_blowups = expected.NUM_BLOWUPS[name]
    product = symplectic.blowdown_product(_plumbing(name), AmbientManifold(num_blowups))
    homeomorphism = homeomorphism_candidate(*expected.EULER_SIGNATURE[name])
    verdict = symplectic.exoticness_verdict(product, homeomorphism, num_blowups)
    assert verdict.exotic
    assert verdict.label == expected.VERDICT[name]
    assert verdict.standard == expected.HOMEOMORPHISM[name]
    coefficients = expected.FINAL_COEFFICIENTS[name]
    assert verdict.a_coefficient == coefficients[0]
    size = Fraction(1, 100 * num_blowups)
    assert verdict.witness_value == coefficients[0] + size * sum(coefficients[1:])
    assert verdict.witness[0] == ("a", 1)
    assert len(verdict.witness) == num_blowups + 1


def test_exoticness_verdict_inferred_size():
    homeomorphism = homeomorphism_candidate(11, -7)
    verdict = symplectic.exoticness_verdict(expected.form("a - b3"), homeomorphism)
    assert [symbol for symbol, _ in verdict.witness] == ["a", "b1", "b2", "b3"]
    assert verdict.witness_value == Fraction(1) - Fraction(1, 300)


def test_exoticness_verdict_inconclusive():
    homeomorphism = homeomorphism_candidate(11, -7)
    verdict = symplectic.exoticness_verdict(expected.form("-a + b1"), homeomorphism)
    assert not verdict.exotic
    assert verdict.label == "inconclusive"


@pytest.mark.parametrize(
    "euler, signature",
    ((15, -11), (18, -16), (4, 0)),
)
def test_exoticness_verdict_out_of_range(euler: int, signature: int):
    homeomorphism = homeomorphism_candidate(euler, signature)
    with pytest.raises(symplectic.OutOfLemmaRangeError, match="2 <= m <= 9"):
        symplectic.exoticness_verdict(expected.form("a"), homeomorphism)


def test_exoticness_verdict_bad_scale():
    homeomorphism = homeomorphism_candidate(11, -7)
    with pytest.raises(ValueError, match="witness_scale"):
        symplectic.exoticness_verdict(
            expected.form("a"), homeomorphism, witness_scale=0
        )


########################################################################################
####################################### Sign lemma #####################################
########################################################################################


def test_sign_lemma_sharpness():
    a0, *others = expected.SHARPNESS_VECTOR
    assert a0**2 > sum(ai**2 for ai in others)
    assert symplectic.sign_lemma_value(a0, others) == expected.SHARPNESS_VALUE


@pytest.mark.parametrize("m", expected.SIGN_LEMMA_RANGE)
def test_sign_lemma_property(m: int):
    report = symplectic.sign_lemma_property(m, samples=500, seed=m, batch_size=256)
    assert report.holds
    assert report.counterexample is None
    assert report.accepted == 500
    assert report.rejected >= 0
    assert report.max_value < 0


def test_sign_lemma_property_deterministic():
    first = symplectic.sign_lemma_property(5, samples=300, seed=7)
    second = symplectic.sign_lemma_property(5, samples=300, seed=7)
    assert first == second
    other = symplectic.sign_lemma_property(5, samples=300, seed=8)
    assert other.max_value != first.max_value or other.rejected != first.rejected


def test_sign_lemma_property_edge_cases():
    report = symplectic.sign_lemma_property(3, samples=0)
    assert (report.accepted, report.max_value, report.holds) == (0, None, True)
    with pytest.raises(ValueError, match="m must be"):
        symplectic.sign_lemma_property(-1)
    with pytest.raises(ValueError, match="samples must be"):
        symplectic.sign_lemma_property(3, samples=-1)
