"""
Unit tests `blowdown.kernel.forms`.
"""

from __future__ import annotations
from fractions import Fraction

import pytest

from blowdown.kernel import forms
from blowdown.kernel.forms import LinearForm


@pytest.fixture(scope="module")
def form() -> LinearForm:
    # 2a - b1 + 1/2
    return LinearForm.from_mapping({"b1": -1, "a": 2}, constant=Fraction(1, 2))


def test_symbol_key():
    symbols = ["b10", "a", "b2", "b1"]
    assert sorted(symbols, key=forms.symbol_key) == ["a", "b1", "b2", "b10"]
    for bad in ("c", "b0", "b", "A"):
        with pytest.raises(forms.UnknownSymbolError):
            forms.symbol_key(bad)


def test_normalization():
    left = LinearForm(coefficients=(("b2", 1), ("a", 2), ("b2", -1)))
    assert left == LinearForm.symbol("a", 2)
    assert left.coefficients == (("a", Fraction(2)),)
    assert hash(left) == hash(LinearForm.symbol("a", 2))
    with pytest.raises(forms.UnknownSymbolError):
        LinearForm.symbol("x")


def test_arithmetic(form: LinearForm):
    assert form.coefficient("a") == 2
    assert form.coefficient("b7") == 0
    assert form.symbols == ("a", "b1")
    assert form + form == form * 2
    assert form - form == LinearForm()
    assert (form - form).is_constant()
    assert -form == form * -1
    assert form / 2 == LinearForm.from_mapping(
        {"a": 1, "b1": Fraction(-1, 2)}, constant=Fraction(1, 4)
    )
    assert 1 + form == form + 1
    assert 1 - form == -(form - 1)
    assert sum([form, form, form]) == 3 * form
    assert forms.sum_forms([form, -form]) == LinearForm()


def test_str(form: LinearForm):
    assert str(form) == "2*a - b1 + 1/2"
    assert str(LinearForm()) == "0"
    assert str(LinearForm.symbol("b3", Fraction(-45, 8))) == "-45/8*b3"


def test_lf_eval(form: LinearForm):
    assert forms.lf_eval(form, {"a": 1, "b1": Fraction(1, 100), "b9": 5}) == Fraction(
        2 - Fraction(1, 100) + Fraction(1, 2)
    )
    with pytest.raises(forms.UnboundSymbolError, match="b1"):
        forms.lf_eval(form, {"a": 1})


def test_bilinear():
    a, b1 = LinearForm.symbol("a"), LinearForm.symbol("b1")
    identity = [[1, 0], [0, 1]]
    assert forms.bilinear([1, 2], identity, [a, b1]) == a + 2 * b1
    assert forms.bilinear([a, b1], [[0, Fraction(1, 2)], [0, 0]], [0, 4]) == 2 * a
    with pytest.raises(ValueError, match="Both sides are symbolic"):
        forms.bilinear([a], [[1]], [b1])
    with pytest.raises(ValueError, match="Shapes don't line up"):
        forms.bilinear([1, 2], [[1]], [a])


def test_b():
    assert forms.b(17) == "b17"
