"""
Unit tests `blowdown.kernel.rendering`.
"""

from __future__ import annotations
from fractions import Fraction

import pytest

from blowdown.kernel import rendering


@pytest.mark.parametrize(
    "value, text",
    (
        (Fraction(0), "0"),
        (Fraction(5), "5"),
        (Fraction(45, 8), "5.625"),
        (Fraction(-1, 16), "-0.0625"),
        (Fraction(-17, 24), "-0.708(3)"),
        (Fraction(67, 96), "0.69791(6)"),
        (Fraction(1, 12), "0.08(3)"),
        (Fraction(-19, 6), "-3.1(6)"),
        (Fraction(1, 7), "0.(142857)"),
        (Fraction(-71, 25), "-2.84"),
    ),
)
def test_repeating_decimal(value: Fraction, text: str):
    assert rendering.repeating_decimal(value) == text
    assert rendering.parse_decimal(text) == value


@pytest.mark.parametrize(
    "text, value",
    (
        ("0.25", Fraction(1, 4)),
        (" 3 ", Fraction(3)),
        ("-0.5", Fraction(-1, 2)),
        ("1.", Fraction(1)),
        ("0.(9)", Fraction(1)),
    ),
)
def test_parse_decimal_plain(text: str, value: Fraction):
    assert rendering.parse_decimal(text) == value


@pytest.mark.parametrize("text", ("", "abc", "1.(", "1.2.3", "(3)", "--1"))
def test_parse_decimal_bad(text: str):
    with pytest.raises(ValueError, match="not a decimal"):
        rendering.parse_decimal(text)
