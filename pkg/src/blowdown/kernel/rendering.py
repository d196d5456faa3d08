"""
Exact decimal rendering of rationals, with the repetend in parentheses
"""

from __future__ import annotations
from fractions import Fraction
import re

from blowdown.kernel.linalg import Rational


_DECIMAL_PATTERN = re.compile(r"^(-?)(\d+)(?:\.(\d*)(?:\((\d+)\))?)?$")


def repeating_decimal(value: Rational) -> str:
    """
    Lossless decimal rendering of `value`.

    Example
    -------
    ::

        from fractions import Fraction
        from blowdown.kernel.rendering import repeating_decimal

        assert repeating_decimal(Fraction(45, 8)) == "5.625"
        assert repeating_decimal(Fraction(-17, 24)) == "-0.708(3)"
        assert repeating_decimal(Fraction(67, 96)) == "0.69791(6)"
    """
    value = Fraction(value)
    sign = "-" if value < 0 else ""
    numerator, denominator = abs(value.numerator), value.denominator
    integer_part, remainder = divmod(numerator, denominator)
    if remainder == 0:
        return f"{sign}{integer_part}"
    digits: list[str] = []
    seen: dict[int, int] = {}  # remainder -> position of the digit it produces
    while remainder and remainder not in seen:
        seen[remainder] = len(digits)
        digit, remainder = divmod(remainder * 10, denominator)
        digits.append(str(digit))
    if remainder == 0:
        return f"{sign}{integer_part}.{''.join(digits)}"
    start = seen[remainder]
    fixed, repetend = "".join(digits[:start]), "".join(digits[start:])
    return f"{sign}{integer_part}.{fixed}({repetend})"


def parse_decimal(text: str) -> Rational:
    """
    Inverse of :func:`repeating_decimal`. Also accepts plain decimals like ``"0.25"``.

    Raises
    ------
    ValueError
        if `text` isn't a decimal, optionally with a parenthesized repetend
    """
    match = _DECIMAL_PATTERN.match(text.strip())
    if match is None:
        raise ValueError(f"{text!r} is not a decimal number.")
    sign, integer_part, fixed, repetend = match.groups()
    fixed = fixed or ""
    value = Fraction(int(integer_part))
    if fixed:
        value += Fraction(int(fixed), 10 ** len(fixed))
    if repetend:
        value += Fraction(
            int(repetend), 10 ** len(fixed) * (10 ** len(repetend) - 1)
        )
    return -value if sign else value
