"""
Exact arithmetic in the degree 8 number field Q(i, sqrt2, sqrt3).

An element is stored as 8 rational coordinates over the basis
``{1, i} x {1, sqrt2} x {1, sqrt3}``. Coordinate ``k`` multiplies
``i^(k & 1) * sqrt2^((k >> 1) & 1) * sqrt3^((k >> 2) & 1)``.
"""

from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import re
from typing import Literal, Sequence, Union

from blowdown.kernel.linalg import Rational, as_rational_matrix, invert


DEGREE = 8

_FACTOR_BITS = {"i": 1, "sqrt2": 2, "sqrt3": 4}
_COEFFICIENT_PATTERN = re.compile(r"^\d+(?:/\d+)?$")


@lru_cache(maxsize=None)
def _basis_product(left: int, right: int) -> tuple[int, int]:
    """
    Returns ``(scalar, index)`` with ``basis[left] * basis[right] = scalar *
    basis[index]``.
    """
    scalar = 1
    if left & right & 1:
        scalar *= -1  # i^2
    if left & right & 2:
        scalar *= 2
    if left & right & 4:
        scalar *= 3
    return scalar, left ^ right


@dataclass(frozen=True)
class FieldElement:
    """
    An element of Q(i, sqrt2, sqrt3).

    Parameters
    ----------
    coordinates : tuple[Rational, ...]
        8 rational coordinates. See the module docstring for the basis order
    """

    coordinates: tuple[Rational, ...] = (Fraction(0),) * DEGREE

    def __post_init__(self):
        if len(self.coordinates) != DEGREE:
            raise ValueError(
                f"Expected {DEGREE} coordinates, got {len(self.coordinates)}."
            )
        coordinates = tuple(Fraction(coordinate) for coordinate in self.coordinates)
        object.__setattr__(self, "coordinates", coordinates)

    @classmethod
    def rational(cls, value: int | Fraction) -> FieldElement:
        return cls((Fraction(value),) + (Fraction(0),) * (DEGREE - 1))

    @classmethod
    def basis(cls, index: int, scalar: int | Fraction = 1) -> FieldElement:
        coordinates = [Fraction(0)] * DEGREE
        coordinates[index] = Fraction(scalar)
        return cls(tuple(coordinates))

    def __bool__(self) -> bool:
        return any(self.coordinates)

    def __add__(self, other: FieldElement | int | Fraction) -> FieldElement:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(
            tuple(x + y for x, y in zip(self.coordinates, other.coordinates))
        )

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        return FieldElement(tuple(-x for x in self.coordinates))

    def __sub__(self, other: FieldElement | int | Fraction) -> FieldElement:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int | Fraction) -> FieldElement:
        return (-self) + other

    def __mul__(self, other: FieldElement | int | Fraction) -> FieldElement:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        product = [Fraction(0)] * DEGREE
        for j, x in enumerate(self.coordinates):
            if not x:
                continue
            for k, y in enumerate(other.coordinates):
                if y:
                    scalar, index = _basis_product(j, k)
                    product[index] += scalar * x * y
        return FieldElement(tuple(product))

    __rmul__ = __mul__

    def __truediv__(self, other: FieldElement | int | Fraction) -> FieldElement:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, exponent: int) -> FieldElement:
        if exponent < 0:
            return self.inverse() ** -exponent
        result = ONE
        for _ in range(exponent):
            result = result * self
        return result

    def multiplication_matrix(self):
        """
        8x8 rational matrix of ``y -> self * y`` in the coordinate basis.
        """
        columns = [(self * FieldElement.basis(k)).coordinates for k in range(DEGREE)]
        return as_rational_matrix(
            [[columns[k][j] for k in range(DEGREE)] for j in range(DEGREE)]
        )

    def inverse(self) -> FieldElement:
        """
        Solves ``self * y = 1`` as an 8x8 linear system.

        Raises
        ------
        ZeroDivisionError
            if `self` is zero
        """
        if not self:
            raise ZeroDivisionError("Cannot invert 0 in Q(i, sqrt2, sqrt3).")
        inverse_matrix = invert(self.multiplication_matrix())
        return FieldElement(tuple(inverse_matrix[:, 0]))

    def __str__(self) -> str:
        pieces = []
        for index, coordinate in enumerate(self.coordinates):
            if not coordinate:
                continue
            factors = [name for name, bit in _FACTOR_BITS.items() if index & bit]
            magnitude = abs(coordinate)
            if factors and magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(magnitude)] + factors)
            sign = "-" if coordinate < 0 else "+"
            if pieces:
                pieces.append(f"{sign} {body}")
            else:
                pieces.append(f"-{body}" if sign == "-" else body)
        return " ".join(pieces) if pieces else "0"


def _coerce(value) -> FieldElement:
    if isinstance(value, FieldElement):
        return value
    if isinstance(value, (int, Fraction)):
        return FieldElement.rational(value)
    return NotImplemented


ZERO = FieldElement()
ONE = FieldElement.rational(1)
I = FieldElement.basis(_FACTOR_BITS["i"])
SQRT2 = FieldElement.basis(_FACTOR_BITS["sqrt2"])
SQRT3 = FieldElement.basis(_FACTOR_BITS["sqrt3"])


def fe_arith(
    x: FieldElement,
    y: FieldElement | None = None,
    op: Literal["add", "mul", "inv"] = "add",
) -> FieldElement:
    """
    Exact field arithmetic: ``x + y``, ``x * y``, or ``1 / x``.

    Raises
    ------
    ZeroDivisionError
        if ``op="inv"`` and `x` is zero
    ValueError
        if `op` is unknown, or `y` is missing for a binary operation
    """
    if op == "inv":
        return x.inverse()
    if y is None:
        raise ValueError(f"op={op!r} needs a second operand.")
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    raise ValueError(f"op must be one of 'add', 'mul', 'inv'. Got {op!r}.")


########################################################################################
####################################### Parsing ########################################
########################################################################################


def parse_field_element(text: Union[str, int]) -> FieldElement:
    """
    Parses a sum of terms like ``"-1/2*sqrt2*i"`` or ``"-2 - sqrt3"``.

    Each term is an optional non-negative rational coefficient followed by factors from
    ``i``, ``sqrt2``, ``sqrt3`` joined by ``*``. Terms are joined by ``+`` or ``-``.
    Parentheses aren't supported.

    Raises
    ------
    ValueError
        if a term can't be parsed
    """
    if isinstance(text, int):
        return FieldElement.rational(text)
    source = text.replace(" ", "")
    signed_terms = re.findall(r"[+-]?[^+-]+", source)
    if not source or "".join(signed_terms) != source:
        raise ValueError(f"Could not parse field element {text!r}.")
    total = ZERO
    for signed_term in signed_terms:
        sign = -1 if signed_term.startswith("-") else 1
        parts = signed_term.lstrip("+-").split("*")
        coefficient = Fraction(1)
        if _COEFFICIENT_PATTERN.match(parts[0]):
            coefficient = Fraction(parts.pop(0))
        index = 0
        for factor in parts:
            if factor not in _FACTOR_BITS:
                raise ValueError(
                    f"Could not parse term {signed_term!r} of {text!r}. Factors must "
                    f"be one of {list(_FACTOR_BITS)}."
                )
            if index & _FACTOR_BITS[factor]:
                raise ValueError(
                    f"Factor {factor!r} repeats in term {signed_term!r}. Simplify it."
                )
            index |= _FACTOR_BITS[factor]
        total = total + FieldElement.basis(index, sign * coefficient)
    return total


def parse_field_elements(texts: Sequence[Union[str, int]]) -> tuple[FieldElement, ...]:
    return tuple(parse_field_element(text) for text in texts)
