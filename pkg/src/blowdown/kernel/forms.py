"""
Exact linear forms in the symbols ``a, b1, b2, ...``.

``a`` is the symplectic area of a line and ``bk`` is the size of the k'th symplectic
blow-up, so every class and product in the symplectic computation is a
:class:`LinearForm`.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from fractions import Fraction
import re
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from blowdown.kernel.linalg import MatrixLike, Rational, as_rational_matrix


_SYMBOL_PATTERN = re.compile(r"^(a|b([1-9][0-9]*))$")

Scalar = Union[int, Fraction]


class UnknownSymbolError(ValueError):
    """
    A symbol outside the family ``a, b1, b2, ...`` was used.
    """


class UnboundSymbolError(LookupError):
    """
    A linear form was evaluated without a value for one of its symbols.
    """


def symbol_key(symbol: str) -> tuple[int, int]:
    """
    Sort key putting ``a`` first and then ``b1, b2, ...`` numerically.
    """
    match = _SYMBOL_PATTERN.match(symbol)
    if match is None:
        raise UnknownSymbolError(
            f"{symbol!r} is not a symbol. Expected 'a' or 'b<k>' with k >= 1."
        )
    return (0, 0) if match.group(2) is None else (1, int(match.group(2)))


def b(index: int) -> str:
    """
    Name of the blow-up size symbol for exceptional class `index`.
    """
    return f"b{index}"


@dataclass(frozen=True)
class LinearForm:
    """
    ``constant + sum(coefficient * symbol)`` with exact rational coefficients.

    Zero coefficients are never stored, and `coefficients` is kept in the order ``a,
    b1, b2, ...``, so two equal forms compare and hash equal.
    """

    constant: Rational = Fraction(0)
    coefficients: tuple[tuple[str, Rational], ...] = field(default=())

    def __post_init__(self):
        merged: dict[str, Fraction] = {}
        for symbol, coefficient in self.coefficients:
            symbol_key(symbol)
            merged[symbol] = merged.get(symbol, Fraction(0)) + Fraction(coefficient)
        ordered = tuple(
            (symbol, merged[symbol])
            for symbol in sorted(merged, key=symbol_key)
            if merged[symbol] != 0
        )
        object.__setattr__(self, "constant", Fraction(self.constant))
        object.__setattr__(self, "coefficients", ordered)

    @classmethod
    def symbol(cls, name: str, coefficient: Scalar = 1) -> LinearForm:
        return cls(coefficients=((name, Fraction(coefficient)),))

    @classmethod
    def from_mapping(
        cls, coefficients: Mapping[str, Scalar], constant: Scalar = 0
    ) -> LinearForm:
        return cls(
            constant=Fraction(constant), coefficients=tuple(coefficients.items())
        )

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(symbol for symbol, _ in self.coefficients)

    def coefficient(self, symbol: str) -> Rational:
        symbol_key(symbol)
        return dict(self.coefficients).get(symbol, Fraction(0))

    def is_constant(self) -> bool:
        return not self.coefficients

    ################################### Arithmetic ###################################

    def __add__(self, other: LinearForm | Scalar) -> LinearForm:
        other = _as_form(other)
        if other is NotImplemented:
            return NotImplemented
        return LinearForm(
            constant=self.constant + other.constant,
            coefficients=self.coefficients + other.coefficients,
        )

    __radd__ = __add__  # so that sum() works

    def __neg__(self) -> LinearForm:
        return self * -1

    def __sub__(self, other: LinearForm | Scalar) -> LinearForm:
        other = _as_form(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: LinearForm | Scalar) -> LinearForm:
        return (-self) + other

    def __mul__(self, scalar: Scalar) -> LinearForm:
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return LinearForm(
            constant=self.constant * scalar,
            coefficients=tuple(
                (symbol, coefficient * scalar)
                for symbol, coefficient in self.coefficients
            ),
        )

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> LinearForm:
        return self * (1 / Fraction(scalar))

    ##################################### Display #####################################

    def __str__(self) -> str:
        terms = [(symbol, coefficient) for symbol, coefficient in self.coefficients]
        if self.constant or not terms:
            terms.append(("", self.constant))
        pieces = []
        for position, (symbol, coefficient) in enumerate(terms):
            sign = "-" if coefficient < 0 else "+"
            magnitude = abs(coefficient)
            if symbol and magnitude == 1:
                body = symbol
            elif symbol:
                body = f"{magnitude}*{symbol}"
            else:
                body = str(magnitude)
            if position == 0:
                pieces.append(f"-{body}" if sign == "-" else body)
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)


def _as_form(value) -> LinearForm:
    if isinstance(value, LinearForm):
        return value
    if isinstance(value, (int, Fraction)):
        return LinearForm(constant=Fraction(value))
    return NotImplemented


def lf_eval(form: LinearForm, assignment: Mapping[str, Scalar]) -> Rational:
    """
    Substitute exact values for the symbols of `form`.

    Parameters
    ----------
    form : LinearForm
        form to evaluate
    assignment : Mapping[str, Scalar]
        value for every symbol in `form`. Extra symbols are ignored

    Returns
    -------
    Rational
        the exact value

    Raises
    ------
    UnboundSymbolError
        if `assignment` is missing a symbol of `form`
    """
    missing = [symbol for symbol in form.symbols if symbol not in assignment]
    if missing:
        raise UnboundSymbolError(f"No value assigned to symbols {missing}.")
    return form.constant + sum(
        (
            coefficient * Fraction(assignment[symbol])
            for symbol, coefficient in form.coefficients
        ),
        Fraction(0),
    )


def bilinear(
    left: Sequence[Scalar | LinearForm],
    matrix: MatrixLike,
    right: Sequence[Scalar | LinearForm],
) -> LinearForm:
    """
    Returns ``left^T matrix right``. At most one of `left` or `right` may hold
    non-constant forms, so the result stays linear.
    """
    work = as_rational_matrix(matrix)
    if work.shape != (len(left), len(right)):
        raise ValueError(
            f"Shapes don't line up: {len(left)} x {work.shape} x {len(right)}."
        )
    left_forms = [_as_form(entry) for entry in left]
    right_forms = [_as_form(entry) for entry in right]
    if any(not f.is_constant() for f in left_forms) and any(
        not f.is_constant() for f in right_forms
    ):
        raise ValueError("Both sides are symbolic. The product wouldn't be linear.")
    total = LinearForm()
    for (i, j), entry in np.ndenumerate(work):
        if entry == 0:
            continue
        l, r = left_forms[i], right_forms[j]
        if l.is_constant():
            total = total + r * (l.constant * entry)
        else:
            total = total + l * (r.constant * entry)
    return total


def sum_forms(forms: Iterable[LinearForm]) -> LinearForm:
    return sum(forms, LinearForm())
