"""
Second homology of the blown-up plane, ``CP^2 # k (-CP^2)``, in the basis ``h, e1, ...,
ek`` with ``h.h = +1``, ``ei.ei = -1`` and every other pairing zero
"""

from __future__ import annotations
from dataclasses import dataclass, field
import re
from typing import Iterable


_TERM_PATTERN = re.compile(r"([+-]?)(\d*)(h|e([1-9][0-9]*))")


@dataclass(frozen=True)
class HomologyClass:
    """
    ``h_coefficient * h + sum(e_coefficients[i - 1] * ei)``.

    Trailing zero `e_coefficients` are dropped, so a class compares equal however many
    blow-ups have happened since it was created.
    """

    h_coefficient: int = 0
    e_coefficients: tuple[int, ...] = field(default=())

    def __post_init__(self):
        e_coefficients = [int(coefficient) for coefficient in self.e_coefficients]
        while e_coefficients and e_coefficients[-1] == 0:
            e_coefficients.pop()
        object.__setattr__(self, "h_coefficient", int(self.h_coefficient))
        object.__setattr__(self, "e_coefficients", tuple(e_coefficients))

    @classmethod
    def line(cls, degree: int = 1) -> HomologyClass:
        return cls(h_coefficient=degree)

    @classmethod
    def exceptional(cls, index: int) -> HomologyClass:
        if index < 1:
            raise ValueError(f"Exceptional classes are numbered from 1. Got {index}.")
        return cls(e_coefficients=(0,) * (index - 1) + (1,))

    @classmethod
    def parse(cls, text: str) -> HomologyClass:
        """
        Parses classes written like ``"2h - e1 - e2"`` or ``"e9 - e10"``.
        """
        source = text.replace(" ", "")
        terms = list(_TERM_PATTERN.finditer(source))
        if not terms or "".join(term.group(0) for term in terms) != source:
            raise ValueError(f"Could not parse homology class {text!r}.")
        total = cls()
        for term in terms:
            sign, magnitude, _, index = term.groups()
            coefficient = int(magnitude or 1) * (-1 if sign == "-" else 1)
            unit = cls.line() if index is None else cls.exceptional(int(index))
            total = total + unit * coefficient
        return total

    def coefficient(self, index: int) -> int:
        """
        Coefficient of ``e<index>``. Index 0 is the coefficient of ``h``.
        """
        if index == 0:
            return self.h_coefficient
        if index <= len(self.e_coefficients):
            return self.e_coefficients[index - 1]
        return 0

    @property
    def support(self) -> tuple[int, ...]:
        """
        Indices of the exceptional classes with nonzero coefficients.
        """
        return tuple(
            index
            for index, coefficient in enumerate(self.e_coefficients, start=1)
            if coefficient
        )

    def __add__(self, other: HomologyClass) -> HomologyClass:
        if not isinstance(other, HomologyClass):
            return NotImplemented
        size = max(len(self.e_coefficients), len(other.e_coefficients))
        return HomologyClass(
            h_coefficient=self.h_coefficient + other.h_coefficient,
            e_coefficients=tuple(
                self.coefficient(index) + other.coefficient(index)
                for index in range(1, size + 1)
            ),
        )

    def __neg__(self) -> HomologyClass:
        return self * -1

    def __sub__(self, other: HomologyClass) -> HomologyClass:
        if not isinstance(other, HomologyClass):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: int) -> HomologyClass:
        if not isinstance(scalar, int):
            return NotImplemented
        return HomologyClass(
            h_coefficient=scalar * self.h_coefficient,
            e_coefficients=tuple(
                scalar * coefficient for coefficient in self.e_coefficients
            ),
        )

    __rmul__ = __mul__

    def pairing(self, other: HomologyClass) -> int:
        """
        The intersection number of the two classes.
        """
        return self.h_coefficient * other.h_coefficient - sum(
            x * y for x, y in zip(self.e_coefficients, other.e_coefficients)
        )

    @property
    def self_intersection(self) -> int:
        return self.pairing(self)

    def __str__(self) -> str:
        terms = [("h", self.h_coefficient)] + [
            (f"e{index}", coefficient)
            for index, coefficient in enumerate(self.e_coefficients, start=1)
        ]
        pieces = []
        for name, coefficient in terms:
            if not coefficient:
                continue
            magnitude = "" if abs(coefficient) == 1 else str(abs(coefficient))
            if pieces:
                pieces.append(f"{'-' if coefficient < 0 else '+'} {magnitude}{name}")
            else:
                pieces.append(f"{'-' if coefficient < 0 else ''}{magnitude}{name}")
        return " ".join(pieces) if pieces else "0"


def canonical_class(num_blowups: int) -> HomologyClass:
    """
    Poincare dual of the canonical class of ``CP^2 # num_blowups (-CP^2)``: ``-3h + e1 +
    ... + ek``.
    """
    if num_blowups < 0:
        raise ValueError(f"num_blowups must be non-negative. Got {num_blowups}.")
    return HomologyClass(h_coefficient=-3, e_coefficients=(1,) * num_blowups)


def sum_classes(classes: Iterable[HomologyClass]) -> HomologyClass:
    total = HomologyClass()
    for homology_class in classes:
        total = total + homology_class
    return total
