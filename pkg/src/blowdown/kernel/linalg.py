"""
Exact dense linear algebra over the rationals.

Matrices are numpy arrays with ``dtype=object`` whose entries are
:class:`fractions.Fraction` (for :data:`RationalMatrix`) or Python ``int`` (for
:data:`IntegerMatrix`). Python's arbitrary-precision integers back both, so nothing is
ever rounded or overflows. There is no floating-point arithmetic in this module.
"""

from __future__ import annotations
from fractions import Fraction
from typing import Sequence, Union

import numpy as np
import numpy.typing as npt

from blowdown.utils import _check


Rational = Fraction
"""
Exact rational scalar. Always reduced, with a positive denominator.
"""

RationalMatrix = npt.NDArray[np.object_]
"""
2-D numpy array of :class:`fractions.Fraction`.
"""

IntegerMatrix = npt.NDArray[np.object_]
"""
2-D numpy array of Python ``int``.
"""

MatrixLike = Union[np.ndarray, Sequence[Sequence[Union[int, Fraction]]]]


class DimensionError(ValueError):
    """
    The matrix doesn't have the shape that the operation requires.
    """


class AsymmetricMatrixError(DimensionError):
    """
    The matrix was expected to be symmetric, e.g., because it's a quadratic form.
    """


class SingularMatrixError(ZeroDivisionError):
    """
    Elimination found no nonzero pivot in `column`, so the matrix is singular.
    """

    def __init__(self, column: int, size: int):
        self.column = column
        self.size = size
        super().__init__(
            f"Matrix is singular: no nonzero pivot in column {column} of the "
            f"{size}x{size} matrix at or below the diagonal after eliminating the "
            "previous columns."
        )


########################################################################################
##################################### Construction #####################################
########################################################################################


def as_rational_matrix(entries: MatrixLike) -> RationalMatrix:
    """
    Returns `entries` as a 2-D object array of :class:`fractions.Fraction`. Floats are
    rejected because they'd silently make the computation inexact.
    """
    rows = [list(row) for row in entries]
    if any(isinstance(entry, float) for row in rows for entry in row):
        raise TypeError("Matrix entries must be int or Fraction, not float.")
    if not rows:
        return np.empty((0, 0), dtype=object)
    if len({len(row) for row in rows}) != 1:
        raise DimensionError("Matrix rows have different lengths.")
    matrix = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            matrix[i, j] = Fraction(entry)
    return matrix


def as_integer_matrix(entries: MatrixLike) -> IntegerMatrix:
    """
    Returns `entries` as a 2-D object array of Python ``int``. Non-integral rationals
    raise a `ValueError`.
    """
    rational = as_rational_matrix(entries)
    if any(entry.denominator != 1 for entry in rational.flat):
        raise ValueError("Matrix has non-integral entries.")
    integer = np.empty(rational.shape, dtype=object)
    for index, entry in np.ndenumerate(rational):
        integer[index] = int(entry)
    return integer


def identity(size: int) -> RationalMatrix:
    return as_rational_matrix([[int(i == j) for j in range(size)] for i in range(size)])


def scale(matrix: RationalMatrix, factor: int | Fraction) -> RationalMatrix:
    """
    Returns `factor * matrix`, keeping entries exact.
    """
    return as_rational_matrix([[factor * entry for entry in row] for row in matrix])


########################################################################################
################################ Determinant and inverse ###############################
########################################################################################


def _pivot_row(matrix: RationalMatrix, column: int) -> int | None:
    for row in range(column, matrix.shape[0]):
        if matrix[row, column] != 0:
            return row
    return None


def determinant(matrix: MatrixLike) -> Rational:
    """
    Exact determinant via pivoted Gaussian elimination.

    Parameters
    ----------
    matrix : MatrixLike
        square matrix of integers or rationals

    Returns
    -------
    Rational
        the determinant. The 0x0 matrix has determinant 1 (the empty product)

    Raises
    ------
    DimensionError
        if `matrix` is not square
    """
    work = as_rational_matrix(matrix)
    _check_square(work)
    size = work.shape[0]
    det = Fraction(1)
    for column in range(size):
        pivot = _pivot_row(work, column)
        if pivot is None:
            return Fraction(0)
        if pivot != column:
            work[[column, pivot]] = work[[pivot, column]]
            det = -det
        det *= work[column, column]
        for row in range(column + 1, size):
            factor = work[row, column] / work[column, column]
            if factor:
                work[row, column:] -= factor * work[column, column:]
    return det


def invert(matrix: MatrixLike) -> RationalMatrix:
    """
    Exact inverse via Gauss-Jordan elimination on ``[matrix | I]``.

    Parameters
    ----------
    matrix : MatrixLike
        square, nonsingular matrix of integers or rationals

    Returns
    -------
    RationalMatrix
        the inverse, such that ``matrix @ inverse`` is exactly the identity

    Raises
    ------
    DimensionError
        if `matrix` is not square
    SingularMatrixError
        if `matrix` is singular. The error names the column where no pivot was found
    """
    work = as_rational_matrix(matrix)
    _check_square(work)
    size = work.shape[0]
    augmented = np.hstack((work, identity(size)))

    # Downward elimination: zero the lower triangle and make the diagonal 1
    for column in range(size):
        pivot = _pivot_row(augmented, column)
        if pivot is None:
            raise SingularMatrixError(column, size)
        if pivot != column:
            augmented[[column, pivot]] = augmented[[pivot, column]]
        augmented[column, :] /= augmented[column, column]
        for row in range(column + 1, size):
            if augmented[row, column]:
                augmented[row, :] -= augmented[row, column] * augmented[column, :]

    # Upward elimination: zero the upper triangle
    for column in range(size - 1, 0, -1):
        for row in range(column):
            if augmented[row, column]:
                augmented[row, :] -= augmented[row, column] * augmented[column, :]
    return augmented[:, size:]


def _check_square(matrix: np.ndarray):
    try:
        _check.square(matrix, variable_name="matrix")
    except ValueError as exception:
        raise DimensionError(str(exception)) from exception


########################################################################################
##################################### Definiteness #####################################
########################################################################################


def leading_principal_minors(matrix: MatrixLike) -> list[Rational]:
    """
    Returns the determinants of the top-left k x k submatrices, for k = 1, ..., n.
    """
    work = as_rational_matrix(matrix)
    _check_square(work)
    return [determinant(work[:k, :k]) for k in range(1, work.shape[0] + 1)]


def is_negative_definite(matrix: MatrixLike) -> bool:
    """
    Returns ``True`` iff the symmetric `matrix` is negative definite, i.e., iff its k'th
    leading principal minor has sign ``(-1)^k`` for every k (Sylvester's criterion).

    Raises
    ------
    AsymmetricMatrixError
        if `matrix` is not square and symmetric
    """
    work = as_rational_matrix(matrix)
    try:
        _check.symmetric(work, variable_name="matrix")
    except ValueError as exception:
        raise AsymmetricMatrixError(str(exception)) from exception
    return all(
        (minor < 0) if k % 2 else (minor > 0)
        for k, minor in enumerate(leading_principal_minors(work), start=1)
    )


def quadratic_form(matrix: MatrixLike, vector: Sequence[int | Fraction]) -> Rational:
    """
    Returns ``vector^T matrix vector``.
    """
    work = as_rational_matrix(matrix)
    column = as_rational_matrix([[entry] for entry in vector])
    return (column.T @ work @ column)[0, 0]
