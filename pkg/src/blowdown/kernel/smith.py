"""
Smith normal form of integer matrices, and the finite abelian groups they present
"""

from __future__ import annotations
from dataclasses import dataclass
from functools import reduce
from math import gcd, prod

from blowdown.kernel.linalg import IntegerMatrix, MatrixLike, as_integer_matrix


@dataclass(frozen=True)
class SmithDecomposition:
    """
    ``left @ matrix @ right == diag(diagonal)``, where `left` and `right` are unimodular
    and ``diagonal[i]`` divides ``diagonal[i + 1]``.

    Parameters
    ----------
    diagonal : tuple[int, ...]
        non-negative diagonal entries, ``min(rows, cols)`` of them, zeros last
    left : IntegerMatrix
        unimodular row transform U
    right : IntegerMatrix
        unimodular column transform V
    shape : tuple[int, int]
        shape of the decomposed matrix
    """

    diagonal: tuple[int, ...]
    left: IntegerMatrix
    right: IntegerMatrix
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return sum(1 for entry in self.diagonal if entry != 0)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """
        Diagonal entries which contribute torsion, i.e., those not equal to 0 or 1.
        """
        return tuple(entry for entry in self.diagonal if entry not in (0, 1))

    def diagonal_matrix(self) -> IntegerMatrix:
        rows, cols = self.shape
        return as_integer_matrix(
            [
                [self.diagonal[i] if i == j else 0 for j in range(cols)]
                for i in range(rows)
            ]
        )


@dataclass(frozen=True)
class AbelianGroup:
    """
    Finitely generated abelian group ``Z^free_rank + Z/d_1 + ... + Z/d_k``.
    """

    invariant_factors: tuple[int, ...]
    free_rank: int = 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        """
        Number of elements, or `None` if the group is infinite.
        """
        return prod(self.invariant_factors) if self.is_finite else None

    @property
    def is_trivial(self) -> bool:
        return self.is_finite and not self.invariant_factors

    def __str__(self) -> str:
        summands = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(summands) if summands else "0"


########################################################################################
################################# Elementary operations ################################
########################################################################################


def _identity(size: int) -> IntegerMatrix:
    return as_integer_matrix([[int(i == j) for j in range(size)] for i in range(size)])


def _swap_rows(work: IntegerMatrix, left: IntegerMatrix, i: int, j: int):
    work[[i, j]] = work[[j, i]]
    left[[i, j]] = left[[j, i]]


def _swap_cols(work: IntegerMatrix, right: IntegerMatrix, i: int, j: int):
    work[:, [i, j]] = work[:, [j, i]]
    right[:, [i, j]] = right[:, [j, i]]


def _add_row(
    work: IntegerMatrix, left: IntegerMatrix, target: int, source: int, k: int
):
    # row[target] += k * row[source]
    work[target, :] += k * work[source, :]
    left[target, :] += k * left[source, :]


def _add_col(
    work: IntegerMatrix, right: IntegerMatrix, target: int, source: int, k: int
):
    work[:, target] += k * work[:, source]
    right[:, target] += k * right[:, source]


def _reduce_at(work: IntegerMatrix, left: IntegerMatrix, right: IntegerMatrix, t: int):
    """
    Makes row and column `t` zero off the diagonal, and makes ``work[t, t]`` divide
    every entry of the trailing submatrix. Each pass either finishes or strictly
    decreases ``|work[t, t]|``, so this terminates.
    """
    rows, cols = work.shape
    while True:
        changed = False
        for i in range(t + 1, rows):
            if work[i, t] != 0:
                _add_row(work, left, i, t, -(work[i, t] // work[t, t]))
                if work[i, t] != 0:  # remainder is a smaller pivot
                    _swap_rows(work, left, t, i)
                    changed = True
        for j in range(t + 1, cols):
            if work[t, j] != 0:
                _add_col(work, right, j, t, -(work[t, j] // work[t, t]))
                if work[t, j] != 0:
                    _swap_cols(work, right, t, j)
                    changed = True
        if changed:
            continue
        offender = next(
            (
                i
                for i in range(t + 1, rows)
                for j in range(t + 1, cols)
                if work[i, j] % work[t, t] != 0
            ),
            None,
        )
        if offender is None:
            return
        # Pull the non-divisible row into row t. The next pass shrinks the pivot
        _add_row(work, left, t, offender, 1)


########################################################################################
###################################### Public API ######################################
########################################################################################


def smith_normal_form(matrix: MatrixLike) -> SmithDecomposition:
    """
    Smith normal form of an integer matrix.

    Parameters
    ----------
    matrix : MatrixLike
        integer matrix of any shape

    Returns
    -------
    SmithDecomposition
        diagonal entries ``d_1 | d_2 | ...`` and unimodular transforms U, V with
        ``U @ matrix @ V == diag(d)``

    Example
    -------
    The diagonal of an already-diagonal matrix whose entries divide each other is left
    alone::

        from blowdown.kernel.smith import smith_normal_form

        assert smith_normal_form([[2, 0], [0, 4]]).diagonal == (2, 4)
    """
    work = as_integer_matrix(matrix)
    rows, cols = work.shape
    left = _identity(rows)
    right = _identity(cols)
    for t in range(min(rows, cols)):
        candidates = [
            (abs(work[i, j]), i, j)
            for i in range(t, rows)
            for j in range(t, cols)
            if work[i, j] != 0
        ]
        if not candidates:
            break
        _, i, j = min(candidates)
        _swap_rows(work, left, t, i)
        _swap_cols(work, right, t, j)
        _reduce_at(work, left, right, t)
        if work[t, t] < 0:
            work[t, :] *= -1
            left[t, :] *= -1
    diagonal = tuple(int(work[k, k]) for k in range(min(rows, cols)))
    return SmithDecomposition(
        diagonal=diagonal, left=left, right=right, shape=(rows, cols)
    )


def cokernel(matrix: MatrixLike) -> AbelianGroup:
    """
    The abelian group presented by the relation matrix `matrix`: generators index the
    columns, each row is a relation.
    """
    decomposition = smith_normal_form(matrix)
    _, cols = decomposition.shape
    return AbelianGroup(
        invariant_factors=decomposition.invariant_factors,
        free_rank=cols - decomposition.rank,
    )


def gcd_all(values) -> int:
    """
    gcd of all `values`, with ``gcd() = 0``.
    """
    return reduce(gcd, (abs(value) for value in values), 0)
