"""
Unit tests `blowdown.kernel.smith`. The oracle is the determinantal divisors, computed
with sympy.
"""

from __future__ import annotations
from itertools import combinations
from math import gcd

import numpy as np
import pytest
import sympy

from blowdown.kernel import linalg, smith
from blowdown.scenario import expected


def _invariant_factors_oracle(matrix: list[list[int]]) -> tuple[int, ...]:
    """
    d_k / d_(k-1), where d_k is the gcd of the k x k minors.
    """
    oracle = sympy.Matrix(matrix)
    divisors = [1]
    for k in range(1, min(oracle.shape) + 1):
        d = 0
        for rows in combinations(range(oracle.rows), k):
            for cols in combinations(range(oracle.cols), k):
                d = gcd(d, abs(int(oracle.extract(list(rows), list(cols)).det())))
        if d == 0:
            break
        divisors.append(d)
    factors = [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]
    return tuple(factor for factor in factors if factor != 1)


@pytest.fixture(scope="module")
def random_matrices() -> list[list[list[int]]]:
    rng = np.random.default_rng(1)
    shapes = [(2, 2), (3, 3), (3, 3), (2, 4), (4, 2), (4, 4)]
    return [rng.integers(-6, 7, size=shape).tolist() for shape in shapes]


def _check_decomposition(matrix, decomposition: smith.SmithDecomposition):
    product = (
        linalg.as_integer_matrix(decomposition.left)
        @ linalg.as_integer_matrix(matrix)
        @ linalg.as_integer_matrix(decomposition.right)
    )
    assert np.array_equal(product, decomposition.diagonal_matrix())
    assert abs(linalg.determinant(decomposition.left)) == 1
    assert abs(linalg.determinant(decomposition.right)) == 1
    nonzero = [entry for entry in decomposition.diagonal if entry]
    for smaller, larger in zip(nonzero, nonzero[1:]):
        assert larger % smaller == 0
    assert all(entry >= 0 for entry in decomposition.diagonal)


def test_smith_normal_form_textbook():
    matrix = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    decomposition = smith.smith_normal_form(matrix)
    assert decomposition.diagonal == (2, 6, 12)
    assert decomposition.invariant_factors == (2, 6, 12)
    assert decomposition.rank == 3
    _check_decomposition(matrix, decomposition)


def test_smith_normal_form_random(random_matrices):
    for matrix in random_matrices:
        decomposition = smith.smith_normal_form(matrix)
        _check_decomposition(matrix, decomposition)
        assert decomposition.invariant_factors == _invariant_factors_oracle(matrix)


@pytest.mark.parametrize(
    "matrix, order", ((expected.M, 1024), (expected.N, 576))
)
def test_cokernel_plumbing_matrices(matrix, order):
    group = smith.cokernel(matrix)
    assert group.is_finite
    assert group.order == order
    _check_decomposition(matrix, smith.smith_normal_form(matrix))


def test_cokernel_free_part():
    group = smith.cokernel([[2, 0, 0], [0, 0, 0]])
    assert group.invariant_factors == (2,)
    assert group.free_rank == 2
    assert group.order is None
    assert str(group) == "Z + Z + Z/2"


def test_abelian_group():
    trivial = smith.AbelianGroup(invariant_factors=())
    assert trivial.is_trivial
    assert trivial.order == 1
    assert str(trivial) == "0"
    cyclic = smith.AbelianGroup(invariant_factors=(576,))
    assert not cyclic.is_trivial
    assert str(cyclic) == "Z/576"


def test_gcd_all():
    assert smith.gcd_all([]) == 0
    assert smith.gcd_all([-4, 6, 10]) == 2
