"""
Shared input checks. These check conditions that would cause silent, difficult-to-debug,
or mathematically wrong results.

For example:
    - inputting an unordered iterable of plumbing vertices makes the intersection matrix
      and every restriction vector meaningless, because row i must mean sphere i
    - inputting a non-square or non-symmetric matrix to a definiteness check returns an
      answer about a quadratic form that doesn't exist
    - inputting duplicate curve names makes later blow-up steps ambiguous.
"""

from __future__ import annotations
from collections import Counter
from typing import Sequence

import numpy as np


def _is_reversible(object) -> bool:
    # Returns True for:
    # - list, tuple, dict keys, dict values
    # - numpy array
    # - str (but other places in this package filter those out before getting here)
    # Returns False for:
    # - set
    try:
        reversed(object)  # often a generator, so checking this is often free
    except TypeError:
        return False
    else:
        return True


def ordered(object: Sequence, variable_name: str):
    """
    Raises a `TypeError` is `object` is not a sequence.
    """
    # Just want [x for x in object] to be meaningful and deterministic
    if not _is_reversible(object):
        raise TypeError(
            f"{variable_name} must be an ordered collection. Consider converting it to "
            "a list or tuple."
        )


def nonempty(object: Sequence, variable_name: str):
    """
    Raises a `ValueError` if `object` is empty.
    """
    if len(object) == 0:
        raise ValueError(f"{variable_name} must be non-empty.")


def nonempty_and_ordered(object: Sequence, variable_name: str):
    """
    Raises an error if `object` is not nonempty and ordered.
    """
    nonempty(object, variable_name)
    ordered(object, variable_name)


def unique_names(names: Sequence[str], variable_name: str):
    """
    Raises a `ValueError` if a name appears more than once in `names`.
    """
    ordered(names, variable_name)
    duplicates = sorted(name for name, count in Counter(names).items() if count > 1)
    if duplicates:
        raise ValueError(f"{variable_name} contains duplicate names: {duplicates}.")


def square(array: np.ndarray, variable_name: str):
    """
    Raises a `ValueError` if `array` is not a 2-D square array.
    """
    shape = np.shape(array)
    if len(shape) != 2 or shape[0] != shape[1]:
        raise ValueError(f"{variable_name} must be square. Got shape {shape}.")


def symmetric(array: np.ndarray, variable_name: str):
    """
    Raises a `ValueError` if `array` is not square and equal to its transpose.
    """
    square(array, variable_name)
    if not np.array_equal(array, np.transpose(array)):
        raise ValueError(f"{variable_name} must be symmetric.")
