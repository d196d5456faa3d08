"""
Seifert invariants of the boundary of a star-shaped plumbing.

A leg with weights ``-t1, ..., -tm``, read from the center outward, contributes the
exceptional pair ``(alpha, beta)`` with ``alpha / beta = t1 - 1/(t2 - 1/(... - 1/tm))``.
"""

from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd, prod
from typing import Optional, Sequence

from blowdown.kernel.linalg import Rational
from blowdown.kernel.smith import AbelianGroup, cokernel
from blowdown.plumbing.graph import PlumbingGraph, intersection_matrix


class NotStarShapedError(ValueError):
    """
    The plumbing doesn't have exactly one center with simple legs around it.
    """


class UnreducedLegError(ValueError):
    """
    A leg has a sphere with weight >= -1, so it has no negative continued fraction.
    """


########################################################################################
################################ Continued fractions ###################################
########################################################################################


def negative_continued_fraction(weights: Sequence[int]) -> Fraction:
    """
    ``t1 - 1/(t2 - 1/(... - 1/tm))`` where ``ti = -weights[i - 1]``.

    Raises
    ------
    UnreducedLegError
        if a weight is greater than -2
    """
    if not weights:
        raise ValueError("A leg has at least one sphere.")
    for weight in weights:
        if weight > -2:
            raise UnreducedLegError(
                f"Leg weights {list(weights)} must all be <= -2. Got {weight}."
            )
    value = Fraction(-weights[-1])
    for weight in reversed(weights[:-1]):
        value = -weight - 1 / value
    return value


def expand_continued_fraction(alpha: int, beta: int) -> list[int]:
    """
    The leg weights whose negative continued fraction is `alpha` / `beta`. Inverse of
    :func:`negative_continued_fraction`.

    Example
    -------
    ::

        from blowdown.plumbing.seifert import expand_continued_fraction

        assert expand_continued_fraction(25, 18) == [-2, -2, -3, -4]
    """
    if not 0 < beta < alpha:
        raise ValueError(f"Need 0 < beta < alpha. Got alpha={alpha}, beta={beta}.")
    weights = []
    value = Fraction(alpha, beta)
    while True:
        t = ceil(value)
        weights.append(-t)
        if t == value:
            return weights
        value = 1 / (t - value)


########################################################################################
###################################### Invariants ######################################
########################################################################################


@dataclass(frozen=True)
class Leg:
    """
    A simple chain of spheres hanging off the center.

    Parameters
    ----------
    vertices : tuple[str, ...]
        sphere names from the center outward. The last one is the leaf
    weights : tuple[int, ...]
        their weights, in the same order
    """

    vertices: tuple[str, ...]
    weights: tuple[int, ...]

    @property
    def leaf(self) -> str:
        return self.vertices[-1]

    @property
    def pair(self) -> tuple[int, int]:
        """
        ``(alpha, beta)`` from the negative continued fraction of the weights.
        """
        fraction = negative_continued_fraction(self.weights)
        return fraction.numerator, fraction.denominator


@dataclass(frozen=True)
class SeifertInvariant:
    """
    Seifert invariant ``{0; b0; (alpha_1, beta_1), ...}`` of a Seifert fibered space
    over the sphere.

    Parameters
    ----------
    central : int
        ``b0``, minus the weight of the center
    pairs : tuple[tuple[int, int], ...]
        ``(alpha, beta)`` per leg, ``gcd(alpha, beta) = 1``
    legs : tuple[Leg, ...], optional
        the legs the pairs came from, if any
    """

    central: int
    pairs: tuple[tuple[int, int], ...]
    legs: tuple[Leg, ...] = ()

    def __post_init__(self):
        for alpha, beta in self.pairs:
            if alpha < 1 or beta < 1 or gcd(alpha, beta) != 1:
                raise ValueError(
                    f"Exceptional pair ({alpha}, {beta}) must have coprime positive "
                    "entries."
                )
            if alpha > 1 and not beta < alpha:
                raise ValueError(
                    f"Exceptional pair ({alpha}, {beta}) needs beta < alpha."
                )
        if self.legs and len(self.legs) != len(self.pairs):
            raise ValueError("legs and pairs must have the same length.")

    def braces_format(self, central_sign: int = 1) -> str:
        """
        Renders ``{0; (1, b0), (alpha_1, beta_1), ...}``. With ``central_sign=-1`` the
        central pair is ``(1, -b0)``, the convention under which
        :func:`e_invariant` times the product of the alphas is ``|H_1|``.
        """
        if central_sign not in (1, -1):
            raise ValueError(f"central_sign must be 1 or -1. Got {central_sign}.")
        pairs = [(1, central_sign * self.central)] + list(self.pairs)
        return "{0; " + ", ".join(f"({a}, {b})" for a, b in pairs) + "}"

    def __str__(self) -> str:
        return self.braces_format()


def _legs_around(plumbing: PlumbingGraph, center: str) -> list[Leg]:
    graph = plumbing.to_networkx()
    legs = []
    for start in plumbing.neighbors(center):
        path = [start]
        previous, current = center, start
        while True:
            onward = [n for n in graph.neighbors(current) if n != previous]
            if not onward:
                break
            if len(onward) > 1:
                raise NotStarShapedError(
                    f"{current} branches off the leg {path}. Only the center may have "
                    "valence >= 3."
                )
            previous, current = current, onward[0]
            path.append(current)
        legs.append(
            Leg(
                vertices=tuple(path),
                weights=tuple(plumbing.vertex(name).weight for name in path),
            )
        )
    return legs


def _infer_center(plumbing: PlumbingGraph, leg_order: Optional[Sequence[str]]) -> str:
    centers = [name for name in plumbing.names if plumbing.valence(name) >= 3]
    if len(centers) > 1:
        raise NotStarShapedError(
            f"Expected at most one sphere with valence >= 3, got {centers}. Pass "
            "center= to pick one."
        )
    if centers:
        return centers[0]
    if not len(plumbing):
        raise NotStarShapedError("An empty plumbing has no center.")
    # a chain, or a single sphere
    ends = [name for name in plumbing.names if plumbing.valence(name) <= 1]
    leaves = set(leg_order or ())
    if not leaves:
        return ends[0]
    if len(leaves) == 1 and leaves < set(ends):
        return next(end for end in ends if end not in leaves)
    interior = [name for name in plumbing.names if plumbing.valence(name) == 2]
    if leaves == set(ends) and len(interior) == 1:
        return interior[0]
    raise NotStarShapedError(
        f"Can't place the center of the chain {list(plumbing.names)} from the leaves "
        f"{list(leg_order)}. Pass center= to pick one."
    )


def _default_leg_key(leg: Leg) -> tuple[int, tuple[int, int], str]:
    return (len(leg.vertices) > 1, leg.pair, leg.leaf)


def seifert_invariants(
    plumbing: PlumbingGraph,
    center: Optional[str] = None,
    leg_order: Optional[Sequence[str]] = None,
) -> SeifertInvariant:
    """
    Seifert invariant of the boundary of a star-shaped plumbing.

    Parameters
    ----------
    plumbing : PlumbingGraph
        star-shaped tree
    center : str | None, optional
        name of the central sphere. By default, it's the unique sphere with valence at
        least 3. A chain has none, so its center is the end which isn't the leaf in
        `leg_order`, or the middle sphere if `leg_order` lists both ends. Without
        `leg_order`, it's the first end in the plumbing's order
    leg_order : Sequence[str] | None, optional
        leaves of the legs whose pairs are listed first, in this order. The other legs
        follow in the default order: single-sphere legs sorted by ``(alpha, beta)``,
        then longer legs

    Returns
    -------
    SeifertInvariant
        ``b0 = -(weight of the center)`` and one pair per leg

    Raises
    ------
    NotStarShapedError
        if `center` isn't given and can't be inferred, or if a leg branches
    UnreducedLegError
        if a sphere on a leg has weight >= -1
    """
    if center is None:
        center = _infer_center(plumbing, leg_order)
    legs = sorted(
        _legs_around(plumbing, plumbing.vertex(center).name), key=_default_leg_key
    )
    if leg_order is not None:
        by_leaf = {leg.leaf: leg for leg in legs}
        unknown = [leaf for leaf in leg_order if leaf not in by_leaf]
        if unknown or len(set(leg_order)) != len(leg_order):
            raise ValueError(
                f"leg_order {list(leg_order)} must list distinct leaves of the legs: "
                f"{sorted(by_leaf)}."
            )
        first = [by_leaf[leaf] for leaf in leg_order]
        legs = first + [leg for leg in legs if leg.leaf not in leg_order]
    return SeifertInvariant(
        central=-plumbing.vertex(center).weight,
        pairs=tuple(leg.pair for leg in legs),
        legs=tuple(legs),
    )


def e_invariant(invariant: SeifertInvariant) -> Rational:
    """
    ``b0 - sum(beta / alpha)``. Nonzero iff the boundary is a rational homology sphere.
    """
    return invariant.central - sum(
        (Fraction(beta, alpha) for alpha, beta in invariant.pairs), Fraction(0)
    )


def central_plus_sum(invariant: SeifertInvariant) -> Rational:
    """
    ``b0 + sum(beta / alpha)``, the sum whose nonvanishing is usually quoted for the
    central pair ``(1, b0)``.
    """
    return invariant.central + sum(
        (Fraction(beta, alpha) for alpha, beta in invariant.pairs), Fraction(0)
    )


def is_qhs(invariant: SeifertInvariant) -> bool:
    return e_invariant(invariant) != 0


def homology_order_from_invariant(invariant: SeifertInvariant) -> Rational:
    """
    ``|e| * prod(alpha)``, which is ``|H_1|`` of the boundary when it's finite.
    """
    return abs(e_invariant(invariant)) * prod(alpha for alpha, _ in invariant.pairs)


def first_homology(plumbing: PlumbingGraph) -> AbelianGroup:
    """
    ``H_1`` of the boundary of the plumbing: the cokernel of the intersection matrix.
    """
    matrix = intersection_matrix(plumbing)
    return cokernel([[int(entry) for entry in row] for row in matrix])
