"""
Euler characteristic, signature, and homeomorphism type of a rational blowdown
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import Literal, Optional

from blowdown.kernel.linalg import is_negative_definite
from blowdown.plumbing.graph import PlumbingGraph, intersection_matrix
from blowdown.plumbing.seifert import SeifertInvariant, is_qhs
from blowdown.plumbing.triviality import TrivialityResult


Parity = Literal["odd", "even", "undetermined"]


class UnclassifiableError(ValueError):
    """
    The manifold isn't known to be simply connected, so its homeomorphism type can't be
    read off from its Euler characteristic, signature, and parity.
    """


class InadmissibleBlowdownError(ValueError):
    """
    The plumbing can't be rationally blown down: it isn't negative definite, or its
    boundary isn't a rational homology sphere.
    """


@dataclass(frozen=True)
class AmbientManifold:
    """
    ``CP^2 # num_blowups (-CP^2)``.
    """

    num_blowups: int

    def __post_init__(self):
        if self.num_blowups < 0:
            raise ValueError(f"num_blowups must be >= 0. Got {self.num_blowups}.")

    @property
    def euler(self) -> int:
        return 3 + self.num_blowups

    @property
    def signature(self) -> int:
        return 1 - self.num_blowups

    def __str__(self) -> str:
        return standard_name(self.num_blowups)


@dataclass(frozen=True)
class RationalBallModel:
    """
    What's used of the rational homology ball glued in: it has the rational homology of
    a point.
    """

    euler: int = 1
    signature: int = 0


def standard_name(m: int) -> str:
    return f"CP2#{m}-CP2"


def euler_signature(
    ambient: AmbientManifold,
    num_vertices: int,
    ball: RationalBallModel = RationalBallModel(),
) -> tuple[int, int]:
    """
    Euler characteristic and signature after replacing a negative definite plumbing of
    `num_vertices` spheres with a rational ball.

    The plumbing has Euler characteristic ``num_vertices + 1`` and signature
    ``-num_vertices``.

    Example
    -------
    ::

        from blowdown.surgery.accounting import AmbientManifold, euler_signature

        assert euler_signature(AmbientManifold(16), 8) == (11, -7)
    """
    if num_vertices < 0:
        raise ValueError(f"num_vertices must be >= 0. Got {num_vertices}.")
    if num_vertices == 0:
        return ambient.euler, ambient.signature
    euler = ambient.euler - (num_vertices + 1) + ball.euler
    signature = ambient.signature - (-num_vertices) + ball.signature
    return euler, signature


def check_blowdown_admissible(plumbing: PlumbingGraph, invariant: SeifertInvariant):
    """
    Raises an :class:`InadmissibleBlowdownError` unless the plumbing is negative
    definite and its boundary is a rational homology sphere.
    """
    if not is_negative_definite(intersection_matrix(plumbing)):
        raise InadmissibleBlowdownError(
            f"The intersection matrix of {list(plumbing.names)} isn't negative "
            "definite."
        )
    if not is_qhs(invariant):
        raise InadmissibleBlowdownError(
            f"The boundary with Seifert invariant {invariant} isn't a rational "
            "homology sphere."
        )


########################################################################################
################################# Simple connectivity ##################################
########################################################################################


@dataclass(frozen=True)
class SimpleConnectivity:
    """
    The chain of facts showing the blown-down manifold is simply connected.
    """

    simply_connected: bool
    steps: tuple[str, ...]


def simple_connectivity(
    ambient: AmbientManifold, triviality: Optional[TrivialityResult]
) -> SimpleConnectivity:
    """
    Chains the certificate that the boundary's fundamental group dies in the complement
    ``V`` of the plumbing to simple connectivity of the blown-down manifold ``X``.
    """
    steps = [
        "pi1(P) = 1: a tree of spheres is homotopic to a wedge of spheres",
        f"pi1({ambient}) = 1: built without 1-handles",
    ]
    if triviality is None or not triviality.trivial:
        steps.append("i_*: pi1(boundary) -> pi1(V) isn't certified trivial")
        return SimpleConnectivity(simply_connected=False, steps=tuple(steps))
    steps.extend(
        [
            f"i_* is trivial: {len(triviality.deductions)} replayed deductions",
            "pi1(V) = pi1(V) / i_*(pi1(boundary)) = 1 by van Kampen",
            "j_*: pi1(boundary) -> pi1(B) is onto since B is the complement of a dual "
            "plumbing in a blown-up plane",
            "pi1(X) = pi1(B) / j_*(pi1(boundary)) = 1 by van Kampen",
        ]
    )
    return SimpleConnectivity(simply_connected=True, steps=tuple(steps))


########################################################################################
################################# Homeomorphism type ###################################
########################################################################################


@dataclass(frozen=True)
class HomeomorphismType:
    """
    Classification of a smooth simply connected closed 4-manifold by Euler
    characteristic, signature, and parity of its intersection form.

    Parameters
    ----------
    euler : int
        Euler characteristic
    signature : int
        signature
    parity : Parity
        ``"odd"`` when 16 doesn't divide the signature. Otherwise undetermined
    standard : str | None
        ``"CP2#m-CP2"`` when the manifold is homeomorphic to it, else `None` (out of
        scope)
    """

    euler: int
    signature: int
    parity: Parity
    standard: Optional[str]

    @property
    def b2(self) -> int:
        return self.euler - 2

    @property
    def b_plus(self) -> int:
        return (self.b2 + self.signature) // 2

    @property
    def b_minus(self) -> int:
        return (self.b2 - self.signature) // 2

    @property
    def m(self) -> Optional[int]:
        """
        Number of ``-CP^2`` summands of the standard manifold, if there is one.
        """
        return None if self.standard is None else self.b_minus


def homeomorphism_type(
    euler: int, signature: int, simply_connected: Optional[bool]
) -> HomeomorphismType:
    """
    Reads off the homeomorphism type of a smooth simply connected 4-manifold.

    Parameters
    ----------
    euler : int
        Euler characteristic
    signature : int
        signature
    simply_connected : bool | None
        whether simple connectivity was certified

    Returns
    -------
    HomeomorphismType
        parity is odd iff 16 doesn't divide the signature (Rokhlin). Odd with ``b+ = 1``
        is ``CP^2 # b- (-CP^2)``. Everything else is out of scope

    Raises
    ------
    UnclassifiableError
        if `simply_connected` isn't ``True``
    ValueError
        if ``b2 +- signature`` is odd
    """
    if simply_connected is not True:
        raise UnclassifiableError(
            "Simple connectivity isn't certified, so the manifold is only a "
            "homeomorphism candidate."
        )
    return homeomorphism_candidate(euler, signature)


def homeomorphism_candidate(euler: int, signature: int) -> HomeomorphismType:
    """
    What :func:`homeomorphism_type` would return if the manifold were simply connected.
    """
    b2 = euler - 2
    if (b2 + signature) % 2:
        raise ValueError(
            f"b2 = {b2} and signature = {signature} have different parities, so b+ "
            "and b- aren't integers."
        )
    parity: Parity = "odd" if signature % 16 else "undetermined"
    b_plus = (b2 + signature) // 2
    standard = None
    if parity == "odd" and b_plus == 1:
        standard = standard_name((b2 - signature) // 2)
    return HomeomorphismType(
        euler=euler, signature=signature, parity=parity, standard=standard
    )
