"""
Everything the surgery calculator concludes about one rational blowdown
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import Optional

from blowdown.kernel.forms import LinearForm
from blowdown.plumbing.graph import PlumbingGraph
from blowdown.plumbing.seifert import SeifertInvariant
from blowdown.plumbing.triviality import TrivialityResult
from blowdown.surgery.accounting import (
    AmbientManifold,
    HomeomorphismType,
    Parity,
    SimpleConnectivity,
    check_blowdown_admissible,
    euler_signature,
    homeomorphism_candidate,
    simple_connectivity,
)
from blowdown.surgery.symplectic import (
    Verdict,
    blowdown_product,
    exoticness_verdict,
    standard_product,
)


@dataclass(frozen=True)
class SurgeryReport:
    """
    Parameters
    ----------
    ambient : AmbientManifold
        the blown-up plane which contained the plumbing
    euler : int
        Euler characteristic of the blowdown
    signature : int
        signature of the blowdown
    connectivity : SimpleConnectivity
        why the blowdown is (or isn't known to be) simply connected
    homeomorphism : HomeomorphismType
        the classification. It's only a candidate unless ``connectivity`` certifies
        simple connectivity
    standard_product : LinearForm
        ``K . omega`` on the ambient manifold
    product : LinearForm
        ``K_X . omega_X`` on the blowdown
    verdict : Verdict | None
        the sign test, when the homeomorphism type is certified and in range
    """

    ambient: AmbientManifold
    euler: int
    signature: int
    connectivity: SimpleConnectivity
    homeomorphism: HomeomorphismType
    standard_product: LinearForm
    product: LinearForm
    verdict: Optional[Verdict]

    def __post_init__(self):
        if self.b_plus + self.b_minus != self.b2:
            raise ValueError("b+ + b- must equal b2.")

    @property
    def b2(self) -> int:
        return self.euler - 2

    @property
    def b_plus(self) -> int:
        return self.homeomorphism.b_plus

    @property
    def b_minus(self) -> int:
        return self.homeomorphism.b_minus

    @property
    def parity(self) -> Parity:
        return self.homeomorphism.parity

    @property
    def certified(self) -> bool:
        return self.connectivity.simply_connected

    @property
    def homeomorphism_label(self) -> str:
        standard = self.homeomorphism.standard or "out-of-scope"
        return standard if self.certified else f"candidate {standard}"

    @property
    def verdict_label(self) -> str:
        return "inconclusive" if self.verdict is None else self.verdict.label


def surgery_report(
    plumbing: PlumbingGraph,
    invariant: SeifertInvariant,
    ambient: AmbientManifold,
    triviality: Optional[TrivialityResult],
    witness_scale: int = 100,
) -> SurgeryReport:
    """
    Rationally blows down `plumbing` inside `ambient`.

    Parameters
    ----------
    plumbing : PlumbingGraph
        negative definite plumbing with a rational homology sphere boundary
    invariant : SeifertInvariant
        Seifert invariant of the boundary
    ambient : AmbientManifold
        the blown-up plane which contains the plumbing
    triviality : TrivialityResult | None
        certificate that the boundary's fundamental group dies in the complement
    witness_scale : int, optional
        see :func:`blowdown.surgery.symplectic.exoticness_verdict`, by default 100

    Returns
    -------
    SurgeryReport
        the verdict is only computed for a certified ``CP2#m-CP2`` with ``2 <= m <= 9``

    Raises
    ------
    InadmissibleBlowdownError
        if the plumbing isn't negative definite or its boundary isn't a rational
        homology sphere
    """
    check_blowdown_admissible(plumbing, invariant)
    euler, signature = euler_signature(ambient, len(plumbing))
    connectivity = simple_connectivity(ambient, triviality)
    homeomorphism = homeomorphism_candidate(euler, signature)
    product = blowdown_product(plumbing, ambient)
    verdict = None
    m = homeomorphism.m
    if connectivity.simply_connected and m is not None and 2 <= m <= 9:
        verdict = exoticness_verdict(
            product,
            homeomorphism,
            num_blowups=ambient.num_blowups,
            witness_scale=witness_scale,
        )
    return SurgeryReport(
        ambient=ambient,
        euler=euler,
        signature=signature,
        connectivity=connectivity,
        homeomorphism=homeomorphism,
        standard_product=standard_product(ambient),
        product=product,
        verdict=verdict,
    )
