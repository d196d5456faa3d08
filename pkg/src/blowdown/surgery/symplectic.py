"""
Canonical and symplectic classes of a blown-up plane, and the sign test which tells a
rational blowdown apart from the standard ``CP^2 # m (-CP^2)``
"""

from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import Optional, Union

import numpy as np

from blowdown.blowup.homology import HomologyClass, canonical_class
from blowdown.kernel.forms import LinearForm, b, bilinear, lf_eval, symbol_key
from blowdown.kernel.linalg import Rational, RationalMatrix, invert
from blowdown.plumbing.graph import PlumbingGraph, intersection_matrix
from blowdown.surgery.accounting import AmbientManifold, HomeomorphismType
from blowdown.utils import _batch


logger = logging.getLogger(__name__)


class OutOfLemmaRangeError(ValueError):
    """
    The manifold isn't ``CP^2 # m (-CP^2)`` with ``2 <= m <= 9``, where every
    symplectic form has ``K . omega < 0``.
    """


########################################################################################
######################################## Classes #######################################
########################################################################################


@dataclass(frozen=True)
class SymplecticClassForm:
    """
    Poincare dual of the symplectic class, ``a h - b1 e1 - ... - bk ek``, where ``a`` is
    the area of a line and ``bi`` is the size of the i'th blow-up.
    """

    num_blowups: int

    def __post_init__(self):
        if self.num_blowups < 0:
            raise ValueError(f"num_blowups must be >= 0. Got {self.num_blowups}.")

    def pairing(self, homology: HomologyClass) -> LinearForm:
        """
        ``omega . homology``.
        """
        extra = [index for index in homology.support if index > self.num_blowups]
        if extra:
            raise ValueError(
                f"{homology} uses e{extra[0]}, but there are only {self.num_blowups} "
                "blow-ups."
            )
        coefficients = {"a": homology.h_coefficient}
        for index in homology.support:
            coefficients[b(index)] = homology.coefficient(index)
        return LinearForm.from_mapping(coefficients)

    def __str__(self) -> str:
        return "a h" + "".join(
            f" - b{index} e{index}" for index in range(1, self.num_blowups + 1)
        )


def canonical_form(num_blowups: int) -> HomologyClass:
    """
    ``PD(K) = -3h + e1 + ... + ek``.
    """
    return canonical_class(num_blowups)


ClassForm = Union[HomologyClass, SymplecticClassForm]


def restrict(
    classform: ClassForm, plumbing: PlumbingGraph
) -> Union[tuple[int, ...], tuple[LinearForm, ...]]:
    """
    Coefficients of a class restricted to the plumbing, in the basis dual to its
    spheres.

    Parameters
    ----------
    classform : HomologyClass | SymplecticClassForm
        the canonical class (see :func:`canonical_form`) or the symplectic class
    plumbing : PlumbingGraph
        spheres ``u1, ..., un``

    Returns
    -------
    tuple[int, ...] | tuple[LinearForm, ...]
        the i'th entry pairs the class with ``ui``
    """
    return tuple(classform.pairing(vertex.homology) for vertex in plumbing.vertices)


def dual_pairing(plumbing: PlumbingGraph) -> RationalMatrix:
    """
    Pairings of the dual classes, which is the inverse of the intersection matrix.
    """
    return invert(intersection_matrix(plumbing))


def standard_product(ambient: AmbientManifold) -> LinearForm:
    """
    ``K . omega = -3a + b1 + ... + bk``.
    """
    return SymplecticClassForm(ambient.num_blowups).pairing(
        canonical_form(ambient.num_blowups)
    )


def blowdown_product(plumbing: PlumbingGraph, ambient: AmbientManifold) -> LinearForm:
    """
    ``K_X . omega_X`` after rationally blowing down the plumbing.

    The rational ball contributes nothing rationally, so it's ``K . omega`` minus the
    pairing of the restrictions of ``K`` and ``omega`` to the plumbing.

    Parameters
    ----------
    plumbing : PlumbingGraph
        negative definite plumbing inside `ambient`
    ambient : AmbientManifold
        blown-up plane which contains the plumbing

    Returns
    -------
    LinearForm
        exact form in ``a, b1, ..., bk``

    Raises
    ------
    SingularMatrixError
        if the intersection matrix of the plumbing isn't invertible
    """
    product = standard_product(ambient)
    if not len(plumbing):
        return product
    canonical = restrict(canonical_form(ambient.num_blowups), plumbing)
    symplectic = restrict(SymplecticClassForm(ambient.num_blowups), plumbing)
    return product - bilinear(canonical, dual_pairing(plumbing), symplectic)


########################################################################################
######################################## Verdict #######################################
########################################################################################


@dataclass(frozen=True)
class Verdict:
    """
    Parameters
    ----------
    exotic : bool
        whether the form rules out diffeomorphism with the standard manifold
    a_coefficient : Rational
        coefficient of ``a`` in the form
    witness : tuple[tuple[str, Rational], ...]
        values of ``a, b1, ...`` at which the form was evaluated
    witness_value : Rational
        the form at `witness`
    standard : str
        the standard manifold the blowdown is homeomorphic to
    """

    exotic: bool
    a_coefficient: Rational
    witness: tuple[tuple[str, Rational], ...]
    witness_value: Rational
    standard: str

    @property
    def label(self) -> str:
        return "exotic" if self.exotic else "inconclusive"


def exoticness_verdict(
    form: LinearForm,
    homeomorphism: HomeomorphismType,
    num_blowups: Optional[int] = None,
    witness_scale: int = 100,
) -> Verdict:
    """
    Decides whether ``K_X . omega_X`` contradicts ``K . omega < 0`` on the standard
    manifold.

    Parameters
    ----------
    form : LinearForm
        ``K_X . omega_X``, e.g., from :func:`blowdown_product`
    homeomorphism : HomeomorphismType
        must be ``CP^2 # m (-CP^2)`` with ``2 <= m <= 9``
    num_blowups : int | None, optional
        number ``k`` of ``b`` symbols. By default, the largest index in `form`
    witness_scale : int, optional
        the witness sets ``a = 1`` and ``bi = 1 / (witness_scale * k)``, by default 100

    Returns
    -------
    Verdict
        exotic iff the ``a`` coefficient is positive and so is the form at the witness

    Raises
    ------
    OutOfLemmaRangeError
        if `homeomorphism` isn't standard with ``2 <= m <= 9``
    """
    m = homeomorphism.m
    if m is None or not 2 <= m <= 9:
        raise OutOfLemmaRangeError(
            f"The sign test needs CP2#m-CP2 with 2 <= m <= 9. Got "
            f"{homeomorphism.standard or 'an out-of-scope manifold'}."
        )
    if witness_scale <= 0:
        raise ValueError(f"witness_scale must be positive. Got {witness_scale}.")
    if num_blowups is None:
        indices = [symbol_key(symbol)[1] for symbol in form.symbols]
        num_blowups = max(indices, default=0)
    size = Fraction(1, witness_scale * max(num_blowups, 1))
    witness = (("a", Fraction(1)),) + tuple(
        (b(index), size) for index in range(1, num_blowups + 1)
    )
    witness_value = lf_eval(form, dict(witness))
    a_coefficient = form.coefficient("a")
    exotic = a_coefficient > 0 and witness_value > 0
    logger.info(
        "a-coefficient %s, witness value %s: %s",
        a_coefficient,
        witness_value,
        "exotic" if exotic else "inconclusive",
    )
    return Verdict(
        exotic=exotic,
        a_coefficient=a_coefficient,
        witness=witness,
        witness_value=witness_value,
        standard=homeomorphism.standard,
    )


########################################################################################
####################################### Sign lemma #####################################
########################################################################################


@dataclass(frozen=True)
class SignLemmaReport:
    """
    Parameters
    ----------
    m : int
        number of blow-ups
    seed : int
        seed of the generator
    accepted : int
        number of samples with ``a0 > 0`` and ``a0^2 > sum(ai^2)``
    rejected : int
        number of draws thrown away
    max_value : Rational | None
        largest ``-3 a0 - sum(ai)`` over accepted samples
    counterexample : tuple[Rational, ...] | None
        the first accepted sample with a non-negative value, if any
    """

    m: int
    seed: int
    accepted: int
    rejected: int
    max_value: Optional[Rational]
    counterexample: Optional[tuple[Rational, ...]]

    @property
    def holds(self) -> bool:
        return self.counterexample is None


def sign_lemma_value(a0: Rational, others: list[Rational]) -> Rational:
    """
    ``K . omega`` for ``PD(omega) = a0 h + sum(ai ei)`` on ``CP^2 # m (-CP^2)``.
    """
    return -3 * Fraction(a0) - sum((Fraction(ai) for ai in others), Fraction(0))


def sign_lemma_property(
    m: int,
    samples: int = 10_000,
    seed: int = 0,
    denominator: int = 1_000,
    batch_size: int = 65_536,
    show_progress_bar: Optional[bool] = None,
) -> SignLemmaReport:
    """
    Samples classes with positive square on ``CP^2 # m (-CP^2)`` and checks that
    ``-3 a0 - sum(ai) < 0`` for every one of them.

    Parameters
    ----------
    m : int
        number of blow-ups
    samples : int, optional
        number of accepted samples to check, by default 10_000
    seed : int, optional
        seed for ``numpy.random.default_rng``, by default 0
    denominator : int, optional
        every coordinate is an integer multiple of ``1 / denominator``, by default 1_000
    batch_size : int, optional
        number of vectors drawn at a time, by default 65_536
    show_progress_bar : bool | None, optional
        whether or not to show a progress bar. By default, it's shown for at least
        50_000 samples

    Returns
    -------
    SignLemmaReport
        counts, the largest value, and a counterexample if one was found

    Note
    ----
    Coordinates share the denominator, so the test and the value are computed on
    integer numerators, exactly.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0. Got {m}.")
    if samples < 0:
        raise ValueError(f"samples must be >= 0. Got {samples}.")
    rng = np.random.default_rng(seed)
    accepted = rejected = 0
    max_numerator: Optional[int] = None
    counterexample = None
    with _batch.ProgressBar(
        total=samples,
        desc=f"Sampling m={m}",
        show_progress_bar=show_progress_bar,
    ) as progress_bar:
        while accepted < samples:
            a0 = rng.integers(1, denominator + 1, size=batch_size, dtype=np.int64)
            bound = a0[:, None]
            others = rng.integers(
                -bound, bound + 1, size=(batch_size, m), dtype=np.int64
            )
            keep = a0**2 > (others**2).sum(axis=1)
            keep_indices = np.flatnonzero(keep)[: samples - accepted]
            # draws past the last kept one in the final batch aren't counted
            last = keep_indices[-1] + 1 if len(keep_indices) else batch_size
            rejected += int(last - len(keep_indices))
            values = -3 * a0[keep_indices] - others[keep_indices].sum(axis=1)
            if len(values):
                batch_max = int(values.max())
                if max_numerator is None or batch_max > max_numerator:
                    max_numerator = batch_max
                bad = np.flatnonzero(values >= 0)
                if bad.size and counterexample is None:
                    row = keep_indices[bad[0]]
                    counterexample = tuple(
                        Fraction(int(numerator), denominator)
                        for numerator in (a0[row], *others[row])
                    )
            accepted += len(keep_indices)
            progress_bar.update(len(keep_indices))
    max_value = (
        None if max_numerator is None else Fraction(max_numerator, denominator)
    )
    if counterexample is not None:
        logger.warning("Sign lemma failed for m=%d at %s", m, counterexample)
    return SignLemmaReport(
        m=m,
        seed=seed,
        accepted=accepted,
        rejected=rejected,
        max_value=max_value,
        counterexample=counterexample,
    )
