"""
Runs a scenario end to end: certify the curves, blow up, read off the plumbing, kill the
boundary's fundamental group, and rationally blow down.
"""

from __future__ import annotations
from contextlib import contextmanager
from dataclasses import dataclass, field
import logging
import os
from typing import Iterator, Optional, Union

from blowdown.blowup.configuration import Configuration, define_configuration
from blowdown.blowup.engine import (
    BlowupStep,
    adjunction_audit,
    conservation_audit,
    incidence_graph,
    run_script,
)
from blowdown.field.curves import BezoutAudit, PolynomialError, bezout_audit, evaluate
from blowdown.kernel.linalg import (
    Rational,
    RationalMatrix,
    determinant,
    invert,
    is_negative_definite,
)
from blowdown.kernel.smith import AbelianGroup
from blowdown.plumbing.graph import PlumbingGraph, extract_plumbing, intersection_matrix
from blowdown.plumbing.presentation import (
    GroupPresentation,
    abelianization,
    fundamental_group,
)
from blowdown.plumbing.seifert import (
    SeifertInvariant,
    e_invariant,
    first_homology,
    homology_order_from_invariant,
    seifert_invariants,
)
from blowdown.plumbing.triviality import TrivialityResult, quotient_triviality
from blowdown.scenario.schema import Scenario, ScenarioError, load_scenario
from blowdown.surgery.accounting import AmbientManifold, HomeomorphismType
from blowdown.surgery.report import SurgeryReport, surgery_report
from blowdown.surgery.symplectic import SignLemmaReport, sign_lemma_property


logger = logging.getLogger(__name__)


class StageError(RuntimeError):
    """
    A stage of the pipeline failed.
    """

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"Stage {stage!r} failed: {type(cause).__name__}: {cause}")


class MismatchError(ValueError):
    """
    A computed value disagrees with what was declared or expected.
    """

    def __init__(self, what: str, expected, computed, details: tuple[str, ...] = ()):
        self.what = what
        self.expected = expected
        self.computed = computed
        self.details = details
        message = f"{what}: expected {expected}, computed {computed}."
        if details:
            message += "\n" + "\n".join(f"  {detail}" for detail in details)
        super().__init__(message)


@dataclass(frozen=True)
class RunOptions:
    """
    Parameters
    ----------
    seed : int, optional
        seed for the sign-lemma sampler, by default 0
    samples : int, optional
        number of accepted sign-lemma samples. 0 skips the sampler. By default 10_000
    witness_scale : int, optional
        the witness for the verdict sets ``bi = 1 / (witness_scale * k)``, by default
        100
    expect : str | None, optional
        expected homeomorphism type, e.g., ``"CP2#8-CP2"``. Overrides the scenario's.
        By default, the scenario's is used
    show_progress_bar : bool | None, optional
        whether or not to show progress bars. By default, they're shown for long runs
    """

    seed: int = 0
    samples: int = 10_000
    witness_scale: int = 100
    expect: Optional[str] = None
    show_progress_bar: Optional[bool] = None

    def __post_init__(self):
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0. Got {self.seed}.")
        if self.samples < 0:
            raise ValueError(f"samples must be >= 0. Got {self.samples}.")
        if self.witness_scale <= 0:
            raise ValueError(f"witness_scale must be > 0. Got {self.witness_scale}.")


########################################################################################
##################################### Stage results ####################################
########################################################################################


@dataclass(frozen=True)
class PairCertification:
    """
    Exact contacts of two curves with equations at the points declared on both.
    """

    curves: tuple[str, str]
    audit: BezoutAudit
    declared: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class Certification:
    pairs: tuple[PairCertification, ...] = ()
    incidences: tuple[tuple[str, str], ...] = ()
    skipped: bool = False


@dataclass(frozen=True)
class BlowupResult:
    configuration: Configuration
    num_states_audited: int
    num_edges: int


@dataclass(frozen=True)
class PlumbingResult:
    plumbing: PlumbingGraph
    matrix: RationalMatrix
    determinant: Rational
    inverse: RationalMatrix
    negative_definite: bool
    invariant: SeifertInvariant
    e_invariant: Rational
    first_homology: AbelianGroup
    presentation: GroupPresentation
    abelianization: AbelianGroup


@dataclass(frozen=True)
class Report:
    """
    Everything a run computed, stage by stage. Stages which didn't run are `None`.
    """

    scenario: str
    options: RunOptions
    certification: Optional[Certification] = None
    blowup: Optional[BlowupResult] = None
    plumbing: Optional[PlumbingResult] = None
    triviality: Optional[TrivialityResult] = None
    surgery: Optional[SurgeryReport] = None
    sign_lemma: Optional[SignLemmaReport] = None
    expected: Optional[str] = None
    provenance: tuple[str, ...] = field(default=())

    @property
    def homeomorphism(self) -> Optional[HomeomorphismType]:
        return None if self.surgery is None else self.surgery.homeomorphism

    @property
    def expectation_met(self) -> Optional[bool]:
        """
        `None` if nothing was expected.
        """
        if self.expected is None:
            return None
        if self.surgery is None or not self.surgery.certified:
            return False
        return self.surgery.homeomorphism.standard == self.expected

    @property
    def ok(self) -> bool:
        if self.expectation_met is False:
            return False
        return self.sign_lemma is None or self.sign_lemma.holds


@contextmanager
def _stage(name: str) -> Iterator[None]:
    logger.info("Stage %s: start", name)
    try:
        yield
    except (MismatchError, ScenarioError, StageError):
        raise
    except (ValueError, KeyError, ZeroDivisionError, RuntimeError) as exception:
        raise StageError(name, exception) from exception
    logger.info("Stage %s: done", name)


########################################################################################
##################################### Certification ####################################
########################################################################################


def verify_config(scenario: Union[Scenario, str, os.PathLike]) -> Certification:
    """
    Certifies the declared points against the curves' equations, exactly.

    Every point with coordinates must lie on exactly the branches it declares (among
    curves with equations). For every pair of curves with equations, the contact at
    each point on both must match the declared multiplicity, and the contacts must fit
    within Bezout's bound.

    Returns
    -------
    Certification
        ``skipped=True`` if no curve has an equation

    Raises
    ------
    MismatchError
        listing every pair and point where certification failed
    """
    if not isinstance(scenario, Scenario):
        scenario = load_scenario(scenario)
    with_equations = [curve for curve in scenario.curves if curve.polynomial]
    if not with_equations:
        logger.warning(
            "Scenario %s has no curve equations. Skipping certification.",
            scenario.name,
        )
        return Certification(skipped=True)
    failures: list[str] = []
    incidences = []
    located = [point for point in scenario.points if point.coordinates is not None]
    for point in located:
        for curve in with_equations:
            on_curve = not evaluate(curve.polynomial, point.coordinates)
            declared = curve.name in point.spec.branches
            if on_curve and declared:
                incidences.append((point.name, curve.name))
            elif declared:
                failures.append(f"{curve.name} doesn't vanish at {point.name}")
            elif on_curve:
                failures.append(
                    f"{curve.name} goes through {point.name}, which doesn't list it"
                )
    pairs = []
    for i, p in enumerate(with_equations):
        for q in with_equations[i + 1 :]:
            shared = [
                point
                for point in located
                if p.name in point.spec.branches and q.name in point.spec.branches
            ]
            if not shared:
                continue
            try:
                audit = bezout_audit(
                    p.polynomial,
                    q.polynomial,
                    {point.name: point.coordinates for point in shared},
                )
            except (PolynomialError, ValueError) as exception:
                failures.append(f"{p.name} and {q.name}: {exception}")
                continue
            declared = tuple(
                (point.name, point.spec.multiplicity(p.name, q.name))
                for point in shared
            )
            for (name, contact), (_, multiplicity) in zip(audit.contacts, declared):
                expected = "tangent" if multiplicity >= 2 else "transverse"
                if contact != expected:
                    failures.append(
                        f"{p.name} and {q.name} at {name}: declared {expected}, "
                        f"certified {contact}"
                    )
            pairs.append(
                PairCertification(
                    curves=(p.name, q.name), audit=audit, declared=declared
                )
            )
    if failures:
        raise MismatchError(
            "contact certification",
            "declared contacts",
            f"{len(failures)} failures",
            tuple(failures),
        )
    return Certification(pairs=tuple(pairs), incidences=tuple(incidences))


########################################################################################
######################################### Run ##########################################
########################################################################################


def _blow_up(scenario: Scenario) -> BlowupResult:
    config = define_configuration(
        [(curve.name, curve.degree) for curve in scenario.curves],
        [point.spec for point in scenario.points],
    )
    audited = [0]

    def audit(state: Configuration, when: str):
        bad = [(name, value) for name, value in adjunction_audit(state) if value != -2]
        if bad:
            raise MismatchError(f"adjunction {when}", -2, bad)
        violations = conservation_audit(state)
        if violations:
            raise MismatchError(f"intersection conservation {when}", [], violations)
        audited[0] += 1

    def audit_step(step_index: int, step: BlowupStep, state: Configuration):
        audit(state, f"after step {step_index} ({step})")

    audit(config, "before blowing up")
    config = run_script(config, scenario.script, on_step=audit_step)
    graph = incidence_graph(config)
    return BlowupResult(
        configuration=config,
        num_states_audited=audited[0],
        num_edges=graph.number_of_edges(),
    )


def _analyze_plumbing(scenario: Scenario, config: Configuration) -> PlumbingResult:
    entry = scenario.plumbing
    plumbing = extract_plumbing(config, entry.curves, labels=entry.labels)
    matrix = intersection_matrix(plumbing)
    det = determinant(matrix)
    invariant = seifert_invariants(plumbing, center=entry.center, leg_order=entry.legs)
    homology = first_homology(plumbing)
    presentation = fundamental_group(invariant)
    abelian = abelianization(presentation)
    orders = {
        "|det M|": abs(det),
        "|H_1| from M": homology.order,
        "|e| * prod(alpha)": homology_order_from_invariant(invariant),
        "|H_1| from the presentation": abelian.order,
    }
    if len(set(orders.values())) != 1:
        raise MismatchError("order of H_1 of the boundary", orders["|det M|"], orders)
    return PlumbingResult(
        plumbing=plumbing,
        matrix=matrix,
        determinant=det,
        inverse=invert(matrix),
        negative_definite=is_negative_definite(matrix),
        invariant=invariant,
        e_invariant=e_invariant(invariant),
        first_homology=homology,
        presentation=presentation,
        abelianization=abelian,
    )


def run(
    scenario: Union[Scenario, str, os.PathLike], options: RunOptions = RunOptions()
) -> Report:
    """
    Runs every stage the scenario has sections for.

    Parameters
    ----------
    scenario : Scenario | str | os.PathLike
        a parsed scenario, or the path to a scenario file
    options : RunOptions, optional
        seed, sample count, witness scale, and expected type

    Returns
    -------
    Report
        deterministic given the scenario and `options`

    Raises
    ------
    ScenarioError
        if the file doesn't parse or validate
    MismatchError
        if certification fails, or an audit or consistency check fails
    StageError
        if a stage raises. It names the stage
    """
    if not isinstance(scenario, Scenario):
        scenario = load_scenario(scenario)
    provenance = []
    with _stage("certify"):
        certification = verify_config(scenario)
    if not certification.skipped:
        provenance.append(
            "contacts certified exactly in Q(i, sqrt2, sqrt3) and audited against "
            "Bezout's bound"
        )
    with _stage("blowup"):
        blowup = _blow_up(scenario)
    provenance.append(
        "adjunction and intersection conservation hold after every blow-up"
    )
    expected = options.expect or scenario.surgery.expect
    if scenario.plumbing is None:
        return Report(
            scenario=scenario.name,
            options=options,
            certification=certification,
            blowup=blowup,
            expected=expected,
            provenance=tuple(provenance),
        )
    config = blowup.configuration
    with _stage("plumbing"):
        plumbing = _analyze_plumbing(scenario, config)
    provenance.append(
        "|H_1| of the boundary agrees across det, Smith form, Seifert invariant, and "
        "the abelianized presentation"
    )
    with _stage("pi1"):
        triviality = quotient_triviality(
            plumbing.presentation, scenario.facts, config, plumbing.plumbing
        )
    if triviality.trivial:
        provenance.append("deduction log replayed independently")
    with _stage("surgery"):
        if (
            scenario.surgery.ambient is not None
            and scenario.surgery.ambient != config.num_blowups
        ):
            raise MismatchError(
                "number of blow-ups", scenario.surgery.ambient, config.num_blowups
            )
        surgery = surgery_report(
            plumbing.plumbing,
            plumbing.invariant,
            AmbientManifold(config.num_blowups),
            triviality,
            witness_scale=options.witness_scale,
        )
    sign_lemma = None
    if surgery.verdict is not None and options.samples:
        with _stage("sign-lemma"):
            sign_lemma = sign_lemma_property(
                surgery.homeomorphism.m,
                samples=options.samples,
                seed=options.seed,
                show_progress_bar=options.show_progress_bar,
            )
        provenance.append(
            f"K . omega < 0 on {sign_lemma.accepted} sampled classes with positive "
            f"square (seed {sign_lemma.seed})"
        )
    report = Report(
        scenario=scenario.name,
        options=options,
        certification=certification,
        blowup=blowup,
        plumbing=plumbing,
        triviality=triviality,
        surgery=surgery,
        sign_lemma=sign_lemma,
        expected=expected,
        provenance=tuple(provenance),
    )
    if report.expectation_met is False:
        logger.warning("Expected %s, got %s", expected, surgery.homeomorphism_label)
    return report
