"""
Checks the built-in scenarios against their published values.

Every criterion is a function which takes the expected values as arguments and returns
a :class:`CriterionResult`. A mismatch is reported entry by entry, so flipping one entry
of a fixture names exactly that entry.
"""

from __future__ import annotations
from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import Any, Callable, Mapping, Optional, Sequence

from blowdown.blowup.configuration import Configuration, define_configuration
from blowdown.blowup.engine import adjunction_audit, conservation_audit, run_script
from blowdown.blowup.homology import HomologyClass
from blowdown.kernel.forms import LinearForm
from blowdown.plumbing.triviality import GeometricFacts, quotient_triviality
from blowdown.scenario import expected as published
from blowdown.scenario.pipeline import Report, RunOptions, run, verify_config
from blowdown.scenario.report import render_machine
from blowdown.scenario.schema import BUILTINS, Scenario, load_builtin
from blowdown.surgery.symplectic import (
    SymplecticClassForm,
    canonical_form,
    restrict,
    sign_lemma_property,
    sign_lemma_value,
)
from blowdown.utils import _batch


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    diffs: tuple[str, ...] = ()

    def __str__(self) -> str:
        line = f"{'PASS' if self.passed else 'FAIL'}  {self.name}"
        return "\n".join([line] + [f"      {diff}" for diff in self.diffs])


def _is_sequence(value) -> bool:
    return isinstance(value, (list, tuple)) or (
        hasattr(value, "shape") and hasattr(value, "tolist")
    )


def diff(label: str, expected, computed) -> list[str]:
    """
    Entry-level differences between two nested structures of sequences and mappings.
    """
    if isinstance(expected, Mapping) and isinstance(computed, Mapping):
        diffs = []
        for key in expected:
            if key not in computed:
                diffs.append(f"{label}[{key}]: expected {expected[key]}, missing")
            else:
                diffs.extend(diff(f"{label}[{key}]", expected[key], computed[key]))
        for key in computed:
            if key not in expected:
                diffs.append(f"{label}[{key}]: unexpected {computed[key]}")
        return diffs
    if _is_sequence(expected) and _is_sequence(computed):
        expected, computed = list(expected), list(computed)
        if len(expected) != len(computed):
            return [
                f"{label}: expected {len(expected)} entries, computed {len(computed)}"
            ]
        diffs = []
        for index, (left, right) in enumerate(zip(expected, computed)):
            diffs.extend(diff(f"{label}[{index}]", left, right))
        return diffs
    if expected != computed:
        return [f"{label}: expected {expected}, computed {computed}"]
    return []


def _result(name: str, diffs: Sequence[str]) -> CriterionResult:
    return CriterionResult(name=name, passed=not diffs, diffs=tuple(diffs))


########################################################################################
###################################### Criteria ########################################
########################################################################################


def check_contacts(
    scenario: Scenario,
    contacts: Mapping[tuple[str, str], Mapping[str, str]] = published.CONTACTS,
    bezout_total: int = published.BEZOUT_TOTAL,
) -> CriterionResult:
    certification = verify_config(scenario)
    computed = {pair.curves: dict(pair.audit.contacts) for pair in certification.pairs}
    diffs = []
    for curves, expected_contacts in contacts.items():
        if curves not in computed:
            diffs.append(f"{curves}: not certified")
            continue
        diffs += diff(f"{curves[0]}.{curves[1]}", expected_contacts, computed[curves])
        pair = next(pair for pair in certification.pairs if pair.curves == curves)
        diffs += diff(f"{curves[0]}.{curves[1]} total", bezout_total, pair.audit.total)
        if not pair.audit.complete:
            diffs.append(f"{curves[0]}.{curves[1]}: Bezout audit incomplete")
    return _result("conic contacts are certified and fill Bezout's bound", diffs)


def _prefix(scenario: Scenario, num_steps: int) -> Configuration:
    config = define_configuration(
        [(curve.name, curve.degree) for curve in scenario.curves],
        [point.spec for point in scenario.points],
    )
    return run_script(config, scenario.script[:num_steps])


def check_base_configuration(
    scenario: Scenario,
    curves: Mapping[str, tuple[str, int]] = published.BASE_CURVES,
    num_steps: int = published.BASE_STEPS,
) -> CriterionResult:
    config = _prefix(scenario, num_steps)
    expected = {
        name: (HomologyClass.parse(text), self_intersection)
        for name, (text, self_intersection) in curves.items()
    }
    computed = {
        name: (config.curve(name).homology, config.curve(name).self_intersection)
        for name in curves
    }
    diffs = []
    for name in expected:
        (left_class, left_square), (right_class, right_square) = (
            expected[name],
            computed[name],
        )
        if left_class != right_class:
            diffs.append(f"{name}: expected {left_class}, computed {right_class}")
        if left_square != right_square:
            diffs.append(f"{name}^2: expected {left_square}, computed {right_square}")
    return _result(f"proper transforms after {num_steps} blow-ups", diffs)


def check_plumbing_classes(
    report: Report, classes: Mapping[str, str], num_blowups: int
) -> CriterionResult:
    plumbing = report.plumbing.plumbing
    diffs = diff("blow-ups", num_blowups, report.blowup.configuration.num_blowups)
    computed = {vertex.name: vertex.homology for vertex in plumbing.vertices}
    for name, text in classes.items():
        expected_class = HomologyClass.parse(text)
        if computed.get(name) != expected_class:
            diffs.append(
                f"{name}: expected {expected_class}, computed {computed.get(name)}"
            )
    return _result(f"sphere classes of {report.scenario}", diffs)


def check_matrices(
    report: Report,
    matrix: Sequence[Sequence[int]],
    inverse_scale: Fraction,
    inverse_integers: Sequence[Sequence[int]],
) -> CriterionResult:
    plumbing = report.plumbing
    diffs = diff("matrix", matrix, [[int(x) for x in row] for row in plumbing.matrix])
    expected_inverse = [
        [inverse_scale * entry for entry in row] for row in inverse_integers
    ]
    diffs += diff("inverse", expected_inverse, plumbing.inverse.tolist())
    return _result(f"intersection matrix and inverse of {report.scenario}", diffs)


def check_seifert(
    report: Report, central: int, pairs: Sequence[tuple[int, int]], text: str
) -> CriterionResult:
    invariant = report.plumbing.invariant
    diffs = diff("b0", central, invariant.central)
    diffs += diff("pairs", [list(pair) for pair in pairs], invariant.pairs)
    diffs += diff("rendering", text, invariant.braces_format())
    return _result(f"Seifert invariant of the boundary of {report.scenario}", diffs)


def check_homology_orders(report: Report, order: int) -> CriterionResult:
    plumbing = report.plumbing
    orders = {
        "|det|": abs(plumbing.determinant),
        "|H_1|": plumbing.first_homology.order,
        "|abelianized presentation|": plumbing.abelianization.order,
    }
    diffs = diff("order", {name: order for name in orders}, orders)
    return _result(f"|H_1| of the boundary of {report.scenario}", diffs)


def check_triviality(
    report: Report, scenario: Scenario, witnesses: Sequence[str]
) -> CriterionResult:
    triviality = report.triviality
    facts = scenario.facts
    used = [fact.witness for fact in facts.kills] + [
        fact.witness for fact in facts.identifications
    ]
    diffs = diff("witnesses", list(witnesses), used)
    if not (triviality.trivial and triviality.replayed):
        diffs.append(f"deduction stalled at {triviality.residual}")
    stalled = quotient_triviality(
        report.plumbing.presentation,
        GeometricFacts(),
        report.blowup.configuration,
        report.plumbing.plumbing,
    )
    if stalled.trivial:
        diffs.append("deduction succeeded without any geometric facts")
    name = f"fundamental group dies in the complement ({report.scenario})"
    return _result(name, diffs)


def check_accounting(
    report: Report, euler_signature: tuple[int, int], homeomorphism: str
) -> CriterionResult:
    surgery = report.surgery
    diffs = diff(
        "(chi, sigma)", list(euler_signature), [surgery.euler, surgery.signature]
    )
    diffs += diff("parity", "odd", surgery.parity)
    diffs += diff("b+", 1, surgery.b_plus)
    diffs += diff("type", homeomorphism, surgery.homeomorphism_label)
    name = f"Euler characteristic, signature and type ({report.scenario})"
    return _result(name, diffs)


def check_restrictions(
    report: Report, canonical: Sequence[int], symplectic: Sequence[str]
) -> CriterionResult:
    plumbing = report.plumbing.plumbing
    num_blowups = report.blowup.configuration.num_blowups
    diffs = diff("K|", list(canonical), restrict(canonical_form(num_blowups), plumbing))
    computed = restrict(SymplecticClassForm(num_blowups), plumbing)
    expected_forms = [published.form(text) for text in symplectic]
    diffs += diff(
        "omega|",
        [str(form) for form in expected_forms],
        [str(form) for form in computed],
    )
    return _result(f"canonical and symplectic restrictions ({report.scenario})", diffs)


def check_final_form(
    report: Report,
    coefficients: Sequence[Fraction],
    verdict: str,
    corrections: Optional[Mapping[int, tuple[Fraction, Fraction]]] = None,
) -> CriterionResult:
    """
    `corrections` maps an index of `coefficients` to the published value it replaces and
    the recomputed one. The result's name lists them.
    """
    product: LinearForm = report.surgery.product
    num_blowups = report.blowup.configuration.num_blowups
    symbols = ["a"] + [f"b{index}" for index in range(1, num_blowups + 1)]
    computed = [product.coefficient(symbol) for symbol in symbols]
    diffs = diff("coefficients", list(coefficients), computed)
    diffs += diff("constant", Fraction(0), product.constant)
    diffs += diff("verdict", verdict, report.surgery.verdict_label)
    name = f"K_X . omega_X of {report.scenario}"
    if corrections:
        notes = ", ".join(
            f"{symbols[index]} is {recomputed}, not the published {published}"
            for index, (published, recomputed) in sorted(corrections.items())
        )
        name += f" ({notes})"
    return _result(name, diffs)


def check_audits(scenarios: Sequence[Scenario]) -> CriterionResult:
    diffs = []
    for scenario in scenarios:
        states = [_prefix(scenario, 0)]
        run_script(
            states[0],
            scenario.script,
            on_step=lambda _, __, state: states.append(state),
        )
        for index, state in enumerate(states):
            for name, value in adjunction_audit(state):
                if value != -2:
                    diffs.append(
                        f"{scenario.name} after {index} steps: K.{name} + "
                        f"{name}^2 = {value}"
                    )
            for violation in conservation_audit(state):
                diffs.append(f"{scenario.name} after {index} steps: {violation}")
    return _result("adjunction and conservation in every reachable state", diffs)


def check_sign_lemma(
    m_range: Sequence[int] = published.SIGN_LEMMA_RANGE,
    samples: int = 10_000,
    seed: int = 0,
    show_progress_bar: Optional[bool] = None,
) -> CriterionResult:
    diffs = []
    for m in m_range:
        result = sign_lemma_property(
            m, samples=samples, seed=seed, show_progress_bar=show_progress_bar
        )
        if result.accepted != samples:
            diffs.append(f"m={m}: accepted {result.accepted} of {samples}")
        if not result.holds:
            diffs.append(f"m={m}: counterexample {result.counterexample}")
    return _result(f"K . omega < 0 on sampled classes (seed {seed})", diffs)


def check_sharpness(
    vector: Sequence[Fraction] = published.SHARPNESS_VECTOR,
    value: Fraction = published.SHARPNESS_VALUE,
) -> CriterionResult:
    a0, *others = vector
    diffs = []
    if not a0**2 > sum(ai**2 for ai in others):
        diffs.append("crafted class doesn't have positive square")
    diffs += diff("K . omega", value, sign_lemma_value(a0, others))
    if sign_lemma_value(a0, others) < 0:
        diffs.append("crafted class doesn't break the sign lemma")
    return _result(f"sign lemma fails once m = {len(others)}", diffs)


def check_determinism(scenario: Scenario, options: RunOptions) -> CriterionResult:
    first = render_machine(run(scenario, options))
    second = render_machine(run(scenario, options))
    diffs = [] if first == second else ["machine reports differ between runs"]
    return _result(f"machine report of {scenario.name} is deterministic", diffs)


########################################################################################
######################################## Suite #########################################
########################################################################################


def criteria(
    seed: int = 0, samples: int = 10_000, show_progress_bar: Optional[bool] = None
) -> list[tuple[str, Callable[[], CriterionResult]]]:
    """
    Every criterion, bound to the published values, in the order they're run.
    """
    scenarios = {name: load_builtin(name) for name in BUILTINS}
    options = RunOptions(seed=seed, samples=0, show_progress_bar=False)
    reports: dict[str, Report] = {}

    def report(name: str) -> Report:
        if name not in reports:
            reports[name] = run(scenarios[name], options)
        return reports[name]

    b4, c4 = "example-B4", "example-C4"
    classes = {b4: published.P_CLASSES, c4: published.Q_CLASSES}
    inverses = {
        b4: (published.M, published.M_INVERSE_SCALE, published.M_INVERSE_INTEGERS),
        c4: (published.N, published.N_INVERSE_SCALE, published.N_INVERSE_INTEGERS),
    }
    bound: list[tuple[str, Callable[[], Any]]] = [
        ("contacts", lambda: check_contacts(scenarios[b4])),
        ("configuration", lambda: check_base_configuration(scenarios[b4])),
    ]
    for name in BUILTINS:
        bound += [
            (
                f"classes {name}",
                lambda name=name: check_plumbing_classes(
                    report(name), classes[name], published.NUM_BLOWUPS[name]
                ),
            ),
            (
                f"matrices {name}",
                lambda name=name: check_matrices(report(name), *inverses[name]),
            ),
            (
                f"seifert {name}",
                lambda name=name: check_seifert(
                    report(name),
                    *published.SEIFERT[name],
                    published.SEIFERT_TEXT[name],
                ),
            ),
            (
                f"orders {name}",
                lambda name=name: check_homology_orders(
                    report(name), published.DETERMINANTS[name]
                ),
            ),
            (
                f"triviality {name}",
                lambda name=name: check_triviality(
                    report(name), scenarios[name], published.WITNESSES[name]
                ),
            ),
            (
                f"accounting {name}",
                lambda name=name: check_accounting(
                    report(name),
                    published.EULER_SIGNATURE[name],
                    published.HOMEOMORPHISM[name],
                ),
            ),
            (
                f"restrictions {name}",
                lambda name=name: check_restrictions(
                    report(name),
                    published.CANONICAL_RESTRICTION[name],
                    published.SYMPLECTIC_RESTRICTION[name],
                ),
            ),
            (
                f"final form {name}",
                lambda name=name: check_final_form(
                    report(name),
                    published.FINAL_COEFFICIENTS[name],
                    published.VERDICT[name],
                    published.CORRECTIONS.get(name, {}),
                ),
            ),
        ]
    bound += [
        ("audits", lambda: check_audits(list(scenarios.values()))),
        (
            "sign lemma",
            lambda: check_sign_lemma(
                samples=samples, seed=seed, show_progress_bar=show_progress_bar
            ),
        ),
        ("sharpness", check_sharpness),
        (
            "determinism",
            lambda: check_determinism(
                scenarios[b4], RunOptions(seed=seed, samples=min(samples, 1_000))
            ),
        ),
    ]
    return bound


def run_acceptance(
    seed: int = 0, samples: int = 10_000, show_progress_bar: Optional[bool] = None
) -> list[CriterionResult]:
    """
    Runs every acceptance criterion.

    Parameters
    ----------
    seed : int, optional
        seed for the sign-lemma sampler, by default 0
    samples : int, optional
        accepted samples per ``m``, by default 10_000
    show_progress_bar : bool | None, optional
        whether or not to show a progress bar over the criteria. By default, it's not
        shown

    Returns
    -------
    list[CriterionResult]
        one per criterion. A criterion which raises fails with the error as its diff
    """
    results = []
    bound = criteria(seed=seed, samples=samples, show_progress_bar=False)
    for key, check in _batch.ProgressBar(
        bound,
        desc="Acceptance",
        show_progress_bar=show_progress_bar,
        min_total_for_showing_progress_bar=len(bound) + 1,
    ):
        try:
            result = check()
        except Exception as exception:
            result = CriterionResult(
                name=key,
                passed=False,
                diffs=(f"{type(exception).__name__}: {exception}",),
            )
        logger.info("%s", result)
        results.append(result)
    return results
