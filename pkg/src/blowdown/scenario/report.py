"""
Text and machine-readable (JSON) renderings of a :class:`Report`.

In JSON, every rational is ``{"num": ..., "den": ..., "decimal": ...}``. The decimal has
its repetend in parentheses, so it's lossless, but it's there for reading only.
"""

from __future__ import annotations
from fractions import Fraction
import json
from typing import Any, Optional

from blowdown.kernel.forms import LinearForm
from blowdown.kernel.linalg import RationalMatrix
from blowdown.kernel.rendering import repeating_decimal
from blowdown.kernel.smith import AbelianGroup
from blowdown.plumbing.presentation import format_word, printed_central_relator
from blowdown.plumbing.triviality import TrivialityResult
from blowdown.scenario.pipeline import (
    BlowupResult,
    Certification,
    PlumbingResult,
    Report,
)
from blowdown.surgery.report import SurgeryReport
from blowdown.surgery.symplectic import SignLemmaReport


########################################################################################
####################################### Encoders #######################################
########################################################################################


def encode_rational(value) -> dict[str, Any]:
    value = Fraction(value)
    return {
        "num": value.numerator,
        "den": value.denominator,
        "decimal": repeating_decimal(value),
    }


def encode_matrix(matrix: RationalMatrix) -> list[list[dict[str, Any]]]:
    return [[encode_rational(entry) for entry in row] for row in matrix]


def encode_form(form: LinearForm) -> dict[str, Any]:
    return {
        "constant": encode_rational(form.constant),
        "terms": [
            {"symbol": symbol, "coefficient": encode_rational(coefficient)}
            for symbol, coefficient in form.coefficients
        ],
        "text": str(form),
    }


def encode_group(group: Optional[AbelianGroup]) -> Optional[dict[str, Any]]:
    if group is None:
        return None
    return {
        "invariant_factors": list(group.invariant_factors),
        "free_rank": group.free_rank,
        "order": group.order,
        "text": str(group),
    }


def _certification(certification: Certification) -> dict[str, Any]:
    return {
        "skipped": certification.skipped,
        "incidences": [list(incidence) for incidence in certification.incidences],
        "pairs": [
            {
                "curves": list(pair.curves),
                "contacts": [
                    {"point": point, "contact": contact, "declared": declared}
                    for (point, contact), (_, declared) in zip(
                        pair.audit.contacts, pair.declared
                    )
                ],
                "total": pair.audit.total,
                "bezout": pair.audit.expected,
                "complete": pair.audit.complete,
            }
            for pair in certification.pairs
        ],
    }


def _blowup(blowup: BlowupResult) -> dict[str, Any]:
    config = blowup.configuration
    return {
        "num_blowups": config.num_blowups,
        "states_audited": blowup.num_states_audited,
        "incidence_edges": blowup.num_edges,
        "curves": [
            {
                "name": curve.name,
                "class": str(curve.homology),
                "self_intersection": curve.self_intersection,
            }
            for curve in config.curves
        ],
    }


def _plumbing(plumbing: PlumbingResult) -> dict[str, Any]:
    invariant = plumbing.invariant
    return {
        "vertices": [
            {
                "name": vertex.name,
                "curve": vertex.curve,
                "class": str(vertex.homology),
                "weight": vertex.weight,
            }
            for vertex in plumbing.plumbing.vertices
        ],
        "edges": [list(edge) for edge in plumbing.plumbing.edges],
        "matrix": [[int(entry) for entry in row] for row in plumbing.matrix],
        "determinant": encode_rational(plumbing.determinant),
        "inverse": encode_matrix(plumbing.inverse),
        "negative_definite": plumbing.negative_definite,
        "seifert": {
            "central": invariant.central,
            "pairs": [list(pair) for pair in invariant.pairs],
            "legs": [list(leg.vertices) for leg in invariant.legs],
            "text": str(invariant),
            "e_invariant": encode_rational(plumbing.e_invariant),
        },
        "first_homology": encode_group(plumbing.first_homology),
        "presentation": str(plumbing.presentation),
        "printed_central_relator": format_word(printed_central_relator(invariant)),
        "abelianization": encode_group(plumbing.abelianization),
    }


def _triviality(result: TrivialityResult) -> dict[str, Any]:
    return {
        "trivial": result.trivial,
        "replayed": result.replayed,
        "deductions": [
            {
                "kind": deduction.kind,
                "generator": deduction.generator,
                "value": format_word(deduction.value),
                "reason": deduction.reason,
            }
            for deduction in result.deductions
        ],
        "caveats": list(result.caveats),
        "residual": None if result.residual is None else str(result.residual),
        "abelianization": encode_group(result.abelianization),
    }


def _surgery(surgery: SurgeryReport) -> dict[str, Any]:
    verdict = surgery.verdict
    return {
        "ambient": str(surgery.ambient),
        "euler": surgery.euler,
        "signature": surgery.signature,
        "b2": surgery.b2,
        "b_plus": surgery.b_plus,
        "b_minus": surgery.b_minus,
        "parity": surgery.parity,
        "simply_connected": surgery.certified,
        "connectivity": list(surgery.connectivity.steps),
        "homeomorphism": surgery.homeomorphism_label,
        "standard_product": encode_form(surgery.standard_product),
        "product": encode_form(surgery.product),
        "verdict": surgery.verdict_label,
        "witness": (
            None
            if verdict is None
            else {
                "assignment": {
                    symbol: encode_rational(value) for symbol, value in verdict.witness
                },
                "value": encode_rational(verdict.witness_value),
                "a_coefficient": encode_rational(verdict.a_coefficient),
            }
        ),
    }


def _sign_lemma(report: SignLemmaReport) -> dict[str, Any]:
    return {
        "m": report.m,
        "seed": report.seed,
        "accepted": report.accepted,
        "rejected": report.rejected,
        "max_value": (
            None if report.max_value is None else encode_rational(report.max_value)
        ),
        "holds": report.holds,
    }


def to_document(report: Report) -> dict[str, Any]:
    """
    The report as plain JSON-able data, with stages keyed by name.
    """
    stages: dict[str, Any] = {}
    if report.certification is not None:
        stages["certify"] = _certification(report.certification)
    if report.blowup is not None:
        stages["blowup"] = _blowup(report.blowup)
    if report.plumbing is not None:
        stages["plumbing"] = _plumbing(report.plumbing)
    if report.triviality is not None:
        stages["pi1"] = _triviality(report.triviality)
    if report.surgery is not None:
        stages["surgery"] = _surgery(report.surgery)
    if report.sign_lemma is not None:
        stages["sign-lemma"] = _sign_lemma(report.sign_lemma)
    options = report.options
    return {
        "scenario": report.scenario,
        "options": {
            "seed": options.seed,
            "samples": options.samples,
            "witness_scale": options.witness_scale,
        },
        "stages": stages,
        "expected": report.expected,
        "expectation_met": report.expectation_met,
        "ok": report.ok,
        "provenance": list(report.provenance),
    }


def render_machine(report: Report) -> str:
    """
    Deterministic JSON: sorted keys, no timestamps.
    """
    return json.dumps(to_document(report), indent=2, sort_keys=True) + "\n"


########################################################################################
######################################### Text #########################################
########################################################################################


def _heading(title: str) -> list[str]:
    return ["", title, "-" * len(title)]


def render_text(report: Report) -> str:
    lines = [f"Scenario {report.scenario}"]
    certification = report.certification
    if certification is not None:
        lines += _heading("Certification")
        if certification.skipped:
            lines.append("skipped: no curve equations")
        for pair in certification.pairs:
            contacts = ", ".join(
                f"{contact} at {point}" for point, contact in pair.audit.contacts
            )
            status = "complete" if pair.audit.complete else "incomplete"
            lines.append(
                f"{pair.curves[0]} and {pair.curves[1]}: {contacts}. Bezout "
                f"{pair.audit.total} / {pair.audit.expected} ({status})"
            )
    if report.blowup is not None:
        config = report.blowup.configuration
        lines += _heading(f"Blow-ups ({config.num_blowups})")
        for curve in config.curves:
            if curve.is_exceptional:
                continue
            lines.append(
                f"{curve.name} = {curve.homology}  (self-intersection "
                f"{curve.self_intersection})"
            )
    plumbing = report.plumbing
    if plumbing is not None:
        lines += _heading("Plumbing")
        for vertex in plumbing.plumbing.vertices:
            lines.append(f"{vertex.name} = {vertex.homology}  ({vertex.weight})")
        lines.append(f"det = {plumbing.determinant}")
        lines.append(f"negative definite: {plumbing.negative_definite}")
        lines.append(f"Seifert invariant: {plumbing.invariant}")
        lines.append(f"e = {plumbing.e_invariant}")
        lines.append(f"H_1 of the boundary: {plumbing.first_homology}")
        lines.append(f"pi_1 of the boundary: {plumbing.presentation}")
        printed = format_word(printed_central_relator(plumbing.invariant))
        lines.append(f"central relator as printed: {printed}")
    if report.triviality is not None:
        lines += _heading("Fundamental group of the complement")
        lines += [f"{deduction}" for deduction in report.triviality.deductions]
        lines += [f"caveat: {caveat}" for caveat in report.triviality.caveats]
        if report.triviality.trivial:
            lines.append("image of pi_1 of the boundary is trivial (replayed)")
        else:
            lines.append(f"stalled at {report.triviality.residual}")
    surgery = report.surgery
    if surgery is not None:
        lines += _heading("Rational blowdown")
        lines.append(f"chi = {surgery.euler}, sigma = {surgery.signature}")
        lines.append(
            f"b2 = {surgery.b2}, b+ = {surgery.b_plus}, b- = {surgery.b_minus}, "
            f"parity {surgery.parity}"
        )
        lines += [f"  {step}" for step in surgery.connectivity.steps]
        lines.append(f"homeomorphic to {surgery.homeomorphism_label}")
        lines.append(f"K . omega = {surgery.standard_product}")
        lines.append(f"K_X . omega_X = {surgery.product}")
        if surgery.verdict is not None:
            lines.append(
                f"witness value {repeating_decimal(surgery.verdict.witness_value)}"
            )
        lines.append(f"verdict: {surgery.verdict_label}")
    if report.sign_lemma is not None:
        sign_lemma = report.sign_lemma
        lines += _heading("Sign lemma")
        lines.append(
            f"m = {sign_lemma.m}: {sign_lemma.accepted} accepted, "
            f"{sign_lemma.rejected} rejected, max {sign_lemma.max_value}, "
            f"{'holds' if sign_lemma.holds else 'FAILS'}"
        )
    if report.expected is not None:
        lines.append("")
        met = "met" if report.expectation_met else "NOT met"
        lines.append(f"expected {report.expected}: {met}")
    return "\n".join(lines) + "\n"
