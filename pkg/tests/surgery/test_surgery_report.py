"""
Unit tests `blowdown.surgery.report`.
"""

from __future__ import annotations
import os
import sys

import pytest

from blowdown.plumbing.seifert import SeifertInvariant
from blowdown.scenario import expected
from blowdown.surgery.accounting import AmbientManifold, InadmissibleBlowdownError
from blowdown.surgery.report import surgery_report

# sys hack to import from parent
sys.path.insert(1, os.path.join(sys.path[0], ".."))
import _paper


@pytest.mark.parametrize("name", _paper.BUILTINS)
def test_surgery_report(name: str):
    report = _paper.report(name).surgery
    assert report.ambient == AmbientManifold(expected.NUM_BLOWUPS[name])
    assert (report.euler, report.signature) == expected.EULER_SIGNATURE[name]
    assert report.b2 == report.b_plus + report.b_minus
    assert report.b_plus == 1
    assert report.parity == "odd"
    assert report.certified
    assert report.homeomorphism_label == expected.HOMEOMORPHISM[name]
    assert report.verdict_label == expected.VERDICT[name]
    assert report.product.coefficient("a") == expected.FINAL_COEFFICIENTS[name][0]


@pytest.mark.parametrize("name", _paper.BUILTINS)
def test_surgery_report_uncertified(name: str):
    result = _paper.report(name).plumbing
    report = surgery_report(
        result.plumbing,
        result.invariant,
        AmbientManifold(expected.NUM_BLOWUPS[name]),
        triviality=None,
    )
    assert not report.certified
    assert report.homeomorphism_label == f"candidate {expected.HOMEOMORPHISM[name]}"
    assert report.verdict is None
    assert report.verdict_label == "inconclusive"
    # the forms don't depend on simple connectivity
    assert report.product == _paper.report(name).surgery.product


def test_surgery_report_inadmissible():
    result = _paper.report(_paper.B4).plumbing
    with pytest.raises(InadmissibleBlowdownError):
        surgery_report(
            result.plumbing,
            SeifertInvariant(central=1, pairs=((2, 1), (2, 1))),
            AmbientManifold(16),
            triviality=None,
        )


def test_witness_scale():
    result = _paper.report(_paper.B4)
    report = surgery_report(
        result.plumbing.plumbing,
        result.plumbing.invariant,
        AmbientManifold(16),
        result.triviality,
        witness_scale=1,
    )
    coefficients = expected.FINAL_COEFFICIENTS[_paper.B4]
    assert report.verdict.witness_value == coefficients[0] + sum(coefficients[1:]) / 16
