"""
Tests for the theorem_suite module.
"""

import sys
import json
import tempfile
from pathlib import Path
from unittest import mock

import pytest

# Add the parent directory to the Python path
sys.path.insert(0, str(Path(__file__).parent.parent))

from leibalg.catalog_io import get_algebra
from leibalg.exceptions import InvariantViolation, LeibalgError
from leibalg.theorem_suite import (
    REFUTED,
    SKIPPED,
    VERIFIED,
    TheoremSuite,
    membership_defect,
    refuted,
    run_pair_suite,
    run_suite,
    run_tensor_suite,
    skipped,
    suite_exit_code,
    verified,
)
from leibalg.utils.exact_linalg import Matrix


def by_id(reports):
    return {r.id: r for r in reports}


def test_report_constructors():
    """Test verdict helpers and the exit code."""
    ok = verified("a", {"x": 1})
    off = skipped("b", "not applicable")
    bad = refuted("c", {"map": [["1"]]})

    assert ok.verdict == VERIFIED and ok.applicable
    assert off.verdict == SKIPPED and not off.applicable
    assert bad.verdict == REFUTED and bad.refuted
    assert suite_exit_code([ok, off]) == 0
    assert suite_exit_code([ok, bad]) == 1
    assert set(bad.as_dict()) == {"id", "applicable", "reason", "verdict", "dims", "witnesses"}


def test_refutation_needs_witness():
    """Test that a refutation without a witness is rejected."""
    with pytest.raises(InvariantViolation):
        refuted("c", {})


def test_membership_defect():
    """Test defects for identity-defined and existential spaces."""
    g = get_algebra("L1")

    assert membership_defect(g, "der", Matrix.unit(2, 2, 0, 0)) is None
    defect = membership_defect(g, "der", Matrix.identity(2))
    assert defect["pair"] == ["e", "f"]
    assert membership_defect(g, "qder", Matrix([[1, 1], [0, 0]])) is not None
    assert membership_defect(g, "gender", Matrix([[1, 1], [0, 0]])) is None

    with pytest.raises(LeibalgError):
        membership_defect(g, "bogus", Matrix.identity(2))


def test_centroid_intersection_holds_on_l1():
    """Test Gamma^Lie = QDer cap QGamma for L1."""
    reports = by_id(run_suite(get_algebra("L1"), ("s4",)))

    assert reports["thm-4-centroid-eq-qder-cap-qcentroid"].verdict == VERIFIED
    assert reports["prop-4-tower"].verdict == VERIFIED
    assert reports["thm-4-centroid-in-qder-qcentroid"].verdict == VERIFIED


def test_centroid_intersection_refuted_on_l2():
    """Test that L2 refutes Gamma^Lie = QDer cap QGamma with a checkable witness."""
    reports = run_suite(get_algebra("L2"), ("s4",))
    report = by_id(reports)["thm-4-centroid-eq-qder-cap-qcentroid"]

    assert report.verdict == REFUTED
    assert report.dims == {"centroid": 2, "qder_cap_qcentroid": 3}
    assert {"map", "f_prime", "pair", "residual"} <= set(report.witnesses)
    assert suite_exit_code(reports) == 1


def test_section_3_on_l1():
    """Test the centre and centroid statements on L1."""
    reports = by_id(run_suite(get_algebra("L1"), ("s3",)))

    assert reports["remark-identity"].verdict == VERIFIED
    assert reports["prop-ann-gamma2"].verdict == VERIFIED
    assert reports["thm-3-decomposition"].dims == {"centroid": 1, "der_z": 0, "psi": 1}
    assert reports["prop-3-idempotents"].verdict == VERIFIED
    assert reports["prop-3-invariant-forms"].dims["forms"] == 1


def test_idempotents_skipped_when_abelian():
    """Test that the idempotent check needs gamma_2 != 0."""
    reports = by_id(run_suite(get_algebra("ABEL2"), ("s3",)))

    assert reports["prop-3-idempotents"].verdict == SKIPPED


def test_section_5_on_n2c():
    """Test the almost inner statements on N2c."""
    reports = by_id(run_suite(get_algebra("N2c"), ("s5",)))

    assert reports["prop-5-class-2-t-c"].verdict == VERIFIED
    assert reports["prop-5-class-2-t-c"].dims == {"der_c": 2, "t_c": 2}
    assert reports["thm-5-equal"].verdict == VERIFIED
    assert reports["thm-5-equal"].witnesses["der_c_equals_der_z"] is True
    assert reports["thm-5-equal"].witnesses["iso_interpretation"] == "dimension equality"
    assert reports["cor-5-10"].verdict == VERIFIED


def test_section_5_on_n2b():
    """Test the almost inner statements on N2b."""
    reports = by_id(run_suite(get_algebra("N2b"), ("s5",)))

    assert reports["thm-5-equal"].verdict == VERIFIED
    assert reports["thm-5-equal"].witnesses["der_c_equals_der_z"] is False
    assert reports["cor-5-10"].verdict == SKIPPED
    assert reports["prop-5-ider-in-der-c"].verdict == VERIFIED


def test_section_5_on_l1():
    """Test that L1 is outside the class 2 and inner-derivation hypotheses."""
    reports = by_id(run_suite(get_algebra("L1"), ("s5",)))

    assert reports["prop-5-class-2-t-c"].verdict == SKIPPED
    assert reports["prop-5-ider-in-der-c"].verdict == SKIPPED
    assert reports["thm-5-equal"].verdict == SKIPPED


def test_unknown_section():
    """Test that an unknown section is rejected."""
    with pytest.raises(LeibalgError):
        run_suite(get_algebra("L1"), ("s9",))


def test_tensor_suite_unital():
    """Test the tensor statements on A4 (x) L1'."""
    reports = by_id(run_tensor_suite(get_algebra("A4"), get_algebra("L1'")))

    assert reports["thm-6-tensor-centroid"].verdict == VERIFIED
    assert reports["thm-6-tensor-centroid"].dims["centroid_product"] == 2
    assert reports["prop-6-sigma-iso"].verdict == VERIFIED
    assert reports["lemma-6-fiber-components"].verdict == VERIFIED
    assert reports["prop-6-gamma2"].verdict == VERIFIED
    assert reports["thm-6-polynomial-ring"].verdict == SKIPPED
    assert reports["remark-6-non-unital-strict"].verdict == SKIPPED
    assert reports["prop-6-finite-image"].verdict == SKIPPED


def test_tensor_suite_non_unital():
    """Test the tensor statements on B4 (x) OM5."""
    reports = by_id(run_tensor_suite(get_algebra("B4"), get_algebra("OM5")))

    assert reports["remark-6-non-unital-strict"].verdict == VERIFIED
    assert "outside_embedded" in reports["remark-6-non-unital-strict"].witnesses
    assert reports["thm-6-tensor-centroid"].verdict == SKIPPED
    assert "unital" in reports["thm-6-tensor-centroid"].reason
    assert reports["prop-6-gamma2"].verdict == SKIPPED
    assert reports["prop-6-gamma2"].witnesses == {"equal": False}


def test_tensor_suite_polynomial():
    """Test the truncated polynomial ring statement."""
    reports = by_id(run_tensor_suite(get_algebra("TK3"), get_algebra("OM5")))

    report = reports["thm-6-polynomial-ring"]
    assert report.verdict == VERIFIED
    assert report.witnesses["finite_shadow"] is True
    assert report.dims["centroid_product"] == 3


def test_pair_suite_with_zero_centre():
    """Test direct sums whose Lie-centre vanishes."""
    reports = run_pair_suite(get_algebra("L1"), get_algebra("L1"))
    verdicts = {r.id: r.verdict for r in reports}

    assert list(verdicts) == ["lemma-2-i"] + [f"lemma-2-ii-{c}" for c in "abcde"]
    assert set(verdicts.values()) == {VERIFIED}
    assert by_id(reports)["lemma-2-ii-d"].dims == {"sum": 2, "block": 2}


def test_pair_suite_with_nonzero_centre():
    """Test that the space statements are skipped when Z_Lie(sum) != 0."""
    reports = by_id(run_pair_suite(get_algebra("L2"), get_algebra("L1")))

    assert reports["lemma-2-i"].verdict == VERIFIED
    assert reports["lemma-2-ii-a"].verdict == SKIPPED
    assert reports["lemma-2-ii-a"].dims == {"z_lie": 1}


def test_evaluate_maps_errors():
    """Test how exceptions inside a check become verdicts."""
    suite = TheoremSuite()

    def violation(rid):
        raise InvariantViolation("two computations disagree")

    def failure(rid):
        raise LeibalgError("cannot evaluate")

    assert suite._evaluate("x", violation).witnesses == {"violation": "two computations disagree"}
    report = suite._evaluate("y", failure)
    assert report.verdict == SKIPPED
    assert report.reason == "evaluation failed: cannot evaluate"


def test_save_results_and_console():
    """Test the JSON results file and the console mirror."""
    console = mock.MagicMock()
    logger = mock.MagicMock()
    suite = TheoremSuite(logger=logger, console=console)
    suite.run_pair_suite(get_algebra("L1"), get_algebra("L1"))

    assert console.print.called
    assert logger.info.called

    with tempfile.TemporaryDirectory() as temp_dir:
        path = suite.save_results(Path(temp_dir) / "results.json")
        with open(path) as f:
            data = json.load(f)

    assert suite.results_file == path
    assert len(data) == 6
    assert data[0]["id"] == "lemma-2-i"
