"""
Tests for the quick_check CLI module.
"""

import sys
from pathlib import Path
from unittest.mock import patch

import pytest

# Add the parent directory to the Python path
sys.path.insert(0, str(Path(__file__).parent.parent))

from leibalg.cli.quick_check import (
    CHECK_TITLES,
    check_centre_oracle,
    check_golden_bases,
    check_non_unital_strict,
    check_om5,
    check_quasi_examples,
    check_tensor_example,
    main,
    parse_args,
    run_quick_check,
)
from leibalg.utils.exact_linalg import FieldSpec, Subspace

CHECKS = [
    "check_golden_dimensions",
    "check_golden_bases",
    "check_quasi_examples",
    "check_om5",
    "check_tensor_example",
    "check_polynomial_tensor",
    "check_non_unital_strict",
    "check_almost_inner",
    "check_centre_oracle",
]


def patch_checks(statuses=None):
    """Patch every check to return 'ok' unless overridden by name."""
    statuses = statuses or {}
    patchers = []
    for name in CHECKS:
        status = statuses.get(name, "ok")
        result = {"status": status}
        if status != "ok":
            result["message"] = f"{name} failed"
        patchers.append(patch(f"leibalg.cli.quick_check.{name}", return_value=result))
    return patchers


def start(patchers):
    return [p.start() for p in patchers]


def stop(patchers):
    for p in patchers:
        p.stop()


def test_parse_args():
    """Test argument parsing."""
    args = parse_args(["--seed", "7", "--verbose"])
    assert args.seed == 7
    assert args.verbose is True

    args = parse_args([])
    assert args.seed == 0
    assert args.verbose is False


def test_check_golden_bases():
    """Test the L2 bases."""
    assert check_golden_bases() == {"status": "ok"}


def test_check_quasi_examples():
    """Test the L1 quasi-centroid and quasi-derivation examples."""
    result = check_quasi_examples()

    assert result["status"] == "ok"
    assert result["qcentroid_dim"] == 3
    assert result["qder_dim"] == 2
    assert result["gender_dim"] == 4


def test_check_om5():
    """Test gamma_2 and the Lie-centroid of OM5."""
    result = check_om5()

    assert result["status"] == "ok"
    assert result["gamma2_dim"] == 2
    assert result["centroid_dim"] == 1


def test_check_tensor_example():
    """Test A4 (x) L1'."""
    result = check_tensor_example()

    assert result["status"] == "ok"
    assert result["equal"] is True


def test_check_non_unital_strict():
    """Test that B4 (x) OM5 shows the strict inclusion."""
    result = check_non_unital_strict()

    assert result["status"] == "ok"
    assert result["equal"] is False


def test_check_centre_oracle():
    """Test the rational centres read mod 5 against enumeration."""
    result = check_centre_oracle()

    assert result["status"] == "ok"
    assert result["prime"] == 5
    assert "OM5" in result["algebras"]


@patch("leibalg.cli.quick_check.brute_force_centres")
def test_check_centre_oracle_mismatch(mock_brute_force):
    """Test the error when enumeration finds a different centre."""
    zero = Subspace.zero(2, FieldSpec.prime(5))
    mock_brute_force.return_value = {"z_lie": zero, "z_left": zero, "z_right": zero, "z": zero}

    result = check_centre_oracle()
    assert result["status"] == "error"
    assert "z_right(L1) mod 5" in result["message"]


@patch("leibalg.cli.quick_check._compare")
def test_check_non_unital_strict_warning(mock_compare):
    """Test the warning when pure tensors exhaust the centroid."""
    mock_compare.return_value = {"dims": {}, "applicable": False, "equal": True, "status": "ok"}

    assert check_non_unital_strict()["status"] == "warning"


@patch("leibalg.cli.quick_check._compare")
def test_check_tensor_example_mismatch(mock_compare):
    """Test the error when the tensor example does not match."""
    mock_compare.return_value = {
        "dims": {"centroid_product": 2}, "applicable": True, "equal": False, "status": "ok"
    }

    result = check_tensor_example()
    assert result["status"] == "error"
    assert "hypotheses" in result["message"]


@pytest.mark.parametrize(
    "statuses, expected",
    [
        ({}, "ok"),
        ({"check_om5": "warning"}, "warning"),
        ({"check_om5": "warning", "check_almost_inner": "error"}, "error"),
    ],
)
def test_run_quick_check(statuses, expected):
    """Test the overall status aggregation."""
    patchers = patch_checks(statuses)
    mocks = start(patchers)
    try:
        results = run_quick_check(seed=5)
    finally:
        stop(patchers)

    assert results["status"] == expected
    assert set(CHECK_TITLES) <= set(results)
    mocks[0].assert_called_once_with(5)
    mocks[CHECKS.index("check_almost_inner")].assert_called_once_with(5)


def test_main_ok(capsys):
    """Test main output and exit code when everything passes."""
    patchers = patch_checks()
    start(patchers)
    try:
        with pytest.raises(SystemExit) as excinfo:
            main([])
    finally:
        stop(patchers)

    out = capsys.readouterr().out
    assert excinfo.value.code == 0
    assert "Running quick check on the catalog..." in out
    assert "  Golden Dimensions: OK" in out
    assert "Overall Status: OK" in out
    assert "Detailed Results:" not in out


def test_main_error_verbose(capsys):
    """Test main output and exit code on a failing check."""
    patchers = patch_checks({"check_golden_bases": "error"})
    start(patchers)
    try:
        with pytest.raises(SystemExit) as excinfo:
            main(["--verbose"])
    finally:
        stop(patchers)

    out = capsys.readouterr().out
    assert excinfo.value.code == 1
    assert "  Golden Bases: ERROR" in out
    assert "    - check_golden_bases failed" in out
    assert "Overall Status: ERROR" in out
    assert "Detailed Results:" in out
