"""
Integration tests for Lie-centroids of tensor products.
"""

import sys
from pathlib import Path

import pytest

# Add the parent directory to the Python path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from leibalg.catalog_io import get_algebra, random_variant
from leibalg.tensor_product import tensor_centroid_compare, tensor_gamma2
from leibalg.theorem_suite import REFUTED, run_tensor_suite


@pytest.mark.integration
@pytest.mark.parametrize("assoc", ["A4", "TK2"])
@pytest.mark.parametrize("leibniz", ["L1", "L1'"])
def test_unital_products_split(assoc, leibniz):
    """Test Gamma^Lie(A (x) g) = Gamma(A) (x) K id under the hypotheses."""
    A = get_algebra(assoc)
    comparison = tensor_centroid_compare(A, get_algebra(leibniz))

    assert comparison.applicable
    assert comparison.equal
    assert comparison.centroid.dim == A.dim
    assert comparison.mixed <= comparison.centroid


@pytest.mark.integration
def test_product_with_rebased_factor():
    """Test that re-basing the Leibniz factor keeps the comparison."""
    variant, _ = random_variant(get_algebra("L1"), 4)
    comparison = tensor_centroid_compare(get_algebra("A4"), variant)

    assert comparison.applicable
    assert comparison.centroid.dim == 2


@pytest.mark.integration
def test_product_outside_hypotheses():
    """Test a factor with a non-scalar Lie-centroid."""
    comparison = tensor_centroid_compare(get_algebra("TK2"), get_algebra("L2"))

    assert not comparison.hypotheses["centroid_scalar"]
    assert not comparison.applicable
    assert comparison.embedded <= comparison.centroid


@pytest.mark.integration
@pytest.mark.parametrize("assoc", ["TK2", "TK3"])
def test_gamma2_of_unital_products(assoc):
    """Test gamma_2(A (x) g) = A (x) gamma_2(g) with a unit."""
    result = tensor_gamma2(get_algebra(assoc), get_algebra("OM5"))

    assert result.unital
    assert result.equal


@pytest.mark.integration
@pytest.mark.slow
@pytest.mark.parametrize("assoc, leibniz", [("A4", "L1'"), ("TK2", "L1"), ("B4", "OM5")])
def test_tensor_suite_never_refutes(assoc, leibniz):
    """Test the tensor statements on unital and non-unital factors."""
    reports = run_tensor_suite(get_algebra(assoc), get_algebra(leibniz))

    assert all(r.verdict != REFUTED for r in reports)
