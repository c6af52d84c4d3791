"""
Tests for the tensor_product module.
"""

import sys
from pathlib import Path

import pytest

# Add the parent directory to the Python path
sys.path.insert(0, str(Path(__file__).parent.parent))

from leibalg.catalog_io import get_algebra
from leibalg.exceptions import FieldMismatchError, PreconditionError
from leibalg.utils.exact_linalg import FieldSpec, Matrix
from leibalg.operator_spaces import OperatorSpace
from leibalg.tensor_product import (
    assoc_centroid,
    embed_tensor_operator,
    multiplication_operators,
    sigma_map,
    tensor_algebra,
    tensor_centroid_compare,
    tensor_fiber_components,
    tensor_gamma2,
)


@pytest.fixture
def a4():
    return get_algebra("A4")


@pytest.fixture
def l1p():
    return get_algebra("L1'")


def test_tensor_algebra_table(a4, l1p):
    """Test [a (x) x, b (x) y] = ab (x) [x, y] on the A-major basis."""
    tensor = tensor_algebra(a4, l1p)

    assert tensor.dim == 4
    assert tensor.algebra.basis_names[tensor.index(1, 0)] == "e2⊗a1"
    # [e1 (x) a1, e2 (x) a2] = e2 (x) a1
    x = tensor.algebra.basis_vector(tensor.index(0, 0))
    y = tensor.algebra.basis_vector(tensor.index(1, 1))
    assert tensor.algebra.bracket(x, y) == tensor.algebra.basis_vector(tensor.index(1, 0))
    # e2 e2 = 0
    z = tensor.algebra.basis_vector(tensor.index(1, 0))
    assert not any(tensor.algebra.bracket(z, y))


def test_tensor_field_mismatch(l1p):
    """Test that both factors must share the field."""
    with pytest.raises(FieldMismatchError):
        tensor_algebra(get_algebra("A4", FieldSpec.prime(5)), l1p)


def test_assoc_centroid(a4):
    """Test Gamma(A4) = {[[l, 0], [m, l]]} = span of the multiplications."""
    centroid = assoc_centroid(a4)
    ops = multiplication_operators(a4)

    assert ops == [Matrix.identity(2), Matrix.unit(2, 2, 1, 0)]
    assert centroid == OperatorSpace.span(ops, 2, a4.field)


def test_sigma_map(a4):
    """Test that evaluation at the unit is bijective for A4."""
    sigma = sigma_map(a4)

    assert sigma["rank"] == 2
    assert sigma["bijective"]

    with pytest.raises(PreconditionError):
        sigma_map(get_algebra("B4"))


def test_embed_tensor_operator():
    """Test that f (x) phi is the Kronecker product."""
    f = Matrix([[1, 2], [0, 1]])
    phi = Matrix([[0, 1], [1, 0]])

    assert embed_tensor_operator(f, phi) == f.kron(phi)


def test_compare_unital_example(a4, l1p):
    """Test Gamma^Lie(A4 (x) L1') = Gamma(A4) (x) K id."""
    comparison = tensor_centroid_compare(a4, l1p)

    assert comparison.applicable
    assert comparison.equal
    assert comparison.witness is None
    assert comparison.dims()["centroid_product"] == 2
    assert comparison.dims()["embedded"] == 2


def test_compare_polynomial_ring():
    """Test K[t]/(t^3) (x) OM5."""
    comparison = tensor_centroid_compare(get_algebra("TK3"), get_algebra("OM5"))

    assert comparison.applicable
    assert comparison.centroid.dim == 3


def test_compare_non_unital_strict():
    """Test that pure tensors miss part of the centroid without a unit."""
    comparison = tensor_centroid_compare(get_algebra("B4"), get_algebra("OM5"))

    assert not comparison.hypotheses["unital"]
    assert not comparison.applicable
    assert not comparison.equal
    assert comparison.witness is not None
    assert not comparison.embedded.contains(comparison.witness)
    assert comparison.embedded <= comparison.centroid


def test_fiber_components(a4, l1p):
    """Test splitting phi(1 (x) x) into components in Gamma^Lie(g)."""
    components = tensor_fiber_components(a4, l1p, Matrix.identity(4))

    assert components[0] == Matrix.identity(2)
    assert components[1].is_zero()

    with pytest.raises(PreconditionError):
        tensor_fiber_components(a4, l1p, Matrix.unit(4, 4, 0, 1))


def test_tensor_gamma2(l1p):
    """Test gamma_2 of a tensor product with and without a unit."""
    unital = tensor_gamma2(get_algebra("TK2"), l1p)
    assert unital.equal

    result = tensor_gamma2(get_algebra("B4"), get_algebra("OM5"))
    assert not result.unital
    assert result.direct.dim == 4
    assert result.block.dim == 6
    assert not result.equal
