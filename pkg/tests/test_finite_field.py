"""
Tests for the finite_field module.
"""

import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

# Add the parent directory to the Python path
sys.path.insert(0, str(Path(__file__).parent.parent))

from leibalg.catalog_io import get_algebra
from leibalg.exceptions import FieldMismatchError, LeibalgError
from leibalg.utils.exact_linalg import FieldSpec, Matrix, Subspace
from leibalg.utils.finite_field import (
    all_points,
    batched_rank,
    brute_force_centres,
    check_operator_identity_mod_p,
    lie_structure_array,
    pointwise_image_check,
    reduce_matrix,
    reduce_scalar,
    reduce_subspace,
    usable_primes,
)

F3 = FieldSpec.prime(3)
F5 = FieldSpec.prime(5)


def test_reduce_scalar():
    """Test reducing rationals modulo p."""
    assert reduce_scalar(Fraction(1, 2), 5) == 3
    assert reduce_scalar(-1, 3) == 2

    with pytest.raises(FieldMismatchError):
        reduce_scalar(Fraction(1, 5), 5)


def test_reduce_matrix_over_wrong_prime():
    """Test that a matrix over F_5 cannot be read mod 3."""
    with pytest.raises(FieldMismatchError):
        reduce_matrix(Matrix.identity(2, F5), 3)


def test_usable_primes():
    """Test that primes dividing a denominator are skipped."""
    assert usable_primes(3, Matrix([[Fraction(1, 3)]])) == [5, 7, 11]
    assert usable_primes(3, Matrix.identity(2)) == [3, 5, 7]
    assert usable_primes(3, Matrix.identity(2, F5)) == [5]


def test_all_points():
    """Test enumerating F_p^n."""
    points = all_points(2, 3)

    assert points.shape == (9, 2)
    assert len({tuple(p) for p in points.tolist()}) == 9


def test_lie_structure_array():
    """Test the symmetrised structure constants of L1."""
    lie = lie_structure_array(get_algebra("L1"), 3)

    assert lie[0, 1, 0] == 1
    assert lie[1, 0, 0] == 1
    assert not lie[0, 0].any()


def test_batched_rank():
    """Test ranks of a stack of matrices mod 5."""
    stack = np.array([[[1, 2], [2, 4]], [[1, 0], [0, 1]], [[0, 0], [0, 0]]], dtype=np.int64)

    assert batched_rank(stack, 5).tolist() == [1, 2, 0]


def test_operator_identity_derivation():
    """Test the derivation identity on L1 mod 3."""
    g = get_algebra("L1")

    assert check_operator_identity_mod_p(g, "der", Matrix.unit(2, 2, 0, 0), 3) is None

    failure = check_operator_identity_mod_p(g, "der", Matrix.identity(2), 3)
    assert failure is not None
    assert failure["p"] == 3


def test_operator_identity_centroid():
    """Test that the identity is in the Lie-centroid of L1."""
    g = get_algebra("L1")

    assert check_operator_identity_mod_p(g, "centroid", Matrix.identity(2), 3) is None
    assert check_operator_identity_mod_p(g, "centroid", Matrix.unit(2, 2, 0, 0), 3) is not None


def test_operator_identity_unknown_kind():
    """Test that an unknown kind is rejected."""
    with pytest.raises(LeibalgError):
        check_operator_identity_mod_p(get_algebra("L1"), "bogus", Matrix.identity(2), 3)


def test_pointwise_image_check():
    """Test the almost inner condition d(x) in [x, g]_Lie."""
    e12 = Matrix.unit(2, 2, 0, 1)

    assert pointwise_image_check(get_algebra("L2"), e12, 3) is None

    failure = pointwise_image_check(get_algebra("L1"), Matrix.identity(2), 3)
    assert failure is not None
    assert failure["p"] == 3


def test_brute_force_centres():
    """Test enumerated centres of L1 over F_3."""
    centres = brute_force_centres(get_algebra("L1"), 3)

    assert centres["z_lie"].is_zero()
    assert centres["z_right"] == Subspace.span([(1, 0)], 2, F3)
    assert centres["z_left"] == Subspace.span([(0, 1)], 2, F3)
    assert centres["z"].is_zero()


def test_reduce_subspace():
    """Test reducing a rational subspace mod p."""
    space = Subspace.span([(1, Fraction(1, 2))], 2)

    assert reduce_subspace(space, 3) == Subspace.span([(1, 2)], 2, F3)
