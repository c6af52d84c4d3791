"""
Tests for the exact_linalg module.
"""

import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add the parent directory to the Python path
sys.path.insert(0, str(Path(__file__).parent.parent))

from leibalg.exceptions import (
    DimensionMismatchError,
    FieldMismatchError,
    InvalidFieldError,
    InvalidRangeError,
    LeibalgError,
    ParseError,
)
from leibalg.utils.exact_linalg import (
    QQ,
    FieldSpec,
    Matrix,
    Subspace,
    inverse,
    is_invertible,
    nullspace,
    project_kernel,
    rref,
    solve_affine,
    solve_and_project,
    subspace_intersect,
    subspace_sum,
)

F7 = FieldSpec.prime(7)

small_ints = st.integers(min_value=-4, max_value=4)
square_3x3 = st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=3, max_size=3)


def test_field_parse():
    """Test parsing field descriptors."""
    assert FieldSpec.parse("Q") == QQ
    assert FieldSpec.parse("rational") == QQ
    assert FieldSpec.parse("fp:7") == F7
    assert F7.describe() == "fp:7"
    assert QQ.describe() == "Q"


@pytest.mark.parametrize("text", ["fp:2", "fp:9", "fp:x", "R", "fp:"])
def test_field_parse_rejects(text):
    """Test that even characteristic, composites and junk are rejected."""
    with pytest.raises(InvalidFieldError):
        FieldSpec.parse(text)


def test_convert_rational():
    """Test converting coefficients over Q."""
    assert QQ.convert("3/6") == Fraction(1, 2)
    assert QQ.convert(-2) == Fraction(-2)
    assert QQ.format(Fraction(-4, 6)) == "-2/3"

    with pytest.raises(ParseError):
        QQ.convert("1.5")
    with pytest.raises(ParseError):
        QQ.convert(0.5)
    with pytest.raises(ParseError):
        QQ.convert("1/0")


def test_convert_prime():
    """Test reducing coefficients modulo p."""
    assert F7.convert("1/2") == 4
    assert F7.convert(-1) == 6
    assert F7.inverse(3) == 5

    with pytest.raises(FieldMismatchError):
        F7.convert("1/7")


def test_matrix_basics():
    """Test construction, products and vectorization."""
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix.identity(2)

    assert a @ b == a
    assert (a - a).is_zero()
    assert a.transpose() == Matrix([[1, 3], [2, 4]])
    assert a.apply((1, 1)) == (3, 7)
    assert a.vectorize() == (1, 3, 2, 4)
    assert Matrix.from_vector(a.vectorize(), 2) == a
    assert a.scale("1/2")[1, 1] == 2
    assert a.to_strings() == [["1", "2"], ["3", "4"]]


def test_matrix_shape_errors():
    """Test that mismatched shapes and fields raise."""
    with pytest.raises(DimensionMismatchError):
        Matrix([[1, 2], [3]])
    with pytest.raises(DimensionMismatchError):
        Matrix.identity(2) @ Matrix.identity(3)
    with pytest.raises(FieldMismatchError):
        Matrix.identity(2) + Matrix.identity(2, F7)


def test_kron_index_convention():
    """Test that row i * rows(other) + k carries a_ij * b_kl."""
    a = Matrix([[1, 2], [0, 1]])
    b = Matrix([[0, 1], [1, 0]])
    k = a.kron(b)

    assert k.shape == (4, 4)
    assert k[0 * 2 + 0, 1 * 2 + 1] == 2
    assert k[1 * 2 + 1, 1 * 2 + 0] == 1
    assert k[1 * 2 + 0, 0 * 2 + 1] == 0


def test_rref_and_rank():
    """Test the reduced row echelon form."""
    m = Matrix([[2, 4, 2], [1, 2, 3], [0, 0, 0]])
    reduced, rank = rref(m)

    assert rank == 2
    assert reduced == Matrix([[1, 2, 0], [0, 0, 1], [0, 0, 0]])


def test_nullspace():
    """Test the kernel of a rank-deficient matrix."""
    kernel = nullspace(Matrix([[1, 1, 0], [0, 0, 1]]))

    assert kernel.dim == 1
    assert kernel.contains((1, -1, 0))
    assert not kernel.contains((1, 0, 0))


def test_subspace_lattice():
    """Test sums, intersections and inclusion."""
    xy = Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
    yz = Subspace.span([(0, 1, 0), (0, 0, 1)], 3)

    assert subspace_sum(xy, yz) == Subspace.full(3)
    assert subspace_intersect(xy, yz) == Subspace.span([(0, 5, 0)], 3)
    assert (xy & yz) <= xy
    assert not xy <= yz
    assert xy.annihilator() == Subspace.span([(0, 0, 1)], 3)
    assert xy.complement_coordinates() == (2,)


def test_subspace_coordinates():
    """Test coordinates and recombination in the RREF basis."""
    space = Subspace.span([(1, 1, 0), (0, 1, 1)], 3)
    vector = (Fraction(2), Fraction(5), Fraction(3))

    coordinates = space.coordinates(vector)
    assert space.combination(coordinates) == vector

    with pytest.raises(DimensionMismatchError):
        space.coordinates((1, 0, 0))


def test_inverse():
    """Test exact inversion."""
    m = Matrix([[2, 1], [1, 1]])

    assert inverse(m) == Matrix([[1, -1], [-1, 2]])
    assert is_invertible(m)
    assert not is_invertible(Matrix([[1, 2], [2, 4]]))

    with pytest.raises(LeibalgError):
        inverse(Matrix([[1, 2], [2, 4]]))


def test_inverse_mod_p():
    """Test inversion over F_7."""
    m = Matrix([[3, 0], [0, 5]], F7)

    assert inverse(m) == Matrix([[5, 0], [0, 3]], F7)


def test_project_kernel():
    """Test projecting a kernel onto a coordinate block."""
    # x0 + x2 = 0, x1 - x3 = 0
    rows = [{0: 1, 2: 1}, {1: 1, 3: -1}]

    assert project_kernel(rows, 4, range(0, 2)) == Subspace.full(2)
    assert project_kernel([{0: 1}, {1: 1}], 4, range(0, 2)).is_zero()

    with pytest.raises(InvalidRangeError):
        project_kernel(rows, 4, range(2, 6))


def test_solve_and_project():
    """Test projecting the nullspace of a matrix."""
    assert solve_and_project(Matrix([[0, 0, 0]]), range(0, 2)) == Subspace.full(2)

    # x - y = 0
    diagonal = Matrix([[1, -1, 0]])
    assert solve_and_project(diagonal, range(0, 2)) == Subspace.span([(1, 1)], 2)
    assert solve_and_project(diagonal, range(0, 1)) == Subspace.full(1)

    with pytest.raises(InvalidRangeError):
        solve_and_project(diagonal, range(1, 4))


def test_solve_affine():
    """Test solving an inhomogeneous system."""
    # x + y = 3, y = 1
    assert solve_affine([{0: 1, 1: 1}, {1: 1}], [3, 1], 2) == (2, 1)
    # x = 1, x = 2
    assert solve_affine([{0: 1}, {0: 1}], [1, 2], 1) is None


@settings(max_examples=50, deadline=None)
@given(square_3x3)
def test_inverse_property(rows):
    """An invertible matrix times its inverse is the identity."""
    m = Matrix(rows)
    if is_invertible(m):
        assert m @ inverse(m) == Matrix.identity(3)
    else:
        assert m.rank() < 3


@settings(max_examples=50, deadline=None)
@given(square_3x3)
def test_rank_nullity_property(rows):
    """rank + nullity equals the number of columns."""
    m = Matrix(rows)
    assert m.rank() + nullspace(m).dim == 3
