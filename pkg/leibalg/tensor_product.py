"""
Module for tensor products A (x) g of a commutative associative algebra A with
a Leibniz algebra g.

The basis of A (x) g is a_s (x) g_t at index s * n + t (A index major), so an
operator f (x) phi is the Kronecker product of the two matrices.
"""

import logging

from .algebra_core import LeibnizAlgebra, StructureTable, add_scaled, gamma2, to_dense
from .exceptions import FieldMismatchError, InvariantViolation, PreconditionError
from .operator_spaces import (
    OperatorSpace,
    centroid_decomposition,
    centroid_lie,
    der_z_lie,
    product_centroid,
)
from .utils.exact_linalg import Matrix, Subspace

logger = logging.getLogger(__name__)


class TensorAlgebra:
    """A (x) g with [a (x) x, b (x) y] = ab (x) [x, y]."""

    def __init__(self, A, g, algebra):
        self.A = A
        self.g = g
        self.algebra = algebra

    @property
    def dim(self):
        return self.algebra.dim

    def index(self, s, t):
        return s * self.g.dim + t


def tensor_algebra(A, g, name=None):
    if A.field != g.field:
        raise FieldMismatchError(
            f"cannot tensor an algebra over {A.field.describe()} with one over {g.field.describe()}"
        )
    m, n = A.dim, g.dim
    products = {}
    for i, j, a_prod in A.table.nonzero_products():
        for k, l, g_prod in g.table.nonzero_products():
            result = {}
            for u, a_coef in a_prod.items():
                add_scaled(
                    result, {u * n + v: g_coef for v, g_coef in g_prod.items()}, a_coef, A.field
                )
            if result:
                products[(i * n + k, j * n + l)] = result
    names = [f"{a}⊗{x}" for a in A.basis_names for x in g.basis_names]
    table = StructureTable.from_products(m * n, products, A.field, names)
    algebra = LeibnizAlgebra(table, name=name or f"{A.label()}⊗{g.label()}")
    logger.debug("tensor product %s has %d nonzero products", algebra.label(), len(products))
    return TensorAlgebra(A, g, algebra)


def _product_table(A):
    return tuple(tuple(A.table.product(i, j) for j in range(A.dim)) for i in range(A.dim))


def assoc_centroid(A):
    """Centroid of A: maps f with f(ab) = f(a)b = a f(b)."""
    return product_centroid(A, _product_table(A), "Gamma(A)")


def multiplication_operators(A):
    """L_a for every basis vector a of A; they span the image of A in Gamma(A)."""
    return [A.multiplication_matrix(A.basis_vector(i)) for i in range(A.dim)]


def sigma_map(A, centroid=None):
    """Evaluation f -> f(1) from Gamma(A) to A, with a bijectivity certificate."""
    if not A.is_unital:
        raise PreconditionError(f"{A.label()} has no unit")
    centroid = centroid if centroid is not None else assoc_centroid(A)
    evaluation = Matrix.from_columns([f.apply(A.unit) for f in centroid.basis], A.dim, A.field)
    rank = evaluation.rank() if centroid.dim else 0
    return {
        "matrix": evaluation,
        "rank": rank,
        "bijective": rank == centroid.dim == A.dim,
    }


def embed_tensor_operator(f, phi):
    """Matrix of f (x) phi acting by a (x) x -> f(a) (x) phi(x)."""
    return f.kron(phi)


def _embedded_span(pairs, dim, field):
    return OperatorSpace.span(
        [embed_tensor_operator(f, phi) for f, phi in pairs], dim, field
    )


def _is_scalar_space(space):
    identity = Matrix.identity(space.n, space.field)
    return space.dim == 1 and space.contains(identity)


class TensorComparison:
    """Gamma^Lie(A (x) g) against its pure-tensor and mixed lower bounds."""

    def __init__(self, **fields):
        self.__dict__.update(fields)

    def dims(self):
        return {
            "centroid_product": self.centroid.dim,
            "centroid_A": self.centroid_A.dim,
            "centroid_g": self.centroid_g.dim,
            "embedded": self.embedded.dim,
            "mixed": self.mixed.dim,
            "A": self.tensor.A.dim,
        }


def tensor_centroid_compare(A, g, tensor=None):
    """Compute Gamma^Lie(A (x) g) and compare it with Gamma(A) (x) Gamma^Lie(g).

    Both inclusions (pure tensors, and A (x) Psi + End(A) (x) Der_z) are asserted;
    equality is asserted when A is unital, gamma_2(g) != 0 and Gamma^Lie(g) is
    the scalars.
    """
    tensor = tensor if tensor is not None else tensor_algebra(A, g)
    field = A.field
    dim = tensor.dim
    centroid = centroid_lie(tensor.algebra)
    centroid_A = assoc_centroid(A)
    centroid_g = centroid_lie(g)
    der_z = der_z_lie(g)
    psi = centroid_decomposition(g, centroid_g, der_z).psi

    embedded = _embedded_span(
        [(f, phi) for f in centroid_A.basis for phi in centroid_g.basis], dim, field
    )
    end_A = [Matrix.unit(A.dim, A.dim, r, c, field) for c in range(A.dim) for r in range(A.dim)]
    mixed = _embedded_span(
        [(l, phi) for l in multiplication_operators(A) for phi in psi]
        + [(e, d) for e in end_A for d in der_z.basis],
        dim,
        field,
    )
    if not embedded <= centroid:
        raise InvariantViolation("Gamma(A) (x) Gamma^Lie(g) is not inside Gamma^Lie(A (x) g)")
    if not mixed <= centroid:
        raise InvariantViolation("A (x) Psi + End(A) (x) Der_z is not inside Gamma^Lie(A (x) g)")

    hypotheses = {
        "unital": A.is_unital,
        "gamma2_nonzero": not gamma2(g).is_zero(),
        "centroid_scalar": _is_scalar_space(centroid_g),
    }
    applicable = all(hypotheses.values())
    equal = centroid == embedded
    witness = None
    if not equal:
        witness = next(phi for phi in centroid.basis if not embedded.contains(phi))
    if applicable and (not equal or centroid.dim != A.dim):
        raise InvariantViolation(
            f"Gamma^Lie({tensor.algebra.label()}) has dim {centroid.dim}, "
            f"expected the {A.dim}-dimensional Gamma(A) (x) K id"
        )
    return TensorComparison(
        tensor=tensor,
        centroid=centroid,
        centroid_A=centroid_A,
        centroid_g=centroid_g,
        embedded=embedded,
        mixed=mixed,
        hypotheses=hypotheses,
        applicable=applicable,
        equal=equal,
        witness=witness,
    )


def tensor_fiber_components(A, g, phi, tensor=None, centroid=None):
    """Split phi(1 (x) x) = sum_i a_i (x) phi_i(x) and certify each phi_i in Gamma^Lie(g)."""
    if not A.is_unital:
        raise PreconditionError(f"{A.label()} has no unit")
    tensor = tensor if tensor is not None else tensor_algebra(A, g)
    centroid = centroid if centroid is not None else centroid_lie(tensor.algebra)
    if not centroid.contains(phi):
        raise PreconditionError("map is not in the Lie-centroid of the tensor product")
    m, n = A.dim, g.dim
    columns = [[None] * n for _ in range(m)]
    for k in range(n):
        source = [A.field.zero] * (m * n)
        for s, u in enumerate(A.unit):
            source[s * n + k] = u
        image = phi.apply(tuple(source))
        for i in range(m):
            columns[i][k] = image[i * n:(i + 1) * n]
    components = [Matrix.from_columns(columns[i], n, g.field) for i in range(m)]
    centroid_g = centroid_lie(g)
    for i, component in enumerate(components):
        if not centroid_g.contains(component):
            raise InvariantViolation(f"fiber component {i} is not in Gamma^Lie(g)")
    return components


class TensorGamma2:
    def __init__(self, direct, block, unital):
        self.direct = direct
        self.block = block
        self.unital = unital

    @property
    def equal(self):
        return self.direct == self.block


def tensor_gamma2(A, g, tensor=None):
    """gamma_2^Lie(A (x) g) computed directly and as A (x) gamma_2^Lie(g).

    Equality is asserted for unital A; otherwise both sides are only reported.
    """
    tensor = tensor if tensor is not None else tensor_algebra(A, g)
    direct = gamma2(tensor.algebra)
    n = g.dim
    block = Subspace.span(
        [
            to_dense({s * n + t: v for t, v in enumerate(x) if v}, tensor.dim, A.field)
            for s in range(A.dim)
            for x in gamma2(g).basis
        ],
        tensor.dim,
        A.field,
    )
    result = TensorGamma2(direct, block, A.is_unital)
    if A.is_unital and not result.equal:
        raise InvariantViolation(
            f"gamma_2 of {tensor.algebra.label()} has dim {direct.dim}, expected {block.dim}"
        )
    return result
