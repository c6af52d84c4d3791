"""
Module for finite-dimensional Leibniz algebras and commutative associative
algebras given by structure constants.

The Leibniz identity used throughout is

    [x, [y, z]] = [[x, y], z] - [[x, z], y]

and the Lie bracket is the symmetrisation [x, y]_Lie = [x, y] + [y, x].
"""

import logging
from functools import cached_property

from .exceptions import (
    DimensionMismatchError,
    FieldMismatchError,
    IdentityViolationError,
    InvariantViolation,
    NotAnIdealError,
    PreconditionError,
)
from .utils.exact_linalg import QQ, Matrix, Subspace, nullspace_of_rows, subspace_intersect

logger = logging.getLogger(__name__)

LEFT = "left"
RIGHT = "right"
TWO_SIDED = "two-sided"

LEIBNIZ_IDENTITY = "[x,[y,z]] = [[x,y],z] - [[x,z],y]"
LIE_IDENTITY = "[x,[y,z]_Lie] = 0"


def default_names(n, prefix="e"):
    return tuple(f"{prefix}{i + 1}" for i in range(n))


def to_sparse(vector):
    return {k: v for k, v in enumerate(vector) if v}


def to_dense(sparse, n, field):
    zero = field.zero
    return tuple(sparse.get(k, zero) for k in range(n))


def add_scaled(target, vector, coef, field):
    """target += coef * vector, in place, on sparse vectors."""
    if not coef:
        return target
    norm = field.normalize
    for k, v in vector.items():
        value = norm(target.get(k, 0) + coef * v)
        if value:
            target[k] = value
        else:
            target.pop(k, None)
    return target


class StructureTable:
    """Structure constants with [e_i, e_j] = sum_k c[i][j][k] e_k."""

    def __init__(self, c, field=QQ, basis_names=None):
        n = len(c)
        for i, plane in enumerate(c):
            if len(plane) != n or any(len(row) != n for row in plane):
                raise DimensionMismatchError(f"structure constants are not {n}x{n}x{n} at i={i}")
        self.dim = n
        self.field = field
        self.c = tuple(
            tuple(tuple(field.convert(x) for x in row) for row in plane) for plane in c
        )
        names = tuple(basis_names) if basis_names is not None else default_names(n)
        if len(names) != n:
            raise DimensionMismatchError(f"{len(names)} basis names for dimension {n}")
        self.basis_names = names
        self._products = tuple(tuple(to_sparse(row) for row in plane) for plane in self.c)

    @classmethod
    def from_products(cls, dim, products, field=QQ, basis_names=None):
        """Build from ``{(i, j): {k: coefficient}}``; absent pairs are zero brackets."""
        zero = field.zero
        c = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), result in products.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatchError(f"product ({i}, {j}) out of range for dimension {dim}")
            for k, coef in result.items():
                if not 0 <= k < dim:
                    raise DimensionMismatchError(f"result index {k} out of range for dimension {dim}")
                c[i][j][k] = field.normalize(c[i][j][k] + field.convert(coef))
        return cls(c, field, basis_names)

    @classmethod
    def zeros(cls, dim, field=QQ, basis_names=None):
        return cls.from_products(dim, {}, field, basis_names)

    def product(self, i, j):
        """Sparse [e_i, e_j]; treat the returned dict as read-only."""
        return self._products[i][j]

    def bracket_sparse(self, x, y):
        result = {}
        for i, xi in x.items():
            row = self._products[i]
            for j, yj in y.items():
                add_scaled(result, row[j], xi * yj, self.field)
        return result

    def bracket(self, x, y):
        return to_dense(self.bracket_sparse(to_sparse(x), to_sparse(y)), self.dim, self.field)

    def nonzero_products(self):
        return [
            (i, j, self._products[i][j])
            for i in range(self.dim)
            for j in range(self.dim)
            if self._products[i][j]
        ]

    def is_zero(self):
        return not self.nonzero_products()

    def with_names(self, basis_names):
        return StructureTable(self.c, self.field, basis_names)

    def __eq__(self, other):
        return isinstance(other, StructureTable) and (self.field, self.c) == (other.field, other.c)

    def __hash__(self):
        return hash((self.field, self.c))

    def __repr__(self):
        return f"StructureTable(dim={self.dim}, field={self.field.describe()})"


def _as_table(obj):
    return getattr(obj, "table", obj)


def check_leibniz(t):
    """First basis triple (i, j, k) violating the Leibniz identity, or None."""
    t = _as_table(t)
    n, field = t.dim, t.field
    for i in range(n):
        e_i = {i: field.one}
        for j in range(n):
            for k in range(n):
                lhs = t.bracket_sparse(e_i, t.product(j, k))
                rhs = t.bracket_sparse(t.product(i, j), {k: field.one})
                add_scaled(rhs, t.bracket_sparse(t.product(i, k), {j: field.one}), -1, field)
                if lhs != rhs:
                    return (i, j, k)
    return None


class LeibnizAlgebra:
    """Structure table certified to satisfy the Leibniz identity."""

    def __init__(self, table, name=None, certify=True):
        if certify:
            witness = check_leibniz(table)
            if witness is not None:
                names = ", ".join(table.basis_names[w] for w in witness)
                raise IdentityViolationError(
                    f"Leibniz identity fails on basis triple ({names})",
                    identity=LEIBNIZ_IDENTITY,
                    witness=witness,
                )
        self.table = table
        self.name = name

    @classmethod
    def from_products(cls, dim, products, field=QQ, basis_names=None, name=None):
        return cls(StructureTable.from_products(dim, products, field, basis_names), name=name)

    @property
    def dim(self):
        return self.table.dim

    @property
    def field(self):
        return self.table.field

    @property
    def basis_names(self):
        return self.table.basis_names

    def basis_vector(self, i):
        return to_dense({i: self.field.one}, self.dim, self.field)

    def zero_vector(self):
        return (self.field.zero,) * self.dim

    def bracket(self, x, y):
        return self.table.bracket(x, y)

    @cached_property
    def lie_products(self):
        """Sparse [e_i, e_j]_Lie for every basis pair."""
        t = self.table
        return tuple(
            tuple(
                add_scaled(dict(t.product(i, j)), t.product(j, i), self.field.one, self.field)
                for j in range(self.dim)
            )
            for i in range(self.dim)
        )

    def lie_bracket_sparse(self, x, y):
        result = {}
        for i, xi in x.items():
            for j, yj in y.items():
                add_scaled(result, self.lie_products[i][j], xi * yj, self.field)
        return result

    def lie_bracket(self, x, y):
        return to_dense(self.lie_bracket_sparse(to_sparse(x), to_sparse(y)), self.dim, self.field)

    def left_operator(self, i):
        """Matrix of L_{e_i}: column j is [e_i, e_j]."""
        return Matrix.from_columns(
            [self.bracket(self.basis_vector(i), self.basis_vector(j)) for j in range(self.dim)],
            self.dim,
            self.field,
        )

    def right_operator(self, i):
        """Matrix of R_{e_i}: column j is [e_j, e_i]."""
        return Matrix.from_columns(
            [self.bracket(self.basis_vector(j), self.basis_vector(i)) for j in range(self.dim)],
            self.dim,
            self.field,
        )

    def label(self):
        return self.name or f"<{self.dim}-dim algebra>"

    def __repr__(self):
        return f"LeibnizAlgebra({self.label()}, dim={self.dim}, field={self.field.describe()})"


def lie_bracket(x, y, g):
    """[x, y]_Lie = [x, y] + [y, x]."""
    return g.lie_bracket(x, y)


def check_lie_identity(g):
    """First triple (i, j, k) with [e_i, [e_j, e_k]_Lie] != 0, or None."""
    for i in range(g.dim):
        e_i = {i: g.field.one}
        for j in range(g.dim):
            for k in range(j, g.dim):
                if g.table.bracket_sparse(e_i, g.lie_products[j][k]):
                    return (i, j, k)
    return None


def is_abelian(g):
    return _as_table(g).is_zero()


def is_lie_algebra(g):
    """True when the bracket is antisymmetric, i.e. [x, x] = 0 for all x."""
    return all(not g.lie_products[i][j] for i in range(g.dim) for j in range(i, g.dim))


class AssocCommAlgebra:
    """Commutative associative algebra, optionally with a unit vector."""

    def __init__(self, table, unit=None, name=None):
        failure = check_associative_commutative(table)
        if failure is not None:
            identity, witness = failure
            raise IdentityViolationError(
                f"{identity} fails on basis tuple {witness}", identity=identity, witness=witness
            )
        if unit is not None:
            unit = tuple(table.field.convert(u) for u in unit)
            if len(unit) != table.dim:
                raise DimensionMismatchError("unit vector has the wrong length")
            bad = check_unit(table, unit)
            if bad is not None:
                raise IdentityViolationError(
                    f"claimed unit does not fix basis vector {table.basis_names[bad]}",
                    identity="u a = a",
                    witness=(bad,),
                )
        self.table = table
        self.unit = unit
        self.name = name

    @classmethod
    def from_products(cls, dim, products, field=QQ, basis_names=None, unit=None, name=None):
        return cls(StructureTable.from_products(dim, products, field, basis_names), unit, name)

    @property
    def dim(self):
        return self.table.dim

    @property
    def field(self):
        return self.table.field

    @property
    def basis_names(self):
        return self.table.basis_names

    @property
    def is_unital(self):
        return self.unit is not None

    def product(self, x, y):
        return self.table.bracket(x, y)

    def basis_vector(self, i):
        return to_dense({i: self.field.one}, self.dim, self.field)

    def multiplication_matrix(self, x):
        """Matrix of a -> x a."""
        return Matrix.from_columns(
            [self.product(x, self.basis_vector(j)) for j in range(self.dim)], self.dim, self.field
        )

    def label(self):
        return self.name or f"<{self.dim}-dim associative algebra>"

    def __repr__(self):
        return f"AssocCommAlgebra({self.label()}, dim={self.dim}, unital={self.is_unital})"


def check_associative_commutative(t):
    """(identity, witness) for the first failure of commutativity or associativity."""
    t = _as_table(t)
    one = t.field.one
    for i in range(t.dim):
        for j in range(i + 1, t.dim):
            if t.product(i, j) != t.product(j, i):
                return ("commutativity", (i, j))
    for i in range(t.dim):
        for j in range(t.dim):
            for k in range(t.dim):
                lhs = t.bracket_sparse(t.product(i, j), {k: one})
                rhs = t.bracket_sparse({i: one}, t.product(j, k))
                if lhs != rhs:
                    return ("associativity", (i, j, k))
    return None


def check_unit(t, unit):
    """Index of the first basis vector not fixed by ``unit``, or None."""
    t = _as_table(t)
    u = to_sparse(unit)
    for j in range(t.dim):
        if t.bracket_sparse(u, {j: t.field.one}) != {j: t.field.one}:
            return j
    return None


class Ideal:
    """Subspace closed under bracketing with the algebra on the given sides."""

    def __init__(self, carrier, sides=TWO_SIDED):
        self.carrier = carrier
        self.sides = sides

    @property
    def dim(self):
        return self.carrier.dim

    def __eq__(self, other):
        return isinstance(other, Ideal) and (self.carrier, self.sides) == (other.carrier, other.sides)

    def __hash__(self):
        return hash((self.carrier, self.sides))

    def __repr__(self):
        return f"Ideal({self.sides}, dim={self.dim})"


def carrier_of(space):
    return space.carrier if isinstance(space, Ideal) else space


def _check_ambient(g, space):
    if space.field != g.field:
        raise FieldMismatchError(
            f"subspace over {space.field.describe()} in an algebra over {g.field.describe()}"
        )
    if space.ambient_dim != g.dim:
        raise DimensionMismatchError(
            f"subspace of K^{space.ambient_dim} in an algebra of dimension {g.dim}"
        )


def ideal_witness(g, space, side):
    """First (basis index of space, basis index of g) breaking closure on ``side``."""
    space = carrier_of(space)
    _check_ambient(g, space)
    for a, h in enumerate(space.basis):
        for i in range(g.dim):
            e_i = g.basis_vector(i)
            if side == LEFT and not space.contains(g.bracket(e_i, h)):
                return (a, i)
            if side == RIGHT and not space.contains(g.bracket(h, e_i)):
                return (a, i)
    return None


def is_left_ideal(g, space):
    return ideal_witness(g, space, LEFT) is None


def is_right_ideal(g, space):
    return ideal_witness(g, space, RIGHT) is None


def is_two_sided_ideal(g, space):
    return is_left_ideal(g, space) and is_right_ideal(g, space)


def ideal_of(g, space, sides=TWO_SIDED):
    """Certify ``space`` as an ideal of ``g`` or raise NotAnIdealError."""
    space = carrier_of(space)
    checks = (LEFT, RIGHT) if sides == TWO_SIDED else (sides,)
    for side in checks:
        witness = ideal_witness(g, space, side)
        if witness is not None:
            raise NotAnIdealError(
                f"subspace is not closed under {side} bracketing "
                f"(basis vector {witness[0]} with {g.basis_names[witness[1]]})",
                witness=witness,
            )
    return Ideal(space, sides)


def whole(g):
    return Ideal(Subspace.full(g.dim, g.field))


def zero_ideal(g):
    return Ideal(Subspace.zero(g.dim, g.field))


def _two_sided(g, space):
    if isinstance(space, Ideal) and space.sides == TWO_SIDED:
        _check_ambient(g, space.carrier)
        return space.carrier
    return ideal_of(g, space).carrier


def ann_subspace(g):
    """span{[x, x]} = span{[e_i, e_j]_Lie : i <= j}."""
    vectors = [
        to_dense(g.lie_products[i][j], g.dim, g.field)
        for i in range(g.dim)
        for j in range(i, g.dim)
        if g.lie_products[i][j]
    ]
    return Subspace.span(vectors, g.dim, g.field)


def ideal_closure(g, space):
    """Smallest two-sided ideal containing ``space``."""
    current = carrier_of(space)
    while True:
        extra = []
        for h in current.basis:
            for i in range(g.dim):
                e_i = g.basis_vector(i)
                extra.append(g.bracket(e_i, h))
                extra.append(g.bracket(h, e_i))
        grown = current + Subspace.span(extra, g.dim, g.field)
        if grown == current:
            return current
        current = grown


def lie_commutator_ideal(M, N, g):
    """Two-sided ideal generated by [m, n]_Lie for m in M, n in N."""
    m_space = _two_sided(g, M)
    n_space = _two_sided(g, N)
    generators = [
        g.lie_bracket(m, n) for m in m_space.basis for n in n_space.basis
    ]
    return Ideal(ideal_closure(g, Subspace.span(generators, g.dim, g.field)))


class Centres:
    """Lie-centre, left centre, right centre and centre of one algebra."""

    def __init__(self, z_lie, z_left, z_right, z):
        self.z_lie = z_lie
        self.z_left = z_left
        self.z_right = z_right
        self.z = z

    def as_dict(self):
        return {"z_lie": self.z_lie, "z_left": self.z_left, "z_right": self.z_right, "z": self.z}


def _kernel_of_products(g, products_of):
    """{z : products_of(i, m) weighted by z_m sums to zero for every i}."""
    rows = {}
    for i in range(g.dim):
        for m in range(g.dim):
            for k, coef in products_of(i, m).items():
                rows.setdefault((i, k), {})[m] = coef
    return nullspace_of_rows(rows.values(), g.dim, g.field)


def centres(g):
    """Compute Z_Lie, Z^l, Z^r and Z = Z^l cap Z^r.

    Z_Lie = {z : [x, z]_Lie = 0}, Z^r = {z : [x, z] = 0}, Z^l = {z : [z, x] = 0}.
    Z_Lie, Z^r and Z are certified two-sided ideals.
    """
    t = g.table
    z_lie = _kernel_of_products(g, lambda i, m: g.lie_products[i][m])
    z_right = _kernel_of_products(g, lambda i, m: t.product(i, m))
    z_left = _kernel_of_products(g, lambda i, m: t.product(m, i))
    z = subspace_intersect(z_left, z_right)
    for label, space in (("Z_Lie", z_lie), ("Z^r", z_right), ("Z", z)):
        if not is_two_sided_ideal(g, space):
            raise InvariantViolation(f"{label} of {g.label()} is not a two-sided ideal")
    return Centres(z_lie, z_left, z_right, z)


def lie_centraliser(g, M, N):
    """{x : [x, m]_Lie in N for all m in M}."""
    m_space = _two_sided(g, M)
    n_space = _two_sided(g, N)
    functionals = [to_sparse(w) for w in n_space.annihilator().basis]
    rows = []
    for m in m_space.basis:
        m_sparse = to_sparse(m)
        images = [g.lie_bracket_sparse({a: g.field.one}, m_sparse) for a in range(g.dim)]
        for w in functionals:
            row = {}
            for a, image in enumerate(images):
                value = g.field.normalize(sum((w.get(k, 0) * v for k, v in image.items()), 0))
                if value:
                    row[a] = value
            rows.append(row)
    return nullspace_of_rows(rows, g.dim, g.field)


def lower_central_series(g, N=None):
    """gamma_1 = N, gamma_i = [gamma_{i-1}, g]_Lie, until zero or stable.

    The last entry is either the zero subspace or a repeat of its predecessor.
    """
    current = _two_sided(g, N) if N is not None else Subspace.full(g.dim, g.field)
    full = whole(g)
    series = [current]
    while not current.is_zero():
        following = lie_commutator_ideal(Ideal(current), full, g).carrier
        series.append(following)
        if following == current:
            break
        current = following
    return series


def nilpotency_class(g, N=None):
    """Class c with gamma_{c+1} = 0 != gamma_c, or None when not nilpotent."""
    series = lower_central_series(g, N)
    if not series[-1].is_zero():
        return None
    return len(series) - 1


def gamma2(g):
    """gamma_2^Lie(g) = [g, g]_Lie."""
    return lie_commutator_ideal(whole(g), whole(g), g).carrier


def quotient(g, ideal, name=None):
    """Quotient algebra g / I on the non-pivot coordinates, with the projection matrix."""
    space = _two_sided(g, ideal)
    keep = space.complement_coordinates()

    def project(vector):
        residual = space.residual(vector)
        return {a: residual[c] for a, c in enumerate(keep) if c in residual}

    products = {}
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            image = project(g.bracket(g.basis_vector(i), g.basis_vector(j)))
            if image:
                products[(a, b)] = image
    names = tuple(g.basis_names[c] for c in keep)
    table = StructureTable.from_products(len(keep), products, g.field, names)
    algebra = LeibnizAlgebra(table, name=name or f"{g.label()}/I")
    projection = Matrix.from_columns(
        [to_dense(project(g.basis_vector(j)), len(keep), g.field) for j in range(g.dim)],
        len(keep),
        g.field,
    )
    return algebra, projection


def liesation(g):
    """g / span{[x, x]}, certified to be a Lie algebra."""
    algebra, _ = quotient(g, ann_subspace(g), name=f"{g.label()}_Lie")
    if not is_lie_algebra(algebra):
        raise InvariantViolation(f"Liesation of {g.label()} is not antisymmetric")
    return algebra


def direct_sum(g1, g2, name=None):
    """Block-diagonal table on the concatenated basis."""
    if g1.field != g2.field:
        raise FieldMismatchError(
            f"cannot add algebras over {g1.field.describe()} and {g2.field.describe()}"
        )
    offset = g1.dim
    products = {}
    for i, j, result in g1.table.nonzero_products():
        products[(i, j)] = dict(result)
    for i, j, result in g2.table.nonzero_products():
        products[(i + offset, j + offset)] = {k + offset: v for k, v in result.items()}
    names = list(g1.basis_names)
    for label in g2.basis_names:
        names.append(label if label not in names else f"{label}'")
    return LeibnizAlgebra.from_products(
        g1.dim + g2.dim,
        products,
        g1.field,
        names,
        name=name or f"{g1.label()}+{g2.label()}",
    )


def block_sum(space1, space2):
    """Subspace of K^(n1+n2) spanned by the two summands in their coordinate blocks."""
    if space1.field != space2.field:
        raise FieldMismatchError("summands live over different fields")
    n1, n2 = space1.ambient_dim, space2.ambient_dim
    zero = space1.field.zero
    vectors = [tuple(v) + (zero,) * n2 for v in space1.basis]
    vectors.extend((zero,) * n1 + tuple(v) for v in space2.basis)
    return Subspace.span(vectors, n1 + n2, space1.field)


def subalgebra(g, space, name=None):
    """Structure table of a bracket-closed subspace in its RREF basis."""
    space = carrier_of(space)
    _check_ambient(g, space)
    products = {}
    for a, x in enumerate(space.basis):
        for b, y in enumerate(space.basis):
            image = g.bracket(x, y)
            if not space.contains(image):
                raise PreconditionError(
                    "subspace is not closed under the bracket", witness=(a, b)
                )
            coords = to_sparse(space.coordinates(image))
            if coords:
                products[(a, b)] = coords
    return LeibnizAlgebra.from_products(
        space.dim, products, g.field, default_names(space.dim, "b"), name=name
    )
