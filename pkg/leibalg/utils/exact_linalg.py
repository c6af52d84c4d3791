"""
Module for exact linear algebra over the rationals and odd prime fields.

Scalars are ``fractions.Fraction`` over Q and plain ints in ``[0, p)`` over F_p.
Every subspace is stored by its reduced row echelon basis, so two Subspace
objects are equal exactly when they describe the same space.
"""

import re
import logging
from fractions import Fraction

import numpy as np
from sympy import isprime

from ..exceptions import (
    DimensionMismatchError,
    FieldMismatchError,
    InvalidFieldError,
    InvalidRangeError,
    LeibalgError,
    ParseError,
)

logger = logging.getLogger(__name__)

RATIONAL = "rational"
PRIME = "prime"

_SCALAR_PATTERN = re.compile(r"^[+-]?\d+(/\d+)?$")


class FieldSpec:
    """Ground field: Q or F_p with p an odd prime."""

    __slots__ = ("kind", "p")

    def __init__(self, kind=RATIONAL, p=None):
        if kind == RATIONAL:
            if p is not None:
                raise InvalidFieldError("the rational field takes no modulus")
        elif kind == PRIME:
            if p is None or isinstance(p, bool) or not isinstance(p, int):
                raise InvalidFieldError(f"prime field needs an integer modulus, got {p!r}")
            if p == 2:
                raise InvalidFieldError("characteristic 2 is not supported (1/2 must exist)")
            if not isprime(p):
                raise InvalidFieldError(f"{p} is not prime")
        else:
            raise InvalidFieldError(f"unknown field kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    @classmethod
    def rational(cls):
        return cls(RATIONAL)

    @classmethod
    def prime(cls, p):
        return cls(PRIME, int(p))

    @classmethod
    def parse(cls, text):
        """Parse a field descriptor: "Q", "rational" or "fp:<p>"."""
        token = str(text).strip().lower()
        if token in ("q", "qq", "rational"):
            return cls.rational()
        if token.startswith("fp:"):
            digits = token[3:]
            if not digits.isdigit():
                raise InvalidFieldError(f"malformed prime field descriptor {text!r}")
            return cls.prime(int(digits))
        raise InvalidFieldError(f"unknown field descriptor {text!r}")

    @property
    def is_prime(self):
        return self.kind == PRIME

    @property
    def zero(self):
        return 0 if self.is_prime else Fraction(0)

    @property
    def one(self):
        return 1 if self.is_prime else Fraction(1)

    def describe(self):
        return f"fp:{self.p}" if self.is_prime else "Q"

    def convert(self, value):
        """Turn an int, Fraction or coefficient string into a scalar of this field."""
        if isinstance(value, str):
            token = value.strip()
            if not _SCALAR_PATTERN.match(token):
                raise ParseError(f"malformed coefficient {value!r}")
            try:
                value = Fraction(token)
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in coefficient {value!r}")
        elif isinstance(value, float):
            raise ParseError(f"floating point coefficient {value!r} is not exact")
        q = Fraction(value)
        if not self.is_prime:
            return q
        if q.denominator % self.p == 0:
            raise FieldMismatchError(
                f"cannot reduce {q} modulo {self.p}: the denominator is divisible by {self.p}"
            )
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def normalize(self, value):
        """Bring the result of ordinary arithmetic back to canonical form."""
        if self.is_prime:
            return value % self.p
        if isinstance(value, Fraction):
            return value
        return Fraction(value)

    def inverse(self, value):
        if not value:
            raise ZeroDivisionError("zero has no inverse")
        if self.is_prime:
            return pow(value, -1, self.p)
        return 1 / Fraction(value)

    def format(self, value):
        """Canonical string of a scalar: "p/q", an integer, or a residue."""
        return str(self.normalize(value))

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return f"FieldSpec({self.describe()})"


QQ = FieldSpec.rational()


def _check_same_field(*fields):
    first = fields[0]
    for other in fields[1:]:
        if other != first:
            raise FieldMismatchError(
                f"operands live over {first.describe()} and {other.describe()}"
            )
    return first


class _Echelon:
    """Incrementally maintained reduced row echelon basis.

    Rows are dicts ``{column: nonzero scalar}`` keyed by their pivot column.
    Every stored row has a 1 at its pivot and zeros at every other pivot.
    """

    def __init__(self, field):
        self.field = field
        self.rows = {}

    @classmethod
    def from_rows(cls, field, rows):
        echelon = cls(field)
        for row in rows:
            echelon.add(row)
        return echelon

    def reduce(self, row):
        """Return the residual of ``row`` after eliminating every known pivot."""
        norm = self.field.normalize
        residual = {c: v for c, v in row.items() if v}
        for col in [c for c in residual if c in self.rows]:
            coef = residual.pop(col)
            for c, v in self.rows[col].items():
                if c == col:
                    continue
                value = norm(residual.get(c, 0) - coef * v)
                if value:
                    residual[c] = value
                else:
                    residual.pop(c, None)
        return residual

    def add(self, row):
        """Insert a row; return True when the rank grew."""
        residual = self.reduce(row)
        if not residual:
            return False
        norm = self.field.normalize
        pivot = min(residual)
        scale = self.field.inverse(residual[pivot])
        residual = {c: norm(v * scale) for c, v in residual.items()}
        for other in self.rows.values():
            coef = other.get(pivot)
            if not coef:
                continue
            for c, v in residual.items():
                value = norm(other.get(c, 0) - coef * v)
                if value:
                    other[c] = value
                else:
                    other.pop(c, None)
        self.rows[pivot] = residual
        return True

    @property
    def rank(self):
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    def dense_rows(self, ncols):
        zero = self.field.zero
        return tuple(
            tuple(self.rows[p].get(c, zero) for c in range(ncols)) for p in self.pivots()
        )

    def kernel_vectors(self, ncols):
        """One kernel vector per free column, read off the reduced rows."""
        norm = self.field.normalize
        zero = self.field.zero
        pivots = self.pivots()
        pivot_set = set(pivots)
        vectors = []
        for free in range(ncols):
            if free in pivot_set:
                continue
            vector = [zero] * ncols
            vector[free] = self.field.one
            for p in pivots:
                coef = self.rows[p].get(free)
                if coef:
                    vector[p] = norm(-coef)
            vectors.append(vector)
        return vectors


def _sparse(vector):
    return {c: v for c, v in enumerate(vector) if v}


class Matrix:
    """Dense matrix of exact scalars, all over one field."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, data, field=QQ, cols=None):
        entries = tuple(tuple(field.convert(x) for x in row) for row in data)
        if cols is None:
            if not entries:
                raise DimensionMismatchError("cols must be given for a matrix with no rows")
            cols = len(entries[0])
        if any(len(row) != cols for row in entries):
            raise DimensionMismatchError("rows of a matrix must have equal length")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, field, entries, cols):
        matrix = cls.__new__(cls)
        object.__setattr__(matrix, "field", field)
        object.__setattr__(matrix, "rows", len(entries))
        object.__setattr__(matrix, "cols", cols)
        object.__setattr__(matrix, "entries", entries)
        return matrix

    @classmethod
    def zeros(cls, rows, cols, field=QQ):
        zero = field.zero
        return cls._raw(field, tuple((zero,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n, field=QQ):
        zero, one = field.zero, field.one
        return cls._raw(
            field, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def unit(cls, rows, cols, i, j, field=QQ):
        """Matrix unit with a single 1 at (i, j)."""
        zero, one = field.zero, field.one
        return cls._raw(
            field,
            tuple(
                tuple(one if (r, c) == (i, j) else zero for c in range(cols))
                for r in range(rows)
            ),
            cols,
        )

    @classmethod
    def from_columns(cls, columns, rows, field=QQ):
        columns = [tuple(field.normalize(x) for x in col) for col in columns]
        if any(len(col) != rows for col in columns):
            raise DimensionMismatchError("columns must have the stated length")
        entries = tuple(tuple(col[r] for col in columns) for r in range(rows))
        return cls._raw(field, entries, len(columns))

    @classmethod
    def from_array(cls, array, field=QQ):
        """Build from a 2-d numpy array holding exact scalars."""
        array = np.asarray(array, dtype=object)
        rows, cols = array.shape
        entries = tuple(tuple(field.normalize(x) for x in array[r]) for r in range(rows))
        return cls._raw(field, entries, cols)

    @classmethod
    def from_vector(cls, vector, n, field=QQ):
        """Inverse of :meth:`vectorize`: entry (k, m) sits at index m * n + k."""
        if len(vector) != n * n:
            raise DimensionMismatchError(f"vector of length {len(vector)} is not {n}x{n}")
        return cls._raw(
            field,
            tuple(tuple(field.normalize(vector[m * n + k]) for m in range(n)) for k in range(n)),
            n,
        )

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def as_array(self):
        array = np.empty((self.rows, self.cols), dtype=object)
        for i, row in enumerate(self.entries):
            for j, value in enumerate(row):
                array[i, j] = value
        return array

    def vectorize(self):
        """Column-major coordinates: the image of e_0 first."""
        return tuple(self.entries[k][m] for m in range(self.cols) for k in range(self.rows))

    def transpose(self):
        return Matrix._raw(
            self.field,
            tuple(self.column(j) for j in range(self.cols)),
            self.rows,
        )

    def apply(self, vector):
        """Matrix times column vector."""
        if len(vector) != self.cols:
            raise DimensionMismatchError(
                f"cannot apply a {self.rows}x{self.cols} matrix to a vector of length {len(vector)}"
            )
        norm = self.field.normalize
        return tuple(
            norm(sum((a * b for a, b in zip(row, vector) if a and b), 0))
            for row in self.entries
        )

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return self.apply(other)
        _check_same_field(self.field, other.field)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        if self.cols == 0:
            return Matrix.zeros(self.rows, other.cols, self.field)
        return Matrix.from_array(self.as_array().dot(other.as_array()), self.field)

    def _combine(self, other, op):
        _check_same_field(self.field, other.field)
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shapes {self.shape} and {other.shape} differ")
        norm = self.field.normalize
        return Matrix._raw(
            self.field,
            tuple(
                tuple(norm(op(a, b)) for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
            self.cols,
        )

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = self.field.convert(c)
        norm = self.field.normalize
        return Matrix._raw(
            self.field, tuple(tuple(norm(c * x) for x in row) for row in self.entries), self.cols
        )

    def kron(self, other):
        """Kronecker product; row index of the result is i * other.rows + k."""
        _check_same_field(self.field, other.field)
        rows, cols = self.rows * other.rows, self.cols * other.cols
        if rows == 0 or cols == 0:
            return Matrix.zeros(rows, cols, self.field)
        product = np.multiply.outer(self.as_array(), other.as_array())
        return Matrix.from_array(product.transpose(0, 2, 1, 3).reshape(rows, cols), self.field)

    def is_zero(self):
        return not any(any(row) for row in self.entries)

    def rank(self):
        return rref(self)[1]

    def to_strings(self):
        """Row-major nested lists of canonical scalar strings."""
        return [[self.field.format(x) for x in row] for row in self.entries]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.to_strings()}, field={self.field.describe()})"


class Subspace:
    """Subspace of K^n held by its RREF basis (zero rows removed)."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field, ambient_dim, echelon):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", echelon.dense_rows(ambient_dim))
        object.__setattr__(self, "pivots", tuple(echelon.pivots()))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def span(cls, vectors, ambient_dim, field=QQ):
        echelon = _Echelon(field)
        for vector in vectors:
            if len(vector) != ambient_dim:
                raise DimensionMismatchError(
                    f"vector of length {len(vector)} in a space of dimension {ambient_dim}"
                )
            echelon.add({c: field.normalize(v) for c, v in enumerate(vector) if v})
        return cls(field, ambient_dim, echelon)

    @classmethod
    def zero(cls, ambient_dim, field=QQ):
        return cls(field, ambient_dim, _Echelon(field))

    @classmethod
    def full(cls, ambient_dim, field=QQ):
        one = field.one
        return cls.span(
            [tuple(one if i == j else field.zero for j in range(ambient_dim)) for i in range(ambient_dim)],
            ambient_dim,
            field,
        )

    @classmethod
    def _from_echelon(cls, echelon, ambient_dim):
        return cls(echelon.field, ambient_dim, echelon)

    def _echelon(self):
        echelon = _Echelon(self.field)
        for pivot, row in zip(self.pivots, self.basis):
            echelon.rows[pivot] = _sparse(row)
        return echelon

    @property
    def dim(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def is_full(self):
        return self.dim == self.ambient_dim

    def _check_vector(self, vector):
        if len(vector) != self.ambient_dim:
            raise DimensionMismatchError(
                f"vector of length {len(vector)} in a space of dimension {self.ambient_dim}"
            )

    def residual(self, vector):
        """Sparse remainder of ``vector`` modulo this subspace (empty iff member)."""
        self._check_vector(vector)
        norm = self.field.normalize
        return self._echelon().reduce({c: norm(v) for c, v in enumerate(vector) if v})

    def contains(self, vector):
        return not self.residual(vector)

    def __contains__(self, vector):
        return self.contains(vector)

    def coordinates(self, vector):
        """Coordinates of a member vector in the RREF basis."""
        if not self.contains(vector):
            raise DimensionMismatchError("vector does not lie in the subspace")
        return tuple(self.field.normalize(vector[p]) for p in self.pivots)

    def combination(self, coordinates):
        """Vector with the given coordinates in the RREF basis."""
        if len(coordinates) != self.dim:
            raise DimensionMismatchError("wrong number of coordinates")
        norm = self.field.normalize
        return tuple(
            norm(sum((c * row[i] for c, row in zip(coordinates, self.basis) if c), 0))
            for i in range(self.ambient_dim)
        )

    def annihilator(self):
        """Functionals (as vectors, via the dot product) vanishing on the subspace."""
        if not self.basis:
            return Subspace.full(self.ambient_dim, self.field)
        return nullspace(self.as_matrix())

    def complement_coordinates(self):
        """Standard coordinates that are not pivots; their unit vectors span a complement."""
        pivots = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in pivots)

    def as_matrix(self):
        return Matrix._raw(self.field, self.basis, self.ambient_dim)

    def __le__(self, other):
        return subspace_leq(self, other)

    def __add__(self, other):
        return subspace_sum(self, other)

    def __and__(self, other):
        return subspace_intersect(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis))

    def to_strings(self):
        return [[self.field.format(x) for x in row] for row in self.basis]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={self.to_strings()})"


def rref(m):
    """Reduced row echelon form of ``m`` (same shape, zero rows last) and its rank."""
    echelon = _Echelon.from_rows(m.field, (_sparse(row) for row in m.entries))
    rows = echelon.dense_rows(m.cols)
    zero_rows = tuple((m.field.zero,) * m.cols for _ in range(m.rows - len(rows)))
    return Matrix._raw(m.field, rows + zero_rows, m.cols), echelon.rank


def nullspace_of_rows(rows, ncols, field=QQ):
    """Kernel of the system given by sparse rows ``{column: coefficient}``."""
    echelon = _Echelon.from_rows(field, rows)
    logger.debug("nullspace: %d unknowns, rank %d", ncols, echelon.rank)
    return Subspace.span(echelon.kernel_vectors(ncols), ncols, field)


def nullspace(m):
    """{x : m x = 0} as a canonical Subspace of K^cols."""
    return nullspace_of_rows((_sparse(row) for row in m.entries), m.cols, m.field)


def _check_compatible(a, b):
    _check_same_field(a.field, b.field)
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"subspaces of K^{a.ambient_dim} and K^{b.ambient_dim} cannot be combined"
        )


def subspace_sum(a, b):
    _check_compatible(a, b)
    echelon = a._echelon()
    for row in b.basis:
        echelon.add(_sparse(row))
    return Subspace._from_echelon(echelon, a.ambient_dim)


def subspace_intersect(a, b):
    """Intersection as the common kernel of both annihilators."""
    _check_compatible(a, b)
    constraints = [_sparse(row) for row in a.annihilator().basis]
    constraints.extend(_sparse(row) for row in b.annihilator().basis)
    return nullspace_of_rows(constraints, a.ambient_dim, a.field)


def subspace_contains(a, vector):
    return a.contains(vector)


def subspace_leq(a, b):
    _check_compatible(a, b)
    echelon = b._echelon()
    return all(not echelon.reduce(_sparse(row)) for row in a.basis)


def project_kernel(rows, ncols, keep, field=QQ):
    """Project the kernel of sparse ``rows`` onto the coordinate block ``keep``."""
    if not isinstance(keep, range) or keep.step != 1:
        raise InvalidRangeError(f"{keep!r} is not a contiguous coordinate block")
    if keep.start < 0 or keep.stop > ncols or keep.start > keep.stop:
        raise InvalidRangeError(f"block {keep.start}:{keep.stop} exceeds {ncols} coordinates")
    kernel = nullspace_of_rows(rows, ncols, field)
    return Subspace.span([row[keep.start : keep.stop] for row in kernel.basis], len(keep), field)


def solve_and_project(mat, keep):
    """Projection of nullspace(mat) onto the coordinates in ``keep``."""
    return project_kernel((_sparse(row) for row in mat.entries), mat.cols, keep, mat.field)


def inverse(m):
    """Exact inverse via the RREF of [m | I]."""
    if not m.is_square:
        raise DimensionMismatchError(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    one = m.field.one
    augmented = [
        {**_sparse(row), n + i: one}
        for i, row in enumerate(m.entries)
    ]
    echelon = _Echelon.from_rows(m.field, augmented)
    if echelon.pivots() != list(range(n)):
        raise LeibalgError("matrix is singular")
    zero = m.field.zero
    return Matrix._raw(
        m.field,
        tuple(tuple(echelon.rows[i].get(n + j, zero) for j in range(n)) for i in range(n)),
        n,
    )


def is_invertible(m):
    return m.is_square and m.rank() == m.rows


def solve_affine(rows, constants, nvars, field=QQ):
    """One solution of ``sum(row[v] * x[v]) = constant`` for every row, or None.

    Free variables are set to zero, so the answer is deterministic.
    """
    augmented = []
    for row, constant in zip(rows, constants):
        row = dict(row)
        if constant:
            row[nvars] = field.normalize(-constant)
        augmented.append(row)
    echelon = _Echelon.from_rows(field, augmented)
    if nvars in echelon.rows:
        return None
    zero = field.zero
    solution = [zero] * nvars
    for pivot, row in echelon.rows.items():
        solution[pivot] = field.normalize(-row.get(nvars, zero))
    return tuple(solution)
