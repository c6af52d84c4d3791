"""
Module for the spaces of linear maps attached to a Leibniz algebra:
Lie-derivations, Lie-centroids and their quasi- and generalized variants,
almost inner and inner Lie-derivations, Hom-spaces between quotients and
ideals, and Lie-invariant bilinear forms.

Every space is an OperatorSpace: a subspace of End(K^n) stored canonically
through the column-major vectorization of its matrices (entry (k, m) of a
matrix sits at index m * n + k, so the image of e_0 comes first).
"""

import logging
from fractions import Fraction
from functools import cached_property

import numpy as np

from .algebra_core import (
    TWO_SIDED,
    Ideal,
    add_scaled,
    carrier_of,
    centres,
    gamma2,
    ideal_of,
    is_two_sided_ideal,
    lower_central_series,
    nilpotency_class,
    quotient,
    to_dense,
    to_sparse,
)
from .exceptions import (
    DimensionMismatchError,
    FieldMismatchError,
    InvariantViolation,
    LeibalgError,
    PreconditionError,
)
from .utils import finite_field
from .utils.exact_linalg import (
    Matrix,
    Subspace,
    nullspace,
    nullspace_of_rows,
    solve_affine,
    solve_and_project,
    subspace_intersect,
)

logger = logging.getLogger(__name__)

DEFAULT_SEED = 0
DEFAULT_ORACLE_PRIMES = 3
DEFAULT_ORACLE_LIMIT = 20000
SAMPLE_BOUND = 7
MAX_SAMPLE_ROUNDS = 8
MAX_FEEDBACK_ROUNDS = 4


class OperatorSpace:
    """Subspace of End(K^n), canonical in the column-major vectorization."""

    def __init__(self, n, field, space, name=None):
        if space.ambient_dim != n * n:
            raise DimensionMismatchError(
                f"a space of {n}x{n} matrices needs ambient dimension {n * n}"
            )
        if space.field != field:
            raise FieldMismatchError("vectorized space and operator space disagree on the field")
        self.n = n
        self.field = field
        self.space = space
        self.name = name
        self.certificate = None

    @classmethod
    def span(cls, matrices, n, field, name=None):
        vectors = []
        for m in matrices:
            if m.shape != (n, n):
                raise DimensionMismatchError(f"expected {n}x{n} matrices, got {m.shape}")
            if m.field != field:
                raise FieldMismatchError("matrix over a different field")
            vectors.append(m.vectorize())
        return cls(n, field, Subspace.span(vectors, n * n, field), name)

    @classmethod
    def zero(cls, n, field, name=None):
        return cls(n, field, Subspace.zero(n * n, field), name)

    @classmethod
    def full(cls, n, field, name=None):
        return cls(n, field, Subspace.full(n * n, field), name)

    @cached_property
    def basis(self):
        return tuple(Matrix.from_vector(row, self.n, self.field) for row in self.space.basis)

    @property
    def dim(self):
        return self.space.dim

    def is_zero(self):
        return self.space.is_zero()

    def contains(self, m):
        if m.shape != (self.n, self.n) or m.field != self.field:
            return False
        return self.space.contains(m.vectorize())

    def __contains__(self, m):
        return self.contains(m)

    def _check(self, other):
        if (self.n, self.field) != (other.n, other.field):
            raise DimensionMismatchError("operator spaces on different carriers")

    def __le__(self, other):
        self._check(other)
        return self.space <= other.space

    def __and__(self, other):
        self._check(other)
        return OperatorSpace(self.n, self.field, subspace_intersect(self.space, other.space))

    def __add__(self, other):
        self._check(other)
        return OperatorSpace(self.n, self.field, self.space + other.space)

    def __eq__(self, other):
        return (
            isinstance(other, OperatorSpace)
            and (self.n, self.field) == (other.n, other.field)
            and self.space == other.space
        )

    def __hash__(self):
        return hash((self.n, self.field, self.space))

    def renamed(self, name):
        clone = OperatorSpace(self.n, self.field, self.space, name)
        clone.certificate = self.certificate
        return clone

    def conjugate(self, p, p_inverse):
        """The space {p_inverse d p : d in self}."""
        return OperatorSpace.span(
            [p_inverse @ d @ p for d in self.basis], self.n, self.field, self.name
        )

    def bracket_with(self, other):
        """Span of all commutators [a, b] with a in self, b in other."""
        self._check(other)
        return OperatorSpace.span(
            [commutator(a, b) for a in self.basis for b in other.basis], self.n, self.field
        )

    def to_strings(self):
        return [m.to_strings() for m in self.basis]

    def __repr__(self):
        return f"OperatorSpace({self.name or 'unnamed'}, n={self.n}, dim={self.dim})"


class HomSpace(OperatorSpace):
    """Linear maps of g that kill an ideal and land in a target subspace."""

    def __init__(self, n, field, space, kill, into, name=None):
        super().__init__(n, field, space, name)
        self.kill = kill
        self.into = into


class BilinearFormSpace(OperatorSpace):
    """Gram matrices B of Lie-invariant forms f(a, b) = a^T B b."""

    @staticmethod
    def evaluate(gram, a, b):
        return gram.field.normalize(
            sum((x * y for x, y in zip(a, gram.apply(b)) if x and y), 0)
        )


class MultOperators:
    """Left and right multiplication operators of a basis."""

    def __init__(self, left, right):
        self.left = left
        self.right = right


def commutator(a, b):
    return a @ b - b @ a


class _OperatorSystem:
    """Homogeneous linear conditions on unknown n x n maps X_0, X_1, ...

    Entry (k, m) of X_b is the unknown with index b * n^2 + m * n + k.
    Terms map an output coordinate k to a sparse row over the unknowns.
    The bracket is the Lie bracket of g unless another product table is given.
    """

    def __init__(self, g, blocks=1, products=None):
        self.n = g.dim
        self.field = g.field
        self.products = products if products is not None else g.lie_products
        self.blocks = blocks
        self.rows = []

    @property
    def nvars(self):
        return self.blocks * self.n * self.n

    def var(self, block, k, m):
        return block * self.n * self.n + m * self.n + k

    def image(self, block, vector):
        """Coordinates of X_block(vector)."""
        term = {}
        for m, vm in vector.items():
            for k in range(self.n):
                term.setdefault(k, {})[self.var(block, k, m)] = vm
        return term

    def left(self, block, i, j):
        """Coordinates of [X_block e_i, e_j]_Lie."""
        term = {}
        lie = self.products
        for a in range(self.n):
            for k, coef in lie[a][j].items():
                row = term.setdefault(k, {})
                add_scaled(row, {self.var(block, a, i): coef}, 1, self.field)
        return term

    def right(self, block, i, j):
        """Coordinates of [e_i, X_block e_j]_Lie."""
        term = {}
        lie = self.products
        for a in range(self.n):
            for k, coef in lie[i][a].items():
                row = term.setdefault(k, {})
                add_scaled(row, {self.var(block, a, j): coef}, 1, self.field)
        return term

    def impose(self, *signed_terms):
        """Add the conditions sum(sign * term) = 0, one per output coordinate."""
        combined = {}
        for sign, term in signed_terms:
            for k, row in term.items():
                add_scaled(combined.setdefault(k, {}), row, sign, self.field)
        self.rows.extend(row for row in combined.values() if row)

    def image_in(self, block, target):
        """X_block(e_m) in ``target`` for every m."""
        for w in target.annihilator().basis:
            w = to_sparse(w)
            for m in range(self.n):
                self.rows.append({self.var(block, k, m): wk for k, wk in w.items()})

    def kills(self, block, space):
        """X_block(v) = 0 for every v in ``space``."""
        for v in space.basis:
            self.impose((1, self.image(block, to_sparse(v))))

    def solve(self, name):
        logger.debug(
            "%s: %d conditions on %d unknowns", name, len(self.rows), self.nvars
        )
        if self.blocks == 1:
            space = nullspace_of_rows(self.rows, self.nvars, self.field)
            self.verify(space, name)
        else:
            space = solve_and_project(self.matrix(), range(0, self.n * self.n))
        return OperatorSpace(self.n, self.field, space, name)

    def matrix(self):
        """The conditions as a dense matrix over the unknowns."""
        zero = self.field.zero
        return Matrix(
            [[row.get(v, zero) for v in range(self.nvars)] for row in self.rows],
            self.field,
            cols=self.nvars,
        )

    def verify(self, space, name):
        norm = self.field.normalize
        for vector in space.basis:
            for row in self.rows:
                if norm(sum((c * vector[v] for v, c in row.items()), 0)):
                    raise InvariantViolation(f"{name}: basis element violates its defining system")

    def witness(self, fixed):
        """Solve for blocks 1.. given block 0 = ``fixed``; None when impossible."""
        size = self.n * self.n
        values = fixed.vectorize()
        rows, constants = [], []
        for row in self.rows:
            free = {}
            constant = 0
            for v, c in row.items():
                if v < size:
                    constant -= c * values[v]
                else:
                    free[v - size] = c
            rows.append(free)
            constants.append(self.field.normalize(constant))
        solution = solve_affine(rows, constants, self.nvars - size, self.field)
        if solution is None:
            return None
        return tuple(
            Matrix.from_vector(solution[b * size:(b + 1) * size], self.n, self.field)
            for b in range(self.blocks - 1)
        )


def _pairs(n, ordered=False):
    for i in range(n):
        for j in range(n) if ordered else range(i, n):
            yield i, j


def _der_system(g):
    system = _OperatorSystem(g)
    for i, j in _pairs(g.dim):
        system.impose(
            (1, system.image(0, g.lie_products[i][j])),
            (-1, system.left(0, i, j)),
            (-1, system.right(0, i, j)),
        )
    return system


def der_lie(g):
    """Lie-derivations: d([x,y]_Lie) = [d(x),y]_Lie + [x,d(y)]_Lie."""
    return _der_system(g).solve("der")


def product_centroid(algebra, products, name):
    """Maps d with d(xy) = d(x)y = x d(y) for a symmetric product table."""
    system = _OperatorSystem(algebra, products=products)
    for i, j in _pairs(algebra.dim):
        left = system.left(0, i, j)
        system.impose((1, system.image(0, products[i][j])), (-1, left))
        system.impose((1, left), (-1, system.right(0, i, j)))
    return system.solve(name)


def centroid_lie(g):
    """Lie-centroid: d([x,y]_Lie) = [d(x),y]_Lie = [x,d(y)]_Lie."""
    return product_centroid(g, g.lie_products, "centroid")


def qcentroid_lie(g):
    """Quasi-Lie-centroid: [d(x),y]_Lie = [x,d(y)]_Lie."""
    system = _OperatorSystem(g)
    for i, j in _pairs(g.dim):
        if i != j:
            system.impose((1, system.left(0, i, j)), (-1, system.right(0, i, j)))
    return system.solve("qcentroid")


def _qder_system(g):
    system = _OperatorSystem(g, blocks=2)
    for i, j in _pairs(g.dim):
        system.impose(
            (1, system.left(0, i, j)),
            (1, system.right(0, i, j)),
            (-1, system.image(1, g.lie_products[i][j])),
        )
    return system


def _gender_system(g):
    system = _OperatorSystem(g, blocks=3)
    for i, j in _pairs(g.dim, ordered=True):
        system.impose(
            (1, system.left(0, i, j)),
            (1, system.right(2, i, j)),
            (-1, system.image(1, g.lie_products[i][j])),
        )
    return system


def _certify_projection(system, space, name):
    for f in space.basis:
        if system.witness(f) is None:
            raise InvariantViolation(f"{name}: basis element has no witness maps")
    return space


def qder_lie(g):
    """Quasi-Lie-derivations: some f' has [f(x),y]_Lie + [x,f(y)]_Lie = f'([x,y]_Lie)."""
    system = _qder_system(g)
    return _certify_projection(system, system.solve("qder"), "qder")


def gender_lie(g):
    """Generalized Lie-derivations: some f', f'' have
    [f(x),y]_Lie + [x,f''(y)]_Lie = f'([x,y]_Lie)."""
    system = _gender_system(g)
    return _certify_projection(system, system.solve("gender"), "gender")


def qder_witness(g, f):
    """A map f' making f a quasi-Lie-derivation, or None."""
    found = _qder_system(g).witness(f)
    return found[0] if found else None


def gender_witness(g, f):
    """Maps (f', f'') making f a generalized Lie-derivation, or None."""
    return _gender_system(g).witness(f)


def hom_space(g, kill, into, name="hom"):
    """All linear maps of g killing the two-sided ideal ``kill`` with image in ``into``."""
    kill_space = carrier_of(kill)
    if not (isinstance(kill, Ideal) and kill.sides == TWO_SIDED):
        kill_space = ideal_of(g, kill_space).carrier
    into_space = carrier_of(into)
    system = _OperatorSystem(g)
    system.kills(0, kill_space)
    system.image_in(0, into_space)
    space = system.solve(name).space
    return HomSpace(g.dim, g.field, space, kill_space, into_space, name)


def t_space(g):
    """T(g / gamma_2, Z_Lie): maps killing gamma_2^Lie with image in Z_Lie."""
    return hom_space(g, gamma2(g), centres(g).z_lie, name="T(g/gamma2, Z_Lie)")


def t_inner_space(g):
    """T(g / Z_Lie, gamma_2): maps killing Z_Lie with image in gamma_2^Lie."""
    return hom_space(g, centres(g).z_lie, gamma2(g), name="T(g/Z_Lie, gamma2)")


def der_z_lie(g):
    """Lie-central derivations: Lie-derivations with image in Z_Lie.

    Cross-checked against the closed form {d : d(gamma_2) = 0, im d in Z_Lie}.
    """
    z_lie = centres(g).z_lie
    system = _der_system(g)
    system.image_in(0, z_lie)
    space = system.solve("der_z")
    closed = hom_space(g, gamma2(g), z_lie)
    if space.space != closed.space:
        raise InvariantViolation(
            f"der_z of {g.label()} has dim {space.dim} but the closed form has dim {closed.dim}"
        )
    return space


def mult_operators(g):
    return MultOperators(
        [g.left_operator(i) for i in range(g.dim)],
        [g.right_operator(i) for i in range(g.dim)],
    )


def rl_span(g):
    """span{R_x + L_x}."""
    ops = mult_operators(g)
    return OperatorSpace.span(
        [l + r for l, r in zip(ops.left, ops.right)], g.dim, g.field, "R+L"
    )


def inner_derivation_obstruction(g):
    """First (i, j, k) where [[e_i,e_j]_Lie, e_k] or [e_k, [e_i,e_j]_Lie] is nonzero."""
    t = g.table
    one = g.field.one
    for i, j in _pairs(g.dim):
        square = g.lie_products[i][j]
        if not square:
            continue
        for k in range(g.dim):
            if t.bracket_sparse(square, {k: one}) or t.bracket_sparse({k: one}, square):
                return (i, j, k)
    return None


def ider_lie(g):
    """Inner Lie-derivations d_x = [x, -]_Lie; defined only when gamma_2 lies in Z."""
    witness = inner_derivation_obstruction(g)
    if witness is not None:
        i, j, k = witness
        names = g.basis_names
        raise PreconditionError(
            f"inner Lie-derivations need [[x,y]_Lie, z] = 0; "
            f"fails for ({names[i]}, {names[j]}, {names[k]})",
            witness=witness,
        )
    maps = [
        Matrix.from_columns(
            [to_dense(g.lie_products[i][j], g.dim, g.field) for j in range(g.dim)],
            g.dim,
            g.field,
        )
        for i in range(g.dim)
    ]
    space = OperatorSpace.span(maps, g.dim, g.field, "ider")
    der = der_lie(g)
    if not space <= der:
        raise InvariantViolation(f"an inner map of {g.label()} is not a Lie-derivation")
    return space


def _random_scalar(rng, field):
    if field.is_prime:
        return int(rng.integers(0, field.p))
    return Fraction(int(rng.integers(-SAMPLE_BOUND, SAMPLE_BOUND + 1)),
                    int(rng.integers(1, SAMPLE_BOUND + 1)))


def _random_vectors(rng, g, count):
    return [tuple(_random_scalar(rng, g.field) for _ in range(g.dim)) for _ in range(count)]


def _structured_samples(g):
    samples = [g.basis_vector(i) for i in range(g.dim)]
    one = g.field.one
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            samples.append(to_dense({i: one, j: one}, g.dim, g.field))
    return samples


def _lie_kernel(g, vectors):
    """{x : [x, v]_Lie = 0 for every v in ``vectors``}."""
    rows = []
    for v in vectors:
        v_sparse = to_sparse(v)
        columns = [g.lie_bracket_sparse({i: g.field.one}, v_sparse) for i in range(g.dim)]
        for k in range(g.dim):
            row = {i: column[k] for i, column in enumerate(columns) if column.get(k)}
            if row:
                rows.append(row)
    return nullspace_of_rows(rows, g.dim, g.field)


def _degenerate_subspaces(g, rng, around=()):
    """Linear pieces of the locus where x -> [x, .]_Lie loses rank.

    Z_Lie is where the map vanishes; the centraliser of y is where y lies in
    its kernel, and the double centraliser is the largest piece sharing that
    kernel.
    """
    ys = [g.basis_vector(i) for i in range(g.dim)] + _random_vectors(rng, g, g.dim) + list(around)
    pieces = [centres(g).z_lie, gamma2(g)]
    for y in ys:
        single = _lie_kernel(g, [y])
        pieces.append(single)
        pieces.append(_lie_kernel(g, single.basis))
    distinct = []
    for piece in pieces:
        if 0 < piece.dim < g.dim and piece not in distinct:
            distinct.append(piece)
    return distinct


def _degenerate_samples(g, rng, around=()):
    """Basis vectors and two random points of every degenerate piece."""
    samples = []
    for piece in _degenerate_subspaces(g, rng, around):
        samples.extend(piece.basis)
        for _ in range(2):
            vector = [g.field.zero] * g.dim
            for b in piece.basis:
                c = _random_scalar(rng, g.field)
                for k, value in enumerate(b):
                    vector[k] += c * value
            samples.append(tuple(g.field.normalize(v) for v in vector))
    return samples


def _lift(point, p, field):
    """Symmetric integer lift of a point of F_p^n."""
    return tuple(field.convert(v if v <= p // 2 else v - p) for v in point)


def _pointwise_rows(g, basis, x):
    """Conditions on coefficients t making sum(t_s basis_s)(x) lie in [x, g]_Lie."""
    x_sparse = to_sparse(x)
    span = Subspace.span(
        [to_dense(g.lie_bracket_sparse(x_sparse, {j: g.field.one}), g.dim, g.field)
         for j in range(g.dim)],
        g.dim,
        g.field,
    )
    images = [b.apply(x) for b in basis]
    norm = g.field.normalize
    rows = []
    for w in span.annihilator().basis:
        row = {}
        for s, image in enumerate(images):
            value = norm(sum((a * b for a, b in zip(w, image) if a and b), 0))
            if value:
                row[s] = value
        if row:
            rows.append(row)
    return rows


def pointwise_refine(g, base, seed=DEFAULT_SEED, oracle_primes=DEFAULT_ORACLE_PRIMES,
                     oracle_limit=DEFAULT_ORACLE_LIMIT, name=None):
    """Elements d of ``base`` with d(x) in [x, g]_Lie for every x.

    Candidate stage: impose the condition at basis vectors, pairwise sums,
    points of the degenerate pieces of x -> [x, .]_Lie and 2 n^2 seeded
    random vectors, then add rounds of fresh points until the dimension
    survives one full round unchanged. Verification stage: every candidate
    basis element is checked at all points of F_p^n for the smallest usable
    primes, when p^n does not exceed ``oracle_limit``. A failing point is
    lifted back, its degenerate pieces are sampled and the candidate is cut
    again; a space that still fails after MAX_FEEDBACK_ROUNDS raises
    InvariantViolation.
    """
    n = g.dim
    basis = base.basis
    rng = np.random.default_rng(seed)
    round_size = max(1, 2 * n * n)
    rows = []
    samples = []

    def impose(points):
        samples.extend(points)
        for x in points:
            rows.extend(_pointwise_rows(g, basis, x))
        return nullspace_of_rows(rows, len(basis), g.field)

    candidate = impose(
        _structured_samples(g) + _degenerate_samples(g, rng) + _random_vectors(rng, g, round_size)
    )
    rounds = 1
    stabilized = candidate.dim == 0
    while not stabilized and rounds < MAX_SAMPLE_ROUNDS:
        refined = impose(_random_vectors(rng, g, round_size) + _degenerate_samples(g, rng))
        rounds += 1
        stabilized = refined.dim == candidate.dim or refined.dim == 0
        candidate = refined
    if not stabilized:
        logger.warning("%s: dimension still moving after %d sample rounds", name, rounds)

    refinements = 0
    while True:
        logger.debug(
            "%s: %d samples over %d rounds leave dimension %d",
            name, len(samples), rounds, candidate.dim,
        )
        result = OperatorSpace.span(
            [_combine(basis, t, g) for t in candidate.basis], n, g.field, name
        )
        primes, failure = _pointwise_oracle(g, result, oracle_primes, oracle_limit)
        if failure is None:
            break
        if refinements == MAX_FEEDBACK_ROUNDS:
            raise InvariantViolation(
                f"{name}({g.label()}): candidate fails at {failure['x']} mod {failure['p']} "
                f"after {refinements} refinements"
            )
        refinements += 1
        point = _lift(failure["x"], failure["p"], g.field)
        logger.debug("%s: oracle counterexample %s mod %d", name, failure["x"], failure["p"])
        candidate = impose(
            [point] + _degenerate_samples(g, rng, around=[point])
            + _random_vectors(rng, g, round_size)
        )

    result.certificate = _oracle_certificate(
        g, seed, len(samples), rounds, stabilized, refinements, primes
    )
    return result


def _pointwise_oracle(g, space, oracle_primes, oracle_limit):
    """Per-prime outcome ("pass" or "infeasible") and the first failing point, if any."""
    primes = finite_field.usable_primes(oracle_primes, g, *space.basis)
    results = {}
    for p in primes:
        if p ** g.dim > oracle_limit:
            results[str(p)] = "infeasible"
            continue
        for d in space.basis:
            failure = finite_field.pointwise_image_check(g, d, p)
            if failure is not None:
                return results, failure
        results[str(p)] = "pass"
        logger.debug("pointwise oracle mod %d: pass", p)
    return results, None


def _oracle_certificate(g, seed, sample_count, rounds, stabilized, refinements, results):
    checked = [p for p, status in results.items() if status == "pass"]
    if not checked:
        status = "sampled-only"
        summary = f"sampled-only (exhaustive check infeasible for dimension {g.dim})"
    else:
        status = "exhaustive" if len(checked) == len(results) else "partial"
        summary = f"exhaustive mod {','.join(checked)}: pass"
    return {
        "status": status,
        "summary": summary,
        "seed": seed,
        "samples": sample_count,
        "rounds": rounds,
        "stabilized": stabilized,
        "refinements": refinements,
        "primes": results,
    }


def der_c_lie(g, seed=DEFAULT_SEED, oracle_primes=DEFAULT_ORACLE_PRIMES,
              oracle_limit=DEFAULT_ORACLE_LIMIT):
    """Almost inner Lie-derivations: d in Der^Lie with d(x) in [x, g]_Lie for all x."""
    return pointwise_refine(g, der_lie(g), seed, oracle_primes, oracle_limit, name="der_c")


def t_c_space(g, seed=DEFAULT_SEED, oracle_primes=DEFAULT_ORACLE_PRIMES,
              oracle_limit=DEFAULT_ORACLE_LIMIT):
    """T_c: maps g/Z_Lie -> gamma_2 with f(x) in [x, g]_Lie for all x."""
    base = t_inner_space(g)
    refined = pointwise_refine(g, base, seed, oracle_primes, oracle_limit, name="T_c")
    space = HomSpace(g.dim, g.field, refined.space, base.kill, base.into, "T_c")
    space.certificate = refined.certificate
    return space


def _restriction_vector(phi, vectors):
    return tuple(x for v in vectors for x in phi.apply(v))


class CentroidDecomposition:
    """Gamma^Lie = Der_z (+) Psi."""

    def __init__(self, centroid, der_z, psi):
        self.centroid = centroid
        self.der_z = der_z
        self.psi = psi


def centroid_decomposition(g, centroid=None, der_z=None):
    """Split the centroid as Der_z plus a set Psi whose restrictions to gamma_2 are independent."""
    centroid = centroid if centroid is not None else centroid_lie(g)
    der_z = der_z if der_z is not None else der_z_lie(g)
    gamma = gamma2(g).basis
    width = len(gamma) * g.dim
    psi = []
    restrictions = Subspace.zero(width, g.field)
    for phi in centroid.basis:
        vector = _restriction_vector(phi, gamma)
        if any(vector) and not restrictions.contains(vector):
            psi.append(phi)
            restrictions = restrictions + Subspace.span([vector], width, g.field)
    psi_space = OperatorSpace.span(psi, g.dim, g.field)
    if centroid.dim != der_z.dim + len(psi) or not (der_z & psi_space).is_zero():
        raise InvariantViolation(
            f"centroid of {g.label()} (dim {centroid.dim}) is not Der_z (dim {der_z.dim}) "
            f"plus {len(psi)} independent maps"
        )
    if not (der_z + psi_space) == centroid:
        raise InvariantViolation(f"Der_z + Psi does not span the centroid of {g.label()}")
    return CentroidDecomposition(centroid, der_z, psi)


def preserves(f, space):
    return all(space.contains(f.apply(v)) for v in space.basis)


def pushforward(g, ideal, f):
    """The map induced by f on g / I (requires f(I) in I)."""
    space = carrier_of(ideal)
    for a, v in enumerate(space.basis):
        if not space.contains(f.apply(v)):
            raise PreconditionError(
                "map does not leave the ideal invariant", witness=(a,)
            )
    h, projection = quotient(g, ideal)
    section = Matrix.from_columns(
        [g.basis_vector(c) for c in space.complement_coordinates()], g.dim, g.field
    ) if h.dim else Matrix.zeros(g.dim, 0, g.field)
    return projection @ f @ section


def _invariant_subspace(g, operators, space):
    """Coefficients t such that sum(t_s op_s) maps ``space`` into itself."""
    functionals = space.annihilator().basis
    norm = g.field.normalize
    rows = []
    for v in space.basis:
        images = [op.apply(v) for op in operators.basis]
        for w in functionals:
            row = {}
            for s, image in enumerate(images):
                value = norm(sum((a * b for a, b in zip(w, image) if a and b), 0))
                if value:
                    row[s] = value
            if row:
                rows.append(row)
    coefficients = nullspace_of_rows(rows, operators.dim, g.field)
    return OperatorSpace.span(
        [_combine(operators.basis, t, g) for t in coefficients.basis], g.dim, g.field
    )


def _combine(basis, coefficients, g):
    total = Matrix.zeros(g.dim, g.dim, g.field)
    for t, b in zip(coefficients, basis):
        if t:
            total = total + b.scale(t)
    return total


def centroid_pushforward(g, ideal, centroid=None):
    """Push every centroid element preserving I down to g / I and certify the result."""
    space = carrier_of(ideal)
    ideal = ideal_of(g, space)
    centroid = centroid if centroid is not None else centroid_lie(g)
    h, projection = quotient(g, ideal)
    preserving = _invariant_subspace(g, centroid, space)
    pushed = [pushforward(g, ideal, f) for f in preserving.basis]
    h_centroid = centroid_lie(h)
    rl_pushed = OperatorSpace.span(
        [pushforward(g, ideal, m) for m in rl_span(g).basis], h.dim, h.field
    )
    z_lie = centres(g).z_lie
    report = {
        "quotient_dim": h.dim,
        "preserving_dim": preserving.dim,
        "pushed": pushed,
        "rl_onto": rl_pushed == rl_span(h),
        "images_in_centroid": all(h_centroid.contains(m) for m in pushed),
        "all_preserve": None,
        "kernel_kills_gamma2": None,
    }
    if space == z_lie:
        report["all_preserve"] = preserving.dim == centroid.dim
    if space <= z_lie:
        kernel = _pushforward_kernel(g, ideal, preserving)
        gamma = gamma2(g)
        report["kernel_kills_gamma2"] = all(
            not any(f.apply(v)) for f in kernel.basis for v in gamma.basis
        )
    return report


def _pushforward_kernel(g, ideal, preserving):
    """Elements of ``preserving`` whose pushforward vanishes."""
    images = [pushforward(g, ideal, f).vectorize() for f in preserving.basis]
    width = len(images[0]) if images else 0
    rows = [
        {s: image[c] for s, image in enumerate(images) if image[c]} for c in range(width)
    ]
    coefficients = nullspace_of_rows([r for r in rows if r], preserving.dim, g.field)
    return OperatorSpace.span(
        [_combine(preserving.basis, t, g) for t in coefficients.basis], g.dim, g.field
    )


def invariant_bilinear_forms(g):
    """Gram matrices B with f([a,c]_Lie, b) + f(a, [b,c]_Lie) = 0, f(a, b) = a^T B b."""
    n = g.dim
    lie = g.lie_products
    rows = []
    # entry B[r][s] is the unknown s * n + r
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = {}
                for m, coef in lie[i][k].items():
                    add_scaled(row, {j * n + m: coef}, 1, g.field)
                for m, coef in lie[j][k].items():
                    add_scaled(row, {m * n + i: coef}, 1, g.field)
                if row:
                    rows.append(row)
    space = nullspace_of_rows(rows, n * n, g.field)
    return BilinearFormSpace(n, g.field, space, "forms")


def check_form_symmetry(g, phi, gram, gamma=None):
    """f(phi(x), b) = f(x, phi(b)) for x in a basis of gamma_2 and all basis b."""
    gamma = gamma if gamma is not None else gamma2(g)
    for x in gamma.basis:
        phi_x = phi.apply(x)
        for b in range(g.dim):
            e_b = g.basis_vector(b)
            lhs = BilinearFormSpace.evaluate(gram, phi_x, e_b)
            rhs = BilinearFormSpace.evaluate(gram, x, phi.apply(e_b))
            if lhs != rhs:
                return False
    return True


def idempotent_split(h, phi, centroid=None):
    """Kernel and image of an idempotent centroid element, certified as complementary ideals."""
    if phi @ phi != phi:
        raise PreconditionError("map is not idempotent")
    centroid = centroid if centroid is not None else centroid_lie(h)
    if not centroid.contains(phi):
        raise PreconditionError("map is not in the Lie-centroid")
    kernel = nullspace(phi)
    image = Subspace.span([phi.column(j) for j in range(h.dim)], h.dim, h.field)
    for label, space in (("kernel", kernel), ("image", image)):
        if not is_two_sided_ideal(h, space):
            raise InvariantViolation(f"{label} of a centroid idempotent is not an ideal")
    if not (kernel & image).is_zero() or kernel.dim + image.dim != h.dim:
        raise InvariantViolation("kernel and image of an idempotent are not complementary")
    return kernel, image


SPACE_NAMES = ("der", "der-z", "der-c", "ider", "centroid", "qcentroid", "qder", "gender", "forms")


class SpaceBundle:
    """Every space of one algebra, computed on first use and then cached."""

    def __init__(self, g, seed=DEFAULT_SEED, oracle_primes=DEFAULT_ORACLE_PRIMES,
                 oracle_limit=DEFAULT_ORACLE_LIMIT):
        self.g = g
        self.seed = seed
        self.oracle_primes = oracle_primes
        self.oracle_limit = oracle_limit

    @cached_property
    def centres(self):
        return centres(self.g)

    @cached_property
    def z_lie(self):
        return self.centres.z_lie

    @cached_property
    def series(self):
        return lower_central_series(self.g)

    @cached_property
    def gamma2(self):
        return gamma2(self.g)

    @cached_property
    def nilpotency_class(self):
        return nilpotency_class(self.g)

    @cached_property
    def der(self):
        return der_lie(self.g)

    @cached_property
    def der_z(self):
        return der_z_lie(self.g)

    @cached_property
    def centroid(self):
        return centroid_lie(self.g)

    @cached_property
    def qcentroid(self):
        return qcentroid_lie(self.g)

    @cached_property
    def qder(self):
        return qder_lie(self.g)

    @cached_property
    def gender(self):
        return gender_lie(self.g)

    @cached_property
    def der_c(self):
        return der_c_lie(self.g, self.seed, self.oracle_primes, self.oracle_limit)

    @cached_property
    def ider(self):
        """None when the algebra does not satisfy [[x,y]_Lie, z] = 0."""
        try:
            return ider_lie(self.g)
        except PreconditionError:
            return None

    @cached_property
    def forms(self):
        return invariant_bilinear_forms(self.g)

    @cached_property
    def rl_span(self):
        return rl_span(self.g)

    @cached_property
    def t_space(self):
        return t_space(self.g)

    @cached_property
    def t_inner(self):
        return t_inner_space(self.g)

    @cached_property
    def t_c(self):
        return t_c_space(self.g, self.seed, self.oracle_primes, self.oracle_limit)

    @cached_property
    def decomposition(self):
        return centroid_decomposition(self.g, self.centroid, self.der_z)

    def space(self, which):
        """Look a space up by its command-line selector."""
        if which not in SPACE_NAMES:
            raise LeibalgError(f"unknown space {which!r}; choose from {', '.join(SPACE_NAMES)}")
        if which == "ider":
            return ider_lie(self.g)
        return getattr(self, which.replace("-", "_"))
