"""
Module for reducing exact data modulo small primes and checking identities
exhaustively over F_p.

Everything here works on numpy int64 arrays whose entries lie in [0, p).
"""

import logging
import itertools
from fractions import Fraction
from math import lcm

import numpy as np
from sympy import nextprime

from ..exceptions import FieldMismatchError, LeibalgError
from .exact_linalg import FieldSpec, Matrix, Subspace

logger = logging.getLogger(__name__)

# Pairs (x, y) evaluated per numpy block.
_BLOCK_BUDGET = 1 << 21

OPERATOR_KINDS = ("der", "der_z", "centroid", "qcentroid", "qder", "gender", "ider", "der_c")


def reduce_scalar(q, p):
    """Image of an exact rational in F_p; fails when p divides the denominator."""
    return FieldSpec.prime(p).convert(q)


def reduce_matrix(m, p):
    if m.field.is_prime:
        if m.field.p != p:
            raise FieldMismatchError(f"matrix over {m.field.describe()} cannot be read mod {p}")
        return m
    return Matrix(m.entries, FieldSpec.prime(p))


def _denominators(objects):
    for obj in objects:
        if isinstance(obj, Matrix):
            for row in obj.entries:
                for value in row:
                    yield Fraction(value).denominator
        elif hasattr(obj, "table"):
            for plane in obj.table.c:
                for row in plane:
                    for value in row:
                        yield Fraction(value).denominator
        else:
            yield Fraction(obj).denominator


def usable_primes(count, *objects):
    """The ``count`` smallest odd primes dividing no denominator in ``objects``.

    Data already over F_p can only be checked modulo p itself.
    """
    for obj in objects:
        field = getattr(obj, "field", None)
        if field is not None and field.is_prime:
            return [field.p]
    bad = 1
    for d in _denominators(objects):
        bad = lcm(bad, d)
    primes = []
    p = 3
    while len(primes) < count:
        if bad % p:
            primes.append(p)
        p = nextprime(p)
    return primes


def all_points(n, p):
    """Every vector of F_p^n as the rows of an int64 array."""
    return np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64).reshape(-1, n)


def matrix_array(m, p):
    return np.array(reduce_matrix(m, p).entries, dtype=np.int64).reshape(m.rows, m.cols)


def structure_array(g, p):
    """c[i, j, k] reduced mod p."""
    target = FieldSpec.prime(p)
    n = g.dim
    if g.field.is_prime and g.field.p != p:
        raise FieldMismatchError(f"algebra over {g.field.describe()} cannot be read mod {p}")
    values = [target.convert(x) for plane in g.table.c for row in plane for x in row]
    return np.array(values, dtype=np.int64).reshape(n, n, n)


def lie_structure_array(g, p):
    c = structure_array(g, p)
    return (c + c.transpose(1, 0, 2)) % p


def _pair_brackets(xs, ys, lie, p):
    """[x, y]_Lie for every x in xs and y in ys; shape (len(xs), len(ys), n)."""
    return np.einsum("ai,bj,ijk->abk", xs, ys, lie, optimize=True) % p


def _apply(points, d, p):
    """d applied to the last axis of ``points``."""
    return (points @ d.T) % p


def _identity_residuals(kind, xs, ys, lie, d, p, witnesses):
    dx = _apply(xs, d, p)
    dy = _apply(ys, d, p)
    xy = _pair_brackets(xs, ys, lie, p)
    left = _pair_brackets(dx, ys, lie, p)
    right = _pair_brackets(xs, dy, lie, p)
    if kind in ("der", "ider", "der_c"):
        return [(_apply(xy, d, p) - left - right) % p]
    if kind == "der_z":
        return [(_apply(xy, d, p) - left - right) % p, right]
    if kind == "centroid":
        return [(_apply(xy, d, p) - left) % p, (left - right) % p]
    if kind == "qcentroid":
        return [(left - right) % p]
    if kind == "qder":
        (d1,) = witnesses
        return [(left + right - _apply(xy, d1, p)) % p]
    if kind == "gender":
        d1, d2 = witnesses
        right2 = _pair_brackets(xs, _apply(ys, d2, p), lie, p)
        return [(left + right2 - _apply(xy, d1, p)) % p]
    raise LeibalgError(f"no defining identity for operator kind {kind!r}")


def check_operator_identity_mod_p(g, kind, d, p, witnesses=()):
    """Check the defining identity of ``kind`` at every (x, y) in F_p^n x F_p^n.

    ``d`` and ``witnesses`` are exact matrices; the witnesses are the maps
    f' (and f'') required by the quasi- and generalized derivation identities.
    Returns None when the identity holds, otherwise the first failing pair.
    """
    lie = lie_structure_array(g, p)
    d_arr = matrix_array(d, p)
    w_arrs = [matrix_array(w, p) for w in witnesses]
    points = all_points(g.dim, p)
    total = len(points)
    block = max(1, _BLOCK_BUDGET // max(1, total * max(1, g.dim)))
    for start in range(0, total, block):
        xs = points[start:start + block]
        for residual in _identity_residuals(kind, xs, points, lie, d_arr, p, w_arrs):
            bad = np.argwhere(residual.any(axis=-1))
            if len(bad):
                a, b = bad[0]
                return {"x": xs[a].tolist(), "y": points[b].tolist(), "p": p}
    return None


def _inverse_table(p):
    table = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        table[a] = pow(a, -1, p)
    return table


def batched_rank(stack, p):
    """Rank mod p of every matrix in a (batch, rows, cols) int64 array."""
    m = stack.copy() % p
    batch, rows, cols = m.shape
    rank = np.zeros(batch, dtype=np.int64)
    inverse = _inverse_table(p)
    row_index = np.arange(rows)
    for col in range(cols):
        candidates = (m[:, :, col] != 0) & (row_index[None, :] >= rank[:, None])
        has = candidates.any(axis=1)
        if not has.any():
            continue
        idx = np.nonzero(has)[0]
        pivot = np.argmax(candidates[idx], axis=1)
        target = rank[idx]
        swapped = m[idx, pivot].copy()
        m[idx, pivot] = m[idx, target]
        m[idx, target] = swapped
        scale = inverse[m[idx, target, col]]
        m[idx, target] = (m[idx, target] * scale[:, None]) % p
        pivot_rows = m[idx, target]
        factors = m[idx, :, col].copy()
        factors[np.arange(len(idx)), target] = 0
        m[idx] = (m[idx] - factors[:, :, None] * pivot_rows[:, None, :]) % p
        rank[idx] += 1
    return rank


def pointwise_image_check(g, d, p, points=None):
    """Check d(x) in [x, g]_Lie for every x (all of F_p^n unless ``points`` is given).

    Returns None on success, otherwise the first failing point.
    """
    lie = lie_structure_array(g, p)
    d_arr = matrix_array(d, p)
    if points is None:
        points = all_points(g.dim, p)
    if g.dim == 0:
        return None
    # spans[a, k, j] = k-th coordinate of [x_a, e_j]_Lie
    spans = np.einsum("ai,ijk->akj", points, lie) % p
    images = _apply(points, d_arr, p)
    augmented = np.concatenate([spans, images[:, :, None]], axis=2)
    outside = batched_rank(augmented, p) != batched_rank(spans, p)
    if outside.any():
        return {"x": points[np.argmax(outside)].tolist(), "p": p}
    return None


def brute_force_centres(g, p):
    """Z_Lie, Z^l, Z^r and Z of g over F_p by enumerating all p^n vectors."""
    field = FieldSpec.prime(p)
    c = structure_array(g, p)
    lie = (c + c.transpose(1, 0, 2)) % p
    points = all_points(g.dim, p)
    n = g.dim
    # [e_i, z] and [z, e_i] for every point z, indexed (point, i, k)
    right_products = np.einsum("am,imk->aik", points, c) % p
    left_products = np.einsum("am,mik->aik", points, c) % p
    lie_products = np.einsum("am,imk->aik", points, lie) % p

    def span_of(mask):
        return Subspace.span([tuple(int(v) for v in z) for z in points[mask]], n, field)

    z_lie = ~lie_products.reshape(len(points), -1).any(axis=1)
    z_right = ~right_products.reshape(len(points), -1).any(axis=1)
    z_left = ~left_products.reshape(len(points), -1).any(axis=1)
    return {
        "z_lie": span_of(z_lie),
        "z_left": span_of(z_left),
        "z_right": span_of(z_right),
        "z": span_of(z_left & z_right),
    }


def reduce_subspace(space, p):
    """Image of a rational subspace in F_p^n (spanned by the reduced basis)."""
    field = FieldSpec.prime(p)
    return Subspace.span(
        [tuple(field.convert(x) for x in row) for row in space.basis], space.ambient_dim, field
    )
