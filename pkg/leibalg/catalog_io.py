"""
Module for reading and writing algebra documents and for the built-in catalog.

An algebra document is UTF-8 JSON:

    {
      "name": "L1",
      "kind": "leibniz",
      "dim": 2,
      "field": "Q",
      "basis": ["e", "f"],
      "table": [{"left": 0, "right": 1, "result": [[0, "1"]]}],
      "unit": null
    }

Coefficients are strings ("3", "-1/2", or a residue for prime fields).
Products missing from the table are zero.
"""

import re
import json
import logging
from pathlib import Path

import numpy as np
from sympy import is_quad_residue

from .algebra_core import AssocCommAlgebra, LeibnizAlgebra, StructureTable, default_names, to_sparse
from .exceptions import DimensionMismatchError, LeibalgError, ParseError, UnknownAlgebraError
from .utils.exact_linalg import QQ, FieldSpec, Matrix, inverse, is_invertible

logger = logging.getLogger(__name__)

LEIBNIZ = "leibniz"
ASSOCIATIVE = "associative"
DOCUMENT_KEYS = ("name", "kind", "dim", "field", "basis", "table", "unit")

VARIANT_ENTRY_BOUND = 3


class AlgebraDocument:
    """In-memory form of an algebra document, coefficients already exact."""

    def __init__(self, name, kind, field, basis, products, unit=None):
        self.name = name
        self.kind = kind
        self.field = field
        self.basis = tuple(basis)
        self.products = products
        self.unit = unit

    @property
    def dim(self):
        return len(self.basis)

    def build(self):
        """Certified algebra described by this document."""
        table = StructureTable.from_products(self.dim, self.products, self.field, self.basis)
        if self.kind == ASSOCIATIVE:
            return AssocCommAlgebra(table, unit=self.unit, name=self.name)
        return LeibnizAlgebra(table, name=self.name)

    def to_dict(self):
        fmt = self.field.format
        table = []
        for (i, j) in sorted(self.products):
            result = [[k, fmt(v)] for k, v in sorted(self.products[(i, j)].items()) if v]
            if result:
                table.append({"left": i, "right": j, "result": result})
        return {
            "name": self.name,
            "kind": self.kind,
            "dim": self.dim,
            "field": self.field.describe(),
            "basis": list(self.basis),
            "table": table,
            "unit": [fmt(u) for u in self.unit] if self.unit is not None else None,
        }


def _require(condition, message, location):
    if not condition:
        raise ParseError(message, location)


def _index(value, dim, location):
    _require(isinstance(value, int) and not isinstance(value, bool), "index must be an integer",
             location)
    _require(0 <= value < dim, f"index {value} out of range for dimension {dim}", location)
    return value


def _coefficient(field, value, location):
    _require(isinstance(value, (str, int)) and not isinstance(value, bool),
             "coefficient must be a string", location)
    try:
        return field.convert(value)
    except LeibalgError as e:
        raise ParseError(str(e), location)


def parse_document(text):
    """Parse document text into an AlgebraDocument with located errors."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, f"line {e.lineno}, column {e.colno}")
    _require(isinstance(raw, dict), "document must be a JSON object", "document")
    for key in ("name", "kind", "dim", "field", "basis", "table"):
        _require(key in raw, f"missing key {key!r}", "document")
    kind = raw["kind"]
    _require(kind in (LEIBNIZ, ASSOCIATIVE), f"unknown kind {kind!r}", "kind")
    dim = raw["dim"]
    _require(isinstance(dim, int) and not isinstance(dim, bool) and dim >= 0,
             "dim must be a non-negative integer", "dim")
    try:
        field = FieldSpec.parse(raw["field"])
    except LeibalgError as e:
        raise ParseError(str(e), "field")
    basis = raw["basis"]
    _require(isinstance(basis, list) and all(isinstance(b, str) for b in basis),
             "basis must be a list of names", "basis")
    _require(len(basis) == dim, f"{len(basis)} basis names for dimension {dim}", "basis")
    _require(isinstance(raw["table"], list), "table must be a list", "table")

    products = {}
    for t, entry in enumerate(raw["table"]):
        where = f"table[{t}]"
        _require(isinstance(entry, dict), "product entry must be an object", where)
        for key in ("left", "right", "result"):
            _require(key in entry, f"missing key {key!r}", where)
        i = _index(entry["left"], dim, f"{where}.left")
        j = _index(entry["right"], dim, f"{where}.right")
        _require((i, j) not in products, f"duplicate product ({i}, {j})", where)
        _require(isinstance(entry["result"], list), "result must be a list", f"{where}.result")
        result = {}
        for r, term in enumerate(entry["result"]):
            at = f"{where}.result[{r}]"
            _require(isinstance(term, list) and len(term) == 2,
                     "result terms are [index, coefficient] pairs", at)
            k = _index(term[0], dim, at)
            value = _coefficient(field, term[1], at)
            result[k] = field.normalize(result.get(k, field.zero) + value)
        products[(i, j)] = {k: v for k, v in result.items() if v}

    unit = raw.get("unit")
    if unit is not None:
        _require(kind == ASSOCIATIVE, "only associative algebras carry a unit", "unit")
        _require(isinstance(unit, list) and len(unit) == dim,
                 f"unit must list {dim} coefficients", "unit")
        unit = tuple(_coefficient(field, u, f"unit[{a}]") for a, u in enumerate(unit))
    return AlgebraDocument(raw["name"], kind, field, basis, products, unit)


def parse(text):
    """Parse and certify an algebra document."""
    return parse_document(text).build()


def document_of(algebra):
    products = {(i, j): dict(result) for i, j, result in algebra.table.nonzero_products()}
    kind = ASSOCIATIVE if isinstance(algebra, AssocCommAlgebra) else LEIBNIZ
    unit = getattr(algebra, "unit", None)
    return AlgebraDocument(
        algebra.name or "unnamed", kind, algebra.field, algebra.basis_names, products, unit
    )


def serialize(algebra):
    """Canonical JSON text with keys in document order."""
    return json.dumps(document_of(algebra).to_dict(), indent=2, ensure_ascii=False) + "\n"


def load(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", str(path))
    return parse(text)


def over_field(algebra, field):
    """The same structure constants read over another field."""
    if algebra.field == field:
        return algebra
    if algebra.field.is_prime:
        raise LeibalgError(f"cannot lift an algebra over {algebra.field.describe()}")
    table = StructureTable(algebra.table.c, field, algebra.basis_names)
    if isinstance(algebra, AssocCommAlgebra):
        return AssocCommAlgebra(table, unit=algebra.unit, name=algebra.name)
    return LeibnizAlgebra(table, name=algebra.name)


def _nonresidue(field):
    """2 over Q; the smallest quadratic non-residue over F_p."""
    if not field.is_prime:
        return 2
    return next(a for a in range(2, field.p) if not is_quad_residue(a, field.p))


def _leibniz(name, basis, products, field):
    return LeibnizAlgebra.from_products(len(basis), products, field, basis, name=name)


def _l1(field, basis=("e", "f"), name="L1"):
    return _leibniz(name, basis, {(0, 1): {0: 1}}, field)


def _l2(field, lam=None, name="L2"):
    lam = field.convert(lam) if lam is not None else field.convert(_nonresidue(field))
    if not lam:
        raise UnknownAlgebraError("L2 needs a nonzero parameter")
    return _leibniz(name, ("e", "f"), {(1, 1): {0: lam}}, field)


def _n2b(field):
    return _leibniz("N2b", ("a1", "a2", "a3"), {(2, 2): {0: 1}}, field)


def _n2c(field):
    return _leibniz("N2c", ("a1", "a2", "a3"), {(1, 1): {0: 1}, (2, 2): {0: 1}}, field)


def _om5(field):
    products = {
        (1, 0): {2: -1}, (0, 1): {2: 1}, (0, 2): {0: -2},
        (2, 0): {0: 2}, (2, 1): {1: -2}, (1, 2): {1: 2},
        (4, 0): {3: 1}, (3, 1): {4: 1}, (3, 2): {3: -1},
        (4, 2): {4: 1},
    }
    return _leibniz("OM5", ("a1", "a2", "a3", "a4", "a5"), products, field)


def _abelian(n, field):
    return _leibniz(f"ABEL{n}", default_names(n), {}, field)


def _a4(field):
    products = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
    return AssocCommAlgebra.from_products(2, products, field, ("e1", "e2"), unit=(1, 0), name="A4")


def _truncated_power(exponent):
    return "1" if exponent == 0 else ("t" if exponent == 1 else f"t^{exponent}")


def _truncated_polynomials(m, field):
    """K[t]/(t^m) on 1, t, ..., t^(m-1)."""
    if m < 1:
        raise UnknownAlgebraError("TK<M> needs M >= 1")
    products = {(a, b): {a + b: 1} for a in range(m) for b in range(m) if a + b < m}
    basis = [_truncated_power(a) for a in range(m)]
    unit = [1] + [0] * (m - 1)
    return AssocCommAlgebra.from_products(m, products, field, basis, unit=unit, name=f"TK{m}")


def _truncated_ideal(m, field):
    """tK[t]/(t^m) on t, ..., t^(m-1); no unit."""
    if m < 2:
        raise UnknownAlgebraError("B<M> needs M >= 2")
    products = {
        (a - 1, b - 1): {a + b - 1: 1}
        for a in range(1, m)
        for b in range(1, m)
        if a + b < m
    }
    basis = [_truncated_power(a) for a in range(1, m)]
    return AssocCommAlgebra.from_products(m - 1, products, field, basis, name=f"B{m}")


_FIXED = {
    "L1": _l1,
    "L2": _l2,
    "L1'": lambda field: _l1(field, ("a1", "a2"), "L1'"),
    "N2b": _n2b,
    "N2c": _n2c,
    "OM5": _om5,
    "A4": _a4,
}
_ALIASES = {"L1p": "L1'"}
_PATTERNS = (
    (re.compile(r"^L2\((?P<arg>[^)]+)\)$"), lambda m, field: _l2(field, m["arg"], f"L2({m['arg']})")),
    (re.compile(r"^TK(?P<arg>\d+)$"), lambda m, field: _truncated_polynomials(int(m["arg"]), field)),
    (re.compile(r"^B(?P<arg>\d+)$"), lambda m, field: _truncated_ideal(int(m["arg"]), field)),
    (re.compile(r"^ABEL(?P<arg>\d+)$"), lambda m, field: _abelian(int(m["arg"]), field)),
)

CATALOG_TEMPLATES = ("L2(<lambda>)", "TK<M>", "B<M>", "ABEL<n>")

LEIBNIZ_CATALOG = ("L1", "L2", "L1'", "N2b", "N2c", "OM5", "ABEL1", "ABEL2", "ABEL3")
ASSOCIATIVE_CATALOG = ("A4", "TK2", "TK3", "B4")

# (algebra, space) -> dimension
GOLDEN_DIMENSIONS = {
    ("L1", "centroid"): 1,
    ("L2", "centroid"): 2,
    ("OM5", "centroid"): 1,
    ("L1", "der"): 1,
    ("L2", "der"): 2,
    ("L1", "qcentroid"): 3,
    ("L1", "der-z"): 0,
    ("L2", "der-z"): 1,
    ("N2c", "der-z"): 2,
    ("N2b", "der-z"): 4,
    ("N2c", "der-c"): 2,
    ("N2b", "der-c"): 1,
}


def catalog_names():
    """Fixed catalog entries, Leibniz algebras first."""
    return list(LEIBNIZ_CATALOG) + list(ASSOCIATIVE_CATALOG)


def get_algebra(name, field=QQ):
    """Resolve a catalog name (including parametrized names) over ``field``."""
    key = _ALIASES.get(name, name)
    if key in _FIXED:
        return _FIXED[key](field)
    for pattern, factory in _PATTERNS:
        match = pattern.match(key)
        if match:
            try:
                return factory(match, field)
            except ParseError as e:
                raise UnknownAlgebraError(f"bad parameter in {name!r}: {e}")
    raise UnknownAlgebraError(f"no catalog algebra named {name!r}")


def export(name, path, field=QQ):
    """Write the catalog entry ``name`` to ``path`` as an algebra document."""
    path = Path(path)
    algebra = get_algebra(name, field)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize(algebra), encoding="utf-8")
    logger.debug("exported %s to %s", name, path)
    return path


def conjugate_algebra(g, p, p_inverse=None, name=None):
    """The algebra on the basis given by the columns of p: [x, y]' = p^-1 [p x, p y]."""
    if p.shape != (g.dim, g.dim):
        raise DimensionMismatchError(f"change of basis must be {g.dim}x{g.dim}")
    p_inverse = p_inverse if p_inverse is not None else inverse(p)
    columns = [p.column(i) for i in range(g.dim)]
    products = {}
    for i, x in enumerate(columns):
        for j, y in enumerate(columns):
            image = to_sparse(p_inverse.apply(g.bracket(x, y)))
            if image:
                products[(i, j)] = image
    return LeibnizAlgebra.from_products(
        g.dim, products, g.field, g.basis_names, name=name or g.name
    )


def random_change_of_basis(n, field, seed):
    """Seeded invertible matrix with entries in [-3, 3], redrawn until invertible."""
    rng = np.random.default_rng(seed)
    while True:
        entries = rng.integers(-VARIANT_ENTRY_BOUND, VARIANT_ENTRY_BOUND + 1, size=(n, n))
        p = Matrix([[int(v) for v in row] for row in entries], field, cols=n)
        if is_invertible(p):
            return p


def random_variant(g, seed):
    """(g', P) with g' the algebra g written in the seeded random basis P."""
    p = random_change_of_basis(g.dim, g.field, seed)
    variant = conjugate_algebra(g, p, name=f"{g.label()}~{seed}")
    return variant, p
