"""
Module for running the structural statements about Lie-invariants as
executable checks.

Each statement becomes a TheoremReport. Hypotheses are detected from the
algebra, never supplied by the caller. A refuted report always carries a
witness (maps, vectors, residuals) that can be re-checked by hand.
"""

import json
import logging
from pathlib import Path

from .algebra_core import (
    ann_subspace,
    block_sum,
    check_lie_identity,
    direct_sum,
    is_abelian,
    subalgebra,
)
from .catalog_io import get_algebra
from .exceptions import InvariantViolation, LeibalgError, PreconditionError
from .operator_spaces import (
    DEFAULT_ORACLE_LIMIT,
    DEFAULT_ORACLE_PRIMES,
    DEFAULT_SEED,
    OperatorSpace,
    SpaceBundle,
    centroid_lie,
    centroid_pushforward,
    check_form_symmetry,
    commutator,
    gender_witness,
    idempotent_split,
    inner_derivation_obstruction,
    qder_witness,
)
from .tensor_product import (
    sigma_map,
    tensor_algebra,
    tensor_centroid_compare,
    tensor_fiber_components,
    tensor_gamma2,
)
from .utils.exact_linalg import Matrix

VERIFIED = "verified"
REFUTED = "refuted"
SKIPPED = "skipped"

SECTIONS = ("s3", "s4", "s5", "s6")

# Companion algebra used by the single-algebra tensor checks.
TENSOR_PARTNER = "TK2"


class TheoremReport:
    """Outcome of one statement on one algebra (or pair)."""

    def __init__(self, id, applicable, reason, verdict, dims=None, witnesses=None):
        self.id = id
        self.applicable = applicable
        self.reason = reason
        self.verdict = verdict
        self.dims = dims or {}
        self.witnesses = witnesses or {}

    @property
    def refuted(self):
        return self.verdict == REFUTED

    def as_dict(self):
        return {
            "id": self.id,
            "applicable": self.applicable,
            "reason": self.reason,
            "verdict": self.verdict,
            "dims": self.dims,
            "witnesses": self.witnesses,
        }

    def __repr__(self):
        return f"TheoremReport({self.id}: {self.verdict})"


def verified(report_id, dims=None, reason="hypotheses hold", witnesses=None):
    return TheoremReport(report_id, True, reason, VERIFIED, dims, witnesses)


def refuted(report_id, witnesses, dims=None, reason="hypotheses hold"):
    if not witnesses:
        raise InvariantViolation(f"{report_id}: refutation without a witness")
    return TheoremReport(report_id, True, reason, REFUTED, dims, witnesses)


def skipped(report_id, reason, dims=None, applicable=False, witnesses=None):
    return TheoremReport(report_id, applicable, reason, SKIPPED, dims, witnesses)


def suite_exit_code(reports):
    """1 when any report is refuted, else 0."""
    return 1 if any(r.refuted for r in reports) else 0


def _vector(field, v):
    return [field.format(x) for x in v]


def _combination(field, *terms):
    """Exact sum of sign * vector over the given terms."""
    size = len(terms[0][1])
    return tuple(
        field.normalize(sum((sign * v[k] for sign, v in terms), 0)) for k in range(size)
    )


def _pair_residuals(g, kind, d, i, j):
    x, y = g.basis_vector(i), g.basis_vector(j)
    d_xy = d.apply(g.lie_bracket(x, y))
    dx_y = g.lie_bracket(d.apply(x), y)
    x_dy = g.lie_bracket(x, d.apply(y))
    field = g.field
    if kind == "der":
        return [_combination(field, (1, d_xy), (-1, dx_y), (-1, x_dy))]
    if kind == "centroid":
        return [_combination(field, (1, d_xy), (-1, dx_y)), _combination(field, (1, dx_y), (-1, x_dy))]
    if kind == "qcentroid":
        return [_combination(field, (1, dx_y), (-1, x_dy))]
    raise LeibalgError(f"no pairwise identity for {kind!r}")


def _identity_defect(g, kind, d):
    names = g.basis_names
    for i in range(g.dim):
        for j in range(g.dim):
            for residual in _pair_residuals(g, kind, d, i, j):
                if any(residual):
                    return {"pair": [names[i], names[j]], "residual": _vector(g.field, residual)}
    return None


def membership_defect(g, kind, d, z_lie=None):
    """Why ``d`` is not in the space ``kind``, or None when it is.

    Identity-defined spaces report the first basis pair with a nonzero
    residual; existential spaces report that no witness maps exist.
    """
    if kind in ("der", "centroid", "qcentroid"):
        return _identity_defect(g, kind, d)
    if kind == "der_z":
        defect = _identity_defect(g, "der", d)
        if defect is not None:
            return defect
        for m in range(g.dim):
            if not z_lie.contains(d.column(m)):
                return {
                    "basis_vector": g.basis_names[m],
                    "image_outside_z_lie": _vector(g.field, d.column(m)),
                }
        return None
    if kind == "qder":
        if qder_witness(g, d) is None:
            return {"recheck": "no map f' satisfies [f(x),y]_Lie + [x,f(y)]_Lie = f'([x,y]_Lie)"}
        return None
    if kind == "gender":
        if gender_witness(g, d) is None:
            return {"recheck": "no maps f', f'' satisfy the generalized derivation identity"}
        return None
    raise LeibalgError(f"no membership test for {kind!r}")


def _checked_defect(g, kind, d, z_lie=None):
    defect = membership_defect(g, kind, d, z_lie)
    if defect is None:
        raise InvariantViolation(f"element outside the {kind} space passes its defining identity")
    return defect


class TheoremSuite:
    """Run the statement checks for one algebra, a pair, or a tensor product."""

    def __init__(self, seed=DEFAULT_SEED, oracle_primes=DEFAULT_ORACLE_PRIMES,
                 oracle_limit=DEFAULT_ORACLE_LIMIT, logger=None, console=None):
        """Initialize the suite.

        Args:
            seed: Seed of the sampling stage of the almost inner computations
            oracle_primes: Number of primes used by the exhaustive oracle
            oracle_limit: Largest p^n the oracle enumerates
            logger: Logger for headers and verdicts (module logger by default)
            console: Optional rich console mirroring the log
        """
        self.seed = seed
        self.oracle_primes = oracle_primes
        self.oracle_limit = oracle_limit
        self.logger = logger or logging.getLogger(__name__)
        self.console = console
        self.results = []
        self.results_file = None

    def bundle(self, g):
        return SpaceBundle(g, self.seed, self.oracle_primes, self.oracle_limit)

    # Single algebra

    def run_suite(self, g, sections=SECTIONS):
        """Reports for every requested section, in a fixed order."""
        unknown = [s for s in sections if s not in SECTIONS]
        if unknown:
            raise LeibalgError(f"unknown suite section {unknown[0]!r}")
        self._log_header(f"Checking {g.label()} (dim {g.dim}, {g.field.describe()})")
        bundle = self.bundle(g)
        reports = []
        for section in SECTIONS:
            if section not in sections:
                continue
            self._log_section_header(f"Section {section}")
            if section == "s6":
                reports.extend(self._run_checks(self._s6_checks, bundle))
                partner = get_algebra(TENSOR_PARTNER, g.field)
                reports.extend(self.run_tensor_suite(partner, g))
            else:
                checks = {"s3": self._s3_checks, "s4": self._s4_checks, "s5": self._s5_checks}
                reports.extend(self._run_checks(checks[section], bundle))
        return reports

    def _run_checks(self, checks, bundle):
        reports = []
        for report_id, check in checks():
            reports.append(self._record(self._evaluate(report_id, check, bundle)))
        return reports

    def _evaluate(self, report_id, check, *args):
        try:
            return check(report_id, *args)
        except InvariantViolation as e:
            return refuted(report_id, {"violation": str(e)})
        except LeibalgError as e:
            return skipped(report_id, f"evaluation failed: {e}", applicable=True)

    def _s3_checks(self):
        return [
            ("remark-identity", self._remark_identity),
            ("prop-ann-gamma2", self._ann_gamma2),
            ("prop-3-intersection", self._der_z_intersection),
            ("prop-3-der-z-closed-form", self._der_z_closed_form),
            ("prop-3-der-z-centraliser", self._der_z_centraliser),
            ("thm-3-decomposition", self._decomposition),
            ("thm-3-pushforward", self._pushforward),
            ("prop-3-6-commute-on-gamma2", self._commute_on_gamma2),
            ("prop-3-idempotents", self._idempotents),
            ("prop-3-invariant-forms", self._invariant_forms),
        ]

    def _s4_checks(self):
        return [
            ("prop-4-tower", self._tower),
            ("lemma-1-i", self._lemma_der_centroid),
            ("lemma-1-ii", self._lemma_qcentroid_qder),
            ("lemma-1-iii", self._lemma_qcentroid_pair),
            ("lemma-1-iv", self._lemma_centroid_in_qder),
            ("lemma-1-v", self._lemma_sum_in_gender),
            ("thm-4-commutator-in-z-lie", self._commutator_in_z_lie),
            ("thm-4-centroid-in-qder-qcentroid", self._centroid_in_intersection),
            ("thm-4-centroid-eq-qder-cap-qcentroid", self._centroid_equals_intersection),
            ("prop-4-qcentroid-subalgebra", self._qcentroid_subalgebra),
        ]

    def _s5_checks(self):
        return [
            ("prop-5-class-2-t-c", self._class_two_t_c),
            ("prop-5-ider-in-der-c", self._ider_in_der_c),
            ("thm-5-der-z-t-space", self._der_z_t_space),
            ("thm-5-equal", self._equal),
            ("cor-5-10", self._corollary_equal),
        ]

    def _s6_checks(self):
        return [("cor-6-der-c-intersection", self._der_c_intersection)]

    # s3: centres, Lie-derivations and the Lie-centroid

    def _remark_identity(self, rid, b):
        g = b.g
        triple = check_lie_identity(g)
        if triple is None:
            return verified(rid, {"triples": g.dim ** 3}, "holds for every Leibniz algebra")
        i, j, k = triple
        residual = g.bracket(g.basis_vector(i), g.lie_bracket(g.basis_vector(j), g.basis_vector(k)))
        names = g.basis_names
        return refuted(rid, {
            "triple": [names[i], names[j], names[k]],
            "residual": _vector(g.field, residual),
        })

    def _ann_gamma2(self, rid, b):
        ann, gamma = ann_subspace(b.g), b.gamma2
        dims = {"ann": ann.dim, "gamma2": gamma.dim}
        if ann == gamma:
            return verified(rid, dims, "1/2 lies in the ground field")
        extra = next(v for v in ann.basis + gamma.basis if not (ann.contains(v) and gamma.contains(v)))
        return refuted(rid, {"vector": _vector(b.g.field, extra)}, dims)

    def _der_z_intersection(self, rid, b):
        expected = b.der & b.centroid
        dims = {"der_z": b.der_z.dim, "der_cap_centroid": expected.dim}
        if b.der_z == expected:
            return verified(rid, dims)
        return self._space_difference(rid, b.der_z, expected, dims)

    def _space_difference(self, rid, first, second, dims):
        for a, c in ((first, second), (second, first)):
            for d in a.basis:
                if not c.contains(d):
                    return refuted(rid, {"map": d.to_strings(), "missing_from": c.name or "other side"}, dims)
        raise InvariantViolation(f"{rid}: unequal spaces without a separating element")

    def _der_z_closed_form(self, rid, b):
        dims = {"der_z": b.der_z.dim, "t_space": b.t_space.dim}
        if b.der_z.space == b.t_space.space:
            return verified(rid, dims)
        return self._space_difference(rid, b.der_z, b.t_space, dims)

    def _der_z_centraliser(self, rid, b):
        dims = {"der_z": b.der_z.dim, "rl_span": b.rl_span.dim}
        for d in b.der_z.basis:
            for m in b.rl_span.basis:
                c = commutator(d, m)
                if not c.is_zero():
                    return refuted(rid, {
                        "der_z": d.to_strings(), "rl": m.to_strings(), "commutator": c.to_strings()
                    }, dims)
        return verified(rid, dims)

    def _decomposition(self, rid, b):
        decomposition = b.decomposition
        dims = {
            "centroid": decomposition.centroid.dim,
            "der_z": decomposition.der_z.dim,
            "psi": len(decomposition.psi),
        }
        return verified(rid, dims, witnesses={"psi": [p.to_strings() for p in decomposition.psi]})

    def _pushforward(self, rid, b):
        g = b.g
        dims = {}
        failures = {}
        for label, ideal in (("z_lie", b.z_lie), ("gamma2", b.gamma2)):
            report = centroid_pushforward(g, ideal, b.centroid)
            dims[f"{label}_quotient"] = report["quotient_dim"]
            dims[f"{label}_preserving"] = report["preserving_dim"]
            for flag in ("rl_onto", "images_in_centroid", "all_preserve", "kernel_kills_gamma2"):
                if report[flag] is False:
                    failures[f"{label}:{flag}"] = [m.to_strings() for m in report["pushed"]]
        if failures:
            return refuted(rid, failures, dims)
        return verified(rid, dims)

    def _commute_on_gamma2(self, rid, b):
        basis = b.centroid.basis
        dims = {"centroid": len(basis), "gamma2": b.gamma2.dim}
        for p, phi in enumerate(basis):
            for psi in basis[p + 1:]:
                c = commutator(phi, psi)
                for v in b.gamma2.basis:
                    image = c.apply(v)
                    if any(image):
                        return refuted(rid, {
                            "phi": phi.to_strings(), "psi": psi.to_strings(),
                            "vector": _vector(b.g.field, v), "residual": _vector(b.g.field, image),
                        }, dims)
        return verified(rid, dims)

    def _idempotents(self, rid, b):
        g = b.g
        if b.gamma2.is_zero():
            return skipped(rid, "gamma_2 is zero", {"gamma2": 0})
        h = subalgebra(g, b.gamma2, name=f"gamma2({g.label()})")
        centroid = centroid_lie(h)
        n, field = h.dim, h.field
        candidates = [Matrix.zeros(n, n, field), Matrix.identity(n, field)]
        candidates.extend(phi for phi in centroid.basis if phi @ phi == phi)
        splits = 0
        for phi in candidates:
            kernel, image = idempotent_split(h, phi, centroid)
            splits += 1
            if kernel.dim + image.dim != n:
                return refuted(rid, {"idempotent": phi.to_strings()})
        dims = {"gamma2": n, "centroid_gamma2": centroid.dim, "idempotents_split": splits}
        return verified(rid, dims, "gamma_2 is nonzero")

    def _invariant_forms(self, rid, b):
        g = b.g
        dims = {"forms": b.forms.dim, "centroid": b.centroid.dim}
        for gram in b.forms.basis:
            for phi in b.centroid.basis:
                if not check_form_symmetry(g, phi, gram, b.gamma2):
                    return refuted(rid, {"form": gram.to_strings(), "phi": phi.to_strings()}, dims)
        return verified(rid, dims)

    # s4: quasi-centroids and generalized derivations

    def _inclusion(self, rid, b, small, large, kind, dims=None):
        dims = dims or {"small": small.dim, "large": large.dim}
        for d in small.basis:
            if not large.contains(d):
                witness = {"map": d.to_strings()}
                witness.update(_checked_defect(b.g, kind, d, b.z_lie))
                return refuted(rid, witness, dims)
        return verified(rid, dims)

    def _bracket_inclusion(self, b, left, right, target, kind):
        """None, or a witness for some [a, b] outside ``target``."""
        for x in left.basis:
            for y in right.basis:
                c = commutator(x, y)
                if not target.contains(c):
                    witness = {"left": x.to_strings(), "right": y.to_strings(), "commutator": c.to_strings()}
                    witness.update(_checked_defect(b.g, kind, c, b.z_lie))
                    return witness
        return None

    def _tower(self, rid, b):
        chain = (("der_z", b.der_z), ("der", b.der), ("qder", b.qder), ("gender", b.gender))
        dims = {label: space.dim for label, space in chain}
        for (_, small), (kind, large) in zip(chain, chain[1:]):
            report = self._inclusion(rid, b, small, large, kind, dims)
            if report.refuted:
                return report
        return verified(rid, dims, "holds for every Leibniz algebra")

    def _lemma_der_centroid(self, rid, b):
        dims = {"der": b.der.dim, "centroid": b.centroid.dim}
        witness = self._bracket_inclusion(b, b.der, b.centroid, b.centroid, "centroid")
        return refuted(rid, witness, dims) if witness else verified(rid, dims)

    def _lemma_qcentroid_qder(self, rid, b):
        dims = {"qcentroid": b.qcentroid.dim, "qder": b.qder.dim}
        witness = (
            self._bracket_inclusion(b, b.qcentroid, b.qder, b.qcentroid, "qcentroid")
            or self._bracket_inclusion(b, b.qder, b.qcentroid, b.qcentroid, "qcentroid")
        )
        return refuted(rid, witness, dims) if witness else verified(rid, dims)

    def _lemma_qcentroid_pair(self, rid, b):
        dims = {"qcentroid": b.qcentroid.dim, "qder": b.qder.dim}
        witness = self._bracket_inclusion(b, b.qcentroid, b.qcentroid, b.qder, "qder")
        return refuted(rid, witness, dims) if witness else verified(rid, dims)

    def _lemma_centroid_in_qder(self, rid, b):
        g = b.g
        dims = {"centroid": b.centroid.dim, "qder": b.qder.dim}
        report = self._inclusion(rid, b, b.centroid, b.qder, "qder", dims)
        if report.refuted:
            return report
        # f' = 2 d is a valid witness for every centroid element.
        for d in b.centroid.basis:
            twice = d.scale(2)
            for i in range(g.dim):
                for j in range(g.dim):
                    x, y = g.basis_vector(i), g.basis_vector(j)
                    residual = _combination(
                        g.field,
                        (1, g.lie_bracket(d.apply(x), y)),
                        (1, g.lie_bracket(x, d.apply(y))),
                        (-1, twice.apply(g.lie_bracket(x, y))),
                    )
                    if any(residual):
                        return refuted(rid, {
                            "map": d.to_strings(),
                            "pair": [g.basis_names[i], g.basis_names[j]],
                            "residual": _vector(g.field, residual),
                        }, dims)
        return verified(rid, dims)

    def _lemma_sum_in_gender(self, rid, b):
        total = b.qder + b.qcentroid
        dims = {"qder_plus_qcentroid": total.dim, "gender": b.gender.dim}
        return self._inclusion(rid, b, total, b.gender, "gender", dims)

    def _commutator_in_z_lie(self, rid, b):
        g = b.g
        brackets = b.centroid.bracket_with(b.qcentroid)
        dims = {"commutators": brackets.dim, "z_lie": b.z_lie.dim}
        for c in brackets.basis:
            for m in range(g.dim):
                if not b.z_lie.contains(c.column(m)):
                    return refuted(rid, {
                        "commutator": c.to_strings(),
                        "basis_vector": g.basis_names[m],
                        "image": _vector(g.field, c.column(m)),
                    }, dims)
        reason = "Z_Lie is zero, so the commutators vanish" if b.z_lie.is_zero() else "hypotheses hold"
        return verified(rid, dims, reason)

    def _centroid_in_intersection(self, rid, b):
        both = b.qder & b.qcentroid
        dims = {"centroid": b.centroid.dim, "qder_cap_qcentroid": both.dim}
        for kind, space in (("qder", b.qder), ("qcentroid", b.qcentroid)):
            report = self._inclusion(rid, b, b.centroid, space, kind, dims)
            if report.refuted:
                return report
        return verified(rid, dims)

    def _centroid_equals_intersection(self, rid, b):
        g = b.g
        both = b.qder & b.qcentroid
        dims = {"centroid": b.centroid.dim, "qder_cap_qcentroid": both.dim}
        if both == b.centroid:
            return verified(rid, dims)
        for f in both.basis:
            if not b.centroid.contains(f):
                witness = {"map": f.to_strings(), "f_prime": qder_witness(g, f).to_strings()}
                witness.update(_checked_defect(g, "centroid", f))
                return refuted(rid, witness, dims)
        raise InvariantViolation(f"{rid}: centroid is not inside QDer cap QGamma")

    def _qcentroid_subalgebra(self, rid, b):
        s = b.qcentroid + b.qcentroid.bracket_with(b.qcentroid)
        dims = {"qcentroid_plus_brackets": s.dim, "gender": b.gender.dim}
        for x in s.basis:
            for y in s.basis:
                c = commutator(x, y)
                if not s.contains(c):
                    return refuted(rid, {
                        "left": x.to_strings(), "right": y.to_strings(), "commutator": c.to_strings()
                    }, dims)
        return self._inclusion(rid, b, s, b.gender, "gender", dims)

    # s5: almost inner and inner Lie-derivations

    def _class_two_t_c(self, rid, b):
        c = b.nilpotency_class
        if c != 2:
            return skipped(rid, f"Lie-nilpotency class is {c if c is not None else 'infinite'}, not 2")
        dims = {"der_c": b.der_c.dim, "t_c": b.t_c.dim}
        certificates = {"der_c": b.der_c.certificate["summary"], "t_c": b.t_c.certificate["summary"]}
        if dims["der_c"] == dims["t_c"]:
            return verified(rid, dims, "Lie-nilpotent of class 2", certificates)
        return refuted(rid, certificates, dims, "Lie-nilpotent of class 2")

    def _admissibility(self, g):
        """None when gamma_2 lies in the centre of a non-abelian g, else the reason."""
        if is_abelian(g):
            return "algebra is abelian"
        triple = inner_derivation_obstruction(g)
        if triple is not None:
            names = ", ".join(g.basis_names[t] for t in triple)
            return f"gamma_2 is not central: [[x,y]_Lie, z] != 0 at ({names})"
        return None

    def _ider_in_der_c(self, rid, b):
        try:
            ider = b.space("ider")
        except PreconditionError as e:
            return skipped(rid, str(e))
        dims = {"ider": ider.dim, "der_c": b.der_c.dim}
        if ider <= b.der_c:
            return verified(rid, dims)
        d = next(d for d in ider.basis if not b.der_c.contains(d))
        return refuted(rid, {"inner_map": d.to_strings(), "certificate": b.der_c.certificate["summary"]}, dims)

    def _der_z_t_space(self, rid, b):
        dims = {"der_z": b.der_z.dim, "t_space": b.t_space.dim}
        if dims["der_z"] == dims["t_space"]:
            return verified(rid, dims, "dimensions compared, no isomorphism assumed")
        return refuted(rid, {"der_z": b.der_z.to_strings(), "t_space": b.t_space.to_strings()}, dims)

    def _equal(self, rid, b):
        reason = self._admissibility(b.g)
        if reason:
            return skipped(rid, reason)
        der_c, der_z = b.der_c, b.der_z
        lhs = der_c == der_z
        centre_is_gamma2 = b.z_lie == b.gamma2
        iso = der_c.dim == b.t_inner.dim
        dims = {
            "der_c": der_c.dim, "der_z": der_z.dim, "z_lie": b.z_lie.dim,
            "gamma2": b.gamma2.dim, "t_inner": b.t_inner.dim,
        }
        data = {
            "der_c_equals_der_z": lhs,
            "z_lie_equals_gamma2": centre_is_gamma2,
            "der_c_iso_t": iso,
            "iso_interpretation": "dimension equality",
            "certificate": der_c.certificate["summary"],
        }
        if lhs == (centre_is_gamma2 and iso):
            return verified(rid, dims, "non-abelian with gamma_2 central", data)
        return refuted(rid, data, dims, "non-abelian with gamma_2 central")

    def _corollary_equal(self, rid, b):
        reason = self._admissibility(b.g)
        if reason is None and b.z_lie.dim != 1:
            reason = f"Z_Lie has dimension {b.z_lie.dim}, not 1"
        if reason:
            return skipped(rid, reason)
        lhs = b.der_c == b.der_z
        rhs = b.z_lie == b.gamma2
        dims = {"der_c": b.der_c.dim, "der_z": b.der_z.dim, "z_lie": 1, "gamma2": b.gamma2.dim}
        data = {"der_c_equals_der_z": lhs, "z_lie_equals_gamma2": rhs}
        if lhs == rhs:
            return verified(rid, dims, "gamma_2 central and dim Z_Lie = 1", data)
        return refuted(rid, data, dims, "gamma_2 central and dim Z_Lie = 1")

    # s6: tensor products

    def _der_c_intersection(self, rid, b):
        reason = self._admissibility(b.g)
        if reason is None and (b.z_lie.dim != 1 or b.z_lie != b.gamma2):
            reason = "needs Z_Lie = gamma_2 of dimension 1"
        if reason:
            return skipped(rid, reason)
        expected = b.der & b.centroid
        dims = {"der_c": b.der_c.dim, "der_cap_centroid": expected.dim}
        if b.der_c == expected:
            return verified(rid, dims, "gamma_2 central and Z_Lie = gamma_2 of dimension 1")
        return self._space_difference(rid, b.der_c, expected, dims)

    def run_tensor_suite(self, A, g):
        """Reports on A (x) g: embeddings, the centroid theorem, fibers and gamma_2."""
        self._log_section_header(f"Tensor product {A.label()} (x) {g.label()}")
        tensor = tensor_algebra(A, g)
        state = {}
        checks = [
            ("lemma-6-embedding", self._tensor_embedding),
            ("prop-6-mixed-inclusion", self._tensor_mixed),
            ("thm-6-tensor-centroid", self._tensor_centroid),
            ("remark-6-non-unital-strict", self._tensor_strict),
            ("thm-6-polynomial-ring", self._tensor_polynomial),
            ("lemma-6-fiber-components", self._tensor_fibers),
            ("prop-6-gamma2", self._tensor_gamma2),
            ("prop-6-sigma-iso", self._tensor_sigma),
            ("prop-6-finite-image", self._tensor_finite_image),
        ]
        reports = []
        for report_id, check in checks:
            reports.append(self._record(self._evaluate(report_id, check, A, g, tensor, state)))
        return reports

    def _comparison(self, A, g, tensor, state):
        if "comparison" not in state:
            try:
                state["comparison"] = tensor_centroid_compare(A, g, tensor)
            except InvariantViolation as e:
                state["comparison"] = e
        if isinstance(state["comparison"], Exception):
            raise state["comparison"]
        return state["comparison"]

    def _tensor_embedding(self, rid, A, g, tensor, state):
        comparison = self._comparison(A, g, tensor, state)
        dims = comparison.dims()
        return verified(rid, dims, "holds for every pair", {"embedded_dim": comparison.embedded.dim})

    def _tensor_mixed(self, rid, A, g, tensor, state):
        comparison = self._comparison(A, g, tensor, state)
        return verified(rid, comparison.dims(), "holds for every pair")

    def _tensor_centroid(self, rid, A, g, tensor, state):
        comparison = self._comparison(A, g, tensor, state)
        dims = comparison.dims()
        witnesses = {"hypotheses": comparison.hypotheses, "equal": comparison.equal}
        if comparison.witness is not None:
            witnesses["outside_embedded"] = comparison.witness.to_strings()
        if not comparison.applicable:
            failed = [k for k, v in comparison.hypotheses.items() if not v]
            return skipped(rid, f"hypotheses not met: {', '.join(failed)}", dims, witnesses=witnesses)
        return verified(rid, dims, "A unital, gamma_2(g) nonzero, Gamma^Lie(g) scalar", witnesses)

    def _tensor_strict(self, rid, A, g, tensor, state):
        if A.is_unital:
            return skipped(rid, "A is unital")
        comparison = self._comparison(A, g, tensor, state)
        dims = comparison.dims()
        if comparison.equal:
            return skipped(rid, "no strict inclusion at this truncation", dims, applicable=True)
        return verified(rid, dims, "A is not unital",
                        {"outside_embedded": comparison.witness.to_strings()})

    def _tensor_polynomial(self, rid, A, g, tensor, state):
        name = A.label()
        if not (name.startswith("TK") and name[2:].isdigit()):
            return skipped(rid, "A is not a truncated polynomial ring")
        comparison = self._comparison(A, g, tensor, state)
        data = {"finite_shadow": True, "truncation": name}
        if not comparison.applicable:
            return skipped(rid, "hypotheses on g not met", comparison.dims(), witnesses=data)
        return verified(rid, comparison.dims(), "finite truncation of K[t]", data)

    def _tensor_fibers(self, rid, A, g, tensor, state):
        if not A.is_unital:
            return skipped(rid, "A is not unital")
        comparison = self._comparison(A, g, tensor, state)
        for phi in comparison.centroid.basis:
            tensor_fiber_components(A, g, phi, tensor, comparison.centroid)
        return verified(rid, {"centroid_product": comparison.centroid.dim, "A": A.dim}, "A is unital")

    def _tensor_gamma2(self, rid, A, g, tensor, state):
        result = tensor_gamma2(A, g, tensor)
        dims = {"direct": result.direct.dim, "block": result.block.dim}
        if not A.is_unital:
            return skipped(rid, "A is not unital", dims, witnesses={"equal": result.equal})
        return verified(rid, dims, "A is unital")

    def _tensor_sigma(self, rid, A, g, tensor, state):
        if not A.is_unital:
            return skipped(rid, "A is not unital")
        sigma = sigma_map(A)
        dims = {"rank": sigma["rank"], "A": A.dim}
        if sigma["bijective"]:
            return verified(rid, dims, "A is unital")
        return refuted(rid, {"evaluation": sigma["matrix"].to_strings()}, dims, "A is unital")

    def _tensor_finite_image(self, rid, A, g, tensor, state):
        return skipped(rid, "vacuous: every map of a finite-dimensional A has finite g-image")

    # Direct sums

    def run_pair_suite(self, g1, g2):
        """Centres and the five operator spaces of g1 (+) g2 against the block sums."""
        total = direct_sum(g1, g2)
        self._log_header(f"Checking the direct sum {total.label()}")
        parts = (self.bundle(g1), self.bundle(g2))
        whole = self.bundle(total)
        reports = [self._record(self._evaluate("lemma-2-i", self._pair_centres, parts, whole))]
        for letter, attr in zip("abcde", ("der", "gender", "qder", "centroid", "qcentroid")):
            rid = f"lemma-2-ii-{letter}"
            if not whole.z_lie.is_zero():
                report = skipped(rid, "Z_Lie of the sum is nonzero", {"z_lie": whole.z_lie.dim})
            else:
                report = self._evaluate(rid, self._pair_space, parts, whole, attr)
            reports.append(self._record(report))
        return reports

    def _pair_centres(self, rid, parts, whole):
        expected = block_sum(parts[0].z_lie, parts[1].z_lie)
        dims = {"sum": whole.z_lie.dim, "block": expected.dim}
        if whole.z_lie == expected:
            return verified(rid, dims, "holds for every direct sum")
        extra = next(v for v in whole.z_lie.basis + expected.basis
                     if not (whole.z_lie.contains(v) and expected.contains(v)))
        return refuted(rid, {"vector": _vector(whole.g.field, extra)}, dims)

    def _pair_space(self, rid, parts, whole, attr):
        first, second = (getattr(p, attr) for p in parts)
        n1, n2 = first.n, second.n
        n = n1 + n2
        blocks = [_embed_block(m, n, 0) for m in first.basis]
        blocks.extend(_embed_block(m, n, n1) for m in second.basis)
        expected = OperatorSpace.span(blocks, n, whole.g.field, f"{attr} block sum")
        actual = getattr(whole, attr)
        dims = {"sum": actual.dim, "block": expected.dim}
        if actual == expected:
            return verified(rid, dims, "Z_Lie of the sum is zero")
        return self._space_difference(rid, actual, expected, dims)

    # Recording and output

    def _record(self, report):
        self.results.append(report)
        message = f"{report.id}: {report.verdict}"
        if report.verdict == SKIPPED:
            message += f" ({report.reason})"
        if report.refuted:
            self._log_error(message)
        else:
            self._log_info(message)
        return report

    def save_results(self, output_file):
        """Write every recorded report as a JSON array and return the path."""
        path = Path(output_file)
        with open(path, "w", encoding="utf-8") as f:
            json.dump([r.as_dict() for r in self.results], f, indent=2, ensure_ascii=False)
            f.write("\n")
        self.results_file = str(path)
        return self.results_file

    def _log_header(self, message):
        self.logger.info("=" * 70)
        self.logger.info(message)
        self.logger.info("=" * 70)
        if self.console:
            self.console.print(f"\n[bold cyan]{message}[/bold cyan]")

    def _log_section_header(self, message):
        self.logger.info(message)
        if self.console:
            self.console.print(f"\n[bold]{message}[/bold]")

    def _log_info(self, message):
        self.logger.info(message)
        if self.console:
            self.console.print(f"[green]INFO:[/green] {message}")

    def _log_error(self, message):
        self.logger.error(message)
        if self.console:
            self.console.print(f"[bold red]REFUTED:[/bold red] {message}")


def _embed_block(m, n, offset):
    """n x n matrix holding ``m`` as the diagonal block starting at ``offset``."""
    zero = m.field.zero
    rows = [[zero] * n for _ in range(n)]
    for r in range(m.rows):
        for c in range(m.cols):
            rows[offset + r][offset + c] = m[r, c]
    return Matrix(rows, m.field, cols=n)


def run_suite(g, sections=SECTIONS, seed=DEFAULT_SEED, **options):
    return TheoremSuite(seed, **options).run_suite(g, sections)


def run_pair_suite(g1, g2, seed=DEFAULT_SEED, **options):
    return TheoremSuite(seed, **options).run_pair_suite(g1, g2)


def run_tensor_suite(A, g, seed=DEFAULT_SEED, **options):
    return TheoremSuite(seed, **options).run_tensor_suite(A, g)
