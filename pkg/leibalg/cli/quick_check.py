#!/usr/bin/env python3
"""
Quick check against the worked examples with known answers.
"""

import sys
import json
import argparse

from leibalg.catalog_io import GOLDEN_DIMENSIONS, get_algebra
from leibalg.exceptions import LeibalgError
from leibalg.operator_spaces import DEFAULT_SEED, SpaceBundle
from leibalg.tensor_product import tensor_centroid_compare
from leibalg.utils.exact_linalg import Matrix, Subspace
from leibalg.utils.finite_field import brute_force_centres, reduce_subspace

EXHAUSTIVE_SUMMARY = "exhaustive mod 3,5,7: pass"
ORACLE_PRIME = 5
ORACLE_ALGEBRAS = ("L1", "L2", "N2b", "N2c", "OM5")


def parse_args(argv=None):
    """Parse command-line arguments."""
    parser = argparse.ArgumentParser(description="Quick check of the catalog's known answers")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"Sampling seed for the pointwise spaces (default: {DEFAULT_SEED})")
    parser.add_argument("--verbose", "-v", action="store_true",
                        help="Enable verbose output")
    return parser.parse_args(argv)


def _error(message, **extra):
    return dict(extra, status="error", message=message)


def check_golden_dimensions(seed=DEFAULT_SEED):
    """Every tabulated (algebra, space) dimension."""
    bundles = {}
    dims = {}
    mismatches = []
    for (name, which), expected in GOLDEN_DIMENSIONS.items():
        if name not in bundles:
            bundles[name] = SpaceBundle(get_algebra(name), seed)
        actual = bundles[name].space(which).dim
        dims[f"{name}:{which}"] = actual
        if actual != expected:
            mismatches.append(f"dim {which}({name}) = {actual}, expected {expected}")
    result = {"dimensions": dims, "status": "ok"}
    if mismatches:
        result["status"] = "error"
        result["message"] = "; ".join(mismatches)
    return result


def check_golden_bases():
    """Gamma^Lie(L2) = span{id, E12}, Der(L2) and Der_z(L2) = span{E12}."""
    bundle = SpaceBundle(get_algebra("L2"))
    field = bundle.g.field
    e12 = Matrix.unit(2, 2, 0, 1, field)
    expected = {
        "centroid": [Matrix.identity(2, field), e12],
        "der": [Matrix([[1, 0], [0, "1/2"]], field), e12],
        "der_z": [e12],
    }
    failures = []
    for which, basis in expected.items():
        space = getattr(bundle, which)
        if space.dim != len(basis) or not all(space.contains(m) for m in basis):
            failures.append(f"{which}(L2) = {space.to_strings()}")
    if failures:
        return _error("; ".join(failures))
    return {"status": "ok"}


def check_quasi_examples():
    """QGamma(L1) has dim 3, diag(0,1) is in QDer \\ Der and [[1,1],[0,0]] in GenDer \\ QDer."""
    bundle = SpaceBundle(get_algebra("L1"))
    field = bundle.g.field
    diagonal = Matrix([[0, 0], [0, 1]], field)
    upper = Matrix([[1, 1], [0, 0]], field)
    result = {
        "qcentroid_dim": bundle.qcentroid.dim,
        "qder_dim": bundle.qder.dim,
        "gender_dim": bundle.gender.dim,
        "status": "ok",
    }
    if bundle.qcentroid.dim != 3:
        result.update(status="error", message=f"QGamma(L1) has dim {bundle.qcentroid.dim}")
    elif not bundle.qder.contains(diagonal) or bundle.der.contains(diagonal):
        result.update(status="error", message="diag(0,1) is not in QDer(L1) \\ Der(L1)")
    elif not bundle.gender.contains(upper) or bundle.qder.contains(upper):
        result.update(status="error", message="[[1,1],[0,0]] is not in GenDer(L1) \\ QDer(L1)")
    return result


def check_om5():
    """gamma_2(OM5) = span{a4, a5} and Gamma^Lie(OM5) = K id."""
    bundle = SpaceBundle(get_algebra("OM5"))
    field = bundle.g.field
    expected = Subspace.span(
        [tuple(field.one if k == i else field.zero for k in range(5)) for i in (3, 4)], 5, field
    )
    result = {"gamma2_dim": bundle.gamma2.dim, "centroid_dim": bundle.centroid.dim, "status": "ok"}
    if bundle.gamma2 != expected:
        result.update(status="error", message=f"gamma_2(OM5) = {bundle.gamma2.to_strings()}")
    elif bundle.centroid.dim != 1 or not bundle.centroid.contains(Matrix.identity(5, field)):
        result.update(status="error", message=f"Gamma^Lie(OM5) = {bundle.centroid.to_strings()}")
    return result


def _compare(assoc, leibniz):
    comparison = tensor_centroid_compare(get_algebra(assoc), get_algebra(leibniz))
    return {
        "dims": comparison.dims(),
        "applicable": comparison.applicable,
        "equal": comparison.equal,
        "status": "ok",
    }


def check_tensor_example():
    """Gamma^Lie(A4 (x) L1') = Gamma(A4) (x) K id, of dim 2."""
    try:
        result = _compare("A4", "L1'")
    except LeibalgError as e:
        return _error(f"A4 (x) L1': {e}")
    if not (result["applicable"] and result["equal"]):
        result.update(status="error", message="A4 (x) L1' does not meet the tensor hypotheses")
    elif result["dims"]["centroid_product"] != 2:
        result.update(status="error", message=f"dim {result['dims']['centroid_product']}, expected 2")
    return result


def check_polynomial_tensor():
    """Gamma^Lie(K[t]/(t^3) (x) OM5) has dim 3."""
    try:
        result = _compare("TK3", "OM5")
    except LeibalgError as e:
        return _error(f"TK3 (x) OM5: {e}")
    if result["dims"]["centroid_product"] != 3:
        result.update(status="error", message=f"dim {result['dims']['centroid_product']}, expected 3")
    return result


def check_non_unital_strict():
    """Without a unit the pure tensors need not exhaust the Lie-centroid."""
    try:
        result = _compare("B4", "OM5")
    except LeibalgError as e:
        return _error(f"B4 (x) OM5: {e}")
    if result["equal"]:
        result.update(status="warning", message="Gamma(B4) (x) Gamma^Lie(OM5) is the whole Lie-centroid")
    return result


def check_almost_inner(seed=DEFAULT_SEED):
    """Der_c(N2c) has dim 2 and Der_c(N2b) dim 1, both exhaustively certified."""
    dims = {}
    failures = []
    for name, expected in (("N2c", 2), ("N2b", 1)):
        space = SpaceBundle(get_algebra(name), seed).der_c
        dims[name] = space.dim
        summary = (space.certificate or {}).get("summary")
        if space.dim != expected:
            failures.append(f"dim der-c({name}) = {space.dim}, expected {expected}")
        elif summary != EXHAUSTIVE_SUMMARY:
            failures.append(f"der-c({name}) certificate: {summary}")
    result = {"dimensions": dims, "status": "ok"}
    if failures:
        result.update(status="error", message="; ".join(failures))
    return result


def check_centre_oracle(p=ORACLE_PRIME):
    """The exact centres, read mod p, against enumeration of F_p^n."""
    mismatches = []
    for name in ORACLE_ALGEBRAS:
        g = get_algebra(name)
        exact = SpaceBundle(g).centres.as_dict()
        enumerated = brute_force_centres(g, p)
        for key, space in exact.items():
            if reduce_subspace(space, p) != enumerated[key]:
                mismatches.append(f"{key}({name}) mod {p}")
    result = {"algebras": list(ORACLE_ALGEBRAS), "prime": p, "status": "ok"}
    if mismatches:
        result.update(status="error", message="centres disagree: " + ", ".join(mismatches))
    return result


def run_quick_check(seed=DEFAULT_SEED):
    """Run all quick checks."""
    results = {
        "golden_dimensions": check_golden_dimensions(seed),
        "golden_bases": check_golden_bases(),
        "quasi_examples": check_quasi_examples(),
        "om5": check_om5(),
        "tensor_example": check_tensor_example(),
        "polynomial_tensor": check_polynomial_tensor(),
        "non_unital_strict": check_non_unital_strict(),
        "almost_inner": check_almost_inner(seed),
        "centre_oracle": check_centre_oracle(),
    }

    statuses = [r["status"] for r in results.values()]
    if "error" in statuses:
        results["status"] = "error"
    elif "warning" in statuses:
        results["status"] = "warning"
    else:
        results["status"] = "ok"

    return results


CHECK_TITLES = {
    "golden_dimensions": "Golden Dimensions",
    "golden_bases": "Golden Bases",
    "quasi_examples": "Quasi-Centroid and Quasi-Derivations",
    "om5": "OM5",
    "tensor_example": "Tensor Example",
    "polynomial_tensor": "Polynomial Tensor",
    "non_unital_strict": "Non-Unital Tensor",
    "almost_inner": "Almost Inner Derivations",
    "centre_oracle": "Centres Mod 5",
}


def main(argv=None):
    """Main entry point."""
    args = parse_args(argv)

    print("Running quick check on the catalog...")

    results = run_quick_check(args.seed)

    print("\nResults:")
    for key, title in CHECK_TITLES.items():
        print(f"  {title}: {results[key]['status'].upper()}")
        if results[key]["status"] != "ok":
            print(f"    - {results[key].get('message', 'Unknown issue')}")

    print(f"\nOverall Status: {results['status'].upper()}")

    if args.verbose:
        print("\nDetailed Results:")
        print(json.dumps(results, indent=2, default=str))

    sys.exit(0 if results["status"] == "ok" else 1)


if __name__ == "__main__":
    main()
