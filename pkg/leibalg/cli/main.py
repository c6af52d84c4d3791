#!/usr/bin/env python3
"""
CLI entry point for leibalg.

Exit codes: 0 on success, 1 when a statement is refuted or an internal
cross-check fails, 2 on input errors.
"""

import os
import sys
import json
import logging
import argparse
from contextlib import nullcontext
from pathlib import Path

from leibalg import catalog_io
from leibalg.algebra_core import (
    AssocCommAlgebra,
    ann_subspace,
    liesation,
    lower_central_series,
    nilpotency_class,
)
from leibalg.exceptions import InvariantViolation, LeibalgError
from leibalg.operator_spaces import DEFAULT_SEED, SPACE_NAMES, SpaceBundle
from leibalg.tensor_product import tensor_algebra, tensor_centroid_compare
from leibalg.theorem_suite import SECTIONS, TheoremSuite, suite_exit_code
from leibalg.utils.exact_linalg import FieldSpec
from leibalg.utils.logging_utils import (
    create_log_filename,
    get_console,
    setup_logger,
    spinner,
)
from leibalg.utils.system_info import log_system_info

SEED_VARIABLE = "LEIBALG_SEED"

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INPUT = 2


class InputError(LeibalgError):
    """A command-line argument or environment value is unusable."""


def parse_args(argv=None):
    """Parse command-line arguments."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text",
                        help="Output format (default: text)")
    common.add_argument("--field", default=None,
                        help="Ground field: Q or fp:<p> with p an odd prime")
    common.add_argument("--seed", type=int, default=None,
                        help=f"Sampling seed (default: ${SEED_VARIABLE} or {DEFAULT_SEED})")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        default="WARNING", help="Log level (default: WARNING)")
    common.add_argument("--log-file", default=None, help="Also write the log to this file")
    common.add_argument("--log-dir", default=None,
                        help="Write a timestamped log file into this directory")
    common.add_argument("--output", "-o", default=None,
                        help="Write the rendered output here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="leibalg", description="Lie-invariants of finite-dimensional Leibniz algebras"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    info = commands.add_parser("info", parents=[common], help="Centres, series and Liesation")
    info.add_argument("algebra", help="Catalog name or algebra document path")

    space = commands.add_parser("space", parents=[common], help="Compute one operator space")
    space.add_argument("algebra", help="Catalog name or algebra document path")
    space.add_argument("--which", choices=SPACE_NAMES, required=True, help="Space to compute")

    decompose = commands.add_parser("decompose", parents=[common],
                                    help="Split the Lie-centroid as Der_z plus Psi")
    decompose.add_argument("algebra", help="Catalog name or algebra document path")

    tensor = commands.add_parser("tensor", parents=[common], help="Tensor product A (x) g")
    tensor.add_argument("--assoc", required=True, help="Commutative associative algebra A")
    tensor.add_argument("--leibniz", required=True, help="Leibniz algebra g")
    tensor.add_argument("--compare", action="store_true",
                        help="Compare the Lie-centroid of A (x) g with Gamma(A) (x) Gamma^Lie(g)")

    check = commands.add_parser("check", parents=[common], help="Run the statement checks")
    check.add_argument("algebra", help="Catalog name or algebra document path")
    check.add_argument("--pair", default=None, help="Second summand for the direct-sum checks")
    check.add_argument("--suite", choices=["all"] + list(SECTIONS), default="all",
                       help="Section to run (default: all)")
    check.add_argument("--echo", action="store_true",
                       help="Mirror section headers and verdicts on stderr while the checks run")

    catalog = commands.add_parser("catalog", parents=[common], help="Built-in algebras")
    catalog.add_argument("action", choices=["list", "show", "export"])
    catalog.add_argument("name", nargs="?", default=None, help="Catalog name")
    catalog.add_argument("path", nargs="?", default=None, help="Export destination")

    return parser.parse_args(argv)


def resolve_seed(args, environ=None):
    """--seed, then $LEIBALG_SEED, then the default."""
    if args.seed is not None:
        return args.seed
    environ = os.environ if environ is None else environ
    value = environ.get(SEED_VARIABLE)
    if value is None or value == "":
        return DEFAULT_SEED
    try:
        return int(value, 10)
    except ValueError:
        raise InputError(f"{SEED_VARIABLE} must be a decimal integer, got {value!r}")


def resolve_field(args):
    return FieldSpec.parse(args.field) if args.field else None


def load_algebra(source, field=None):
    """A catalog name, or the path of an algebra document."""
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        algebra = catalog_io.load(path)
        return catalog_io.over_field(algebra, field) if field is not None else algebra
    return catalog_io.get_algebra(source, field or catalog_io.QQ)


def _require_kind(algebra, associative, source):
    if associative != isinstance(algebra, AssocCommAlgebra):
        kind = "commutative associative" if associative else "Leibniz"
        raise InputError(f"{source} is not a {kind} algebra")
    return algebra


def _vectors(space):
    return [[space.field.format(x) for x in v] for v in space.basis]


def _table(algebra):
    return catalog_io.document_of(algebra).to_dict()["table"]


def info_payload(g):
    centres = SpaceBundle(g).centres
    quotient = liesation(g)
    cls = nilpotency_class(g)
    return {
        "algebra": g.label(),
        "dim": g.dim,
        "field": g.field.describe(),
        "basis": list(g.basis_names),
        "centres": {key: _vectors(space) for key, space in centres.as_dict().items()},
        "series": [_vectors(term) for term in lower_central_series(g)],
        "nilpotency_class": cls if cls is not None else "not nilpotent",
        "ann": _vectors(ann_subspace(g)),
        "liesation": {
            "dim": quotient.dim,
            "basis": list(quotient.basis_names),
            "table": _table(quotient),
        },
    }


def space_payload(g, which, seed):
    space = SpaceBundle(g, seed).space(which)
    return {
        "algebra": g.label(),
        "space": which,
        "dim": space.dim,
        "basis": space.to_strings(),
        "certificate": space.certificate,
    }


def decompose_payload(g):
    decomposition = SpaceBundle(g).decomposition
    return {
        "algebra": g.label(),
        "centroid_dim": decomposition.centroid.dim,
        "der_z_dim": decomposition.der_z.dim,
        "psi_dim": len(decomposition.psi),
        "der_z": decomposition.der_z.to_strings(),
        "psi": [phi.to_strings() for phi in decomposition.psi],
    }


def tensor_payload(A, g, compare):
    tensor = tensor_algebra(A, g)
    payload = {
        "algebra": tensor.algebra.label(),
        "dim": tensor.dim,
        "basis": list(tensor.algebra.basis_names),
        "table": _table(tensor.algebra),
    }
    if compare:
        comparison = tensor_centroid_compare(A, g, tensor)
        payload["comparison"] = {
            "dims": comparison.dims(),
            "hypotheses": comparison.hypotheses,
            "applicable": comparison.applicable,
            "equal": comparison.equal,
            "centroid": comparison.centroid.to_strings(),
            "witness": comparison.witness.to_strings() if comparison.witness is not None else None,
        }
    return payload


def format_matrix(rows, indent="      "):
    """Row-major lines with right-aligned columns."""
    if not rows:
        return [indent + "[]"]
    width = max((len(s) for row in rows for s in row), default=0)
    return [indent + "[" + "  ".join(s.rjust(width) for s in row) + "]" for row in rows]


def _text_space_lines(label, vectors):
    inner = ", ".join("(" + ", ".join(v) + ")" for v in vectors)
    return [f"  {label}: dim {len(vectors)}" + (f"  span{{{inner}}}" if vectors else "")]


def render_text(command, payload):
    """Human-readable rendering of a command payload."""
    lines = []
    if command == "info":
        lines.append(f"{payload['algebra']}: dim {payload['dim']} over {payload['field']}")
        lines.append(f"  basis: {', '.join(payload['basis'])}")
        for key, vectors in payload["centres"].items():
            lines.extend(_text_space_lines(key, vectors))
        for i, term in enumerate(payload["series"], start=1):
            lines.extend(_text_space_lines(f"gamma_{i}", term))
        lines.append(f"  nilpotency class: {payload['nilpotency_class']}")
        lines.extend(_text_space_lines("ann", payload["ann"]))
        lines.append(f"  Liesation: dim {payload['liesation']['dim']}")
    elif command == "space":
        lines.append(f"{payload['space']}({payload['algebra']}): dim {payload['dim']}")
        for matrix in payload["basis"]:
            lines.extend(format_matrix(matrix))
            lines.append("")
        if payload["certificate"]:
            lines.append(f"  certificate: {payload['certificate']['summary']}")
    elif command == "decompose":
        lines.append(
            f"Gamma^Lie({payload['algebra']}) = Der_z (+) Psi: "
            f"{payload['centroid_dim']} = {payload['der_z_dim']} + {payload['psi_dim']}"
        )
        for label in ("der_z", "psi"):
            lines.append(f"  {label}:")
            for matrix in payload[label]:
                lines.extend(format_matrix(matrix))
    elif command == "tensor":
        lines.append(f"{payload['algebra']}: dim {payload['dim']}")
        lines.append(f"  nonzero products: {len(payload['table'])}")
        comparison = payload.get("comparison")
        if comparison:
            for key, value in comparison["dims"].items():
                lines.append(f"  {key}: {value}")
            lines.append(f"  hypotheses: {comparison['hypotheses']}")
            lines.append(f"  equal to the embedded span: {comparison['equal']}")
    elif command == "check":
        for report in payload:
            lines.append(f"  {report['id']}: {report['verdict'].upper()}")
            if report["verdict"] != "verified":
                lines.append(f"    - {report['reason']}")
        refuted = sum(1 for r in payload if r["verdict"] == "refuted")
        lines.append("")
        lines.append(f"Overall Status: {'REFUTED' if refuted else 'OK'} ({len(payload)} reports)")
    elif command == "catalog":
        if isinstance(payload, dict):
            lines.append(f"exported {payload['exported']} to {payload['path']}")
        else:
            lines.extend(payload)
    return "\n".join(lines) + "\n"


def render(command, payload, fmt):
    shown_as_document = command == "catalog" and isinstance(payload, dict) and "exported" not in payload
    if fmt == "json" or shown_as_document:
        return json.dumps(payload, indent=2, ensure_ascii=False, default=str) + "\n"
    return render_text(command, payload)


def _catalog(args, field):
    field = field or catalog_io.QQ
    if args.action == "list":
        names = catalog_io.catalog_names()
        if args.format == "json":
            return {"algebras": names, "templates": list(catalog_io.CATALOG_TEMPLATES)}
        return names + [f"{t} (template)" for t in catalog_io.CATALOG_TEMPLATES]
    if not args.name:
        raise InputError(f"catalog {args.action} needs a name")
    if args.action == "show":
        return catalog_io.document_of(catalog_io.get_algebra(args.name, field)).to_dict()
    if not args.path:
        raise InputError("catalog export needs a destination path")
    path = catalog_io.export(args.name, args.path, field)
    return {"exported": args.name, "path": str(path)}


def execute(args, logger):
    """Run one subcommand; returns (payload, exit code)."""
    field = resolve_field(args)
    seed = resolve_seed(args)
    command = args.command
    if command == "catalog":
        return _catalog(args, field), EXIT_OK
    if command == "tensor":
        A = _require_kind(load_algebra(args.assoc, field), True, args.assoc)
        g = _require_kind(load_algebra(args.leibniz, field), False, args.leibniz)
        with spinner(f"Computing {A.label()} (x) {g.label()}"):
            return tensor_payload(A, g, args.compare), EXIT_OK
    g = _require_kind(load_algebra(args.algebra, field), False, args.algebra)
    logger.info(f"Loaded {g.label()} (dim {g.dim}, {g.field.describe()})")
    if command == "info":
        return info_payload(g), EXIT_OK
    if command == "space":
        with spinner(f"Computing {args.which}"):
            return space_payload(g, args.which, seed), EXIT_OK
    if command == "decompose":
        return decompose_payload(g), EXIT_OK
    console = get_console() if args.echo else None
    suite = TheoremSuite(seed, logger=logger, console=console)
    with nullcontext() if console else spinner(f"Checking {g.label()}"):
        if args.pair:
            partner = _require_kind(load_algebra(args.pair, field), False, args.pair)
            reports = suite.run_pair_suite(g, partner)
        else:
            sections = SECTIONS if args.suite == "all" else (args.suite,)
            reports = suite.run_suite(g, sections)
    return [r.as_dict() for r in reports], suite_exit_code(reports)


def write_output(text, output=None):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(argv=None):
    """Parse, execute and render; returns the exit code."""
    args = parse_args(argv)
    level = getattr(logging, args.log_level.upper(), logging.WARNING)
    log_file = args.log_file
    if not log_file and args.log_dir:
        label = getattr(args, "algebra", None) or getattr(args, "leibniz", None) or args.command
        log_file = create_log_filename(args.log_dir, label)
    logger = setup_logger("leibalg", log_file, level)
    log_system_info(logger)
    try:
        payload, code = execute(args, logger)
        write_output(render(args.command, payload, args.format), args.output)
    except InvariantViolation as e:
        logger.error(f"internal cross-check failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_REFUTED
    except (LeibalgError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    return code


def main(argv=None):
    """Main entry point."""
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
