"""Command-line interface.

Subcommands:

    compute   exact connectivity matrix + spectrum + bounds + critical vertices
    mc        Monte Carlo estimate (--samples, --seed)
    bounds    entrywise bounds only
    spectrum  eigenvalues and quality verdicts only
    critical  critical-vertex findings only
    walk      z-step walk-probability matrix (--z)
    rank      link-improvement ranking (--include-absent for candidate links)

All subcommands read a graph file via --input and print one JSON document
to stdout; diagnostics go to stderr.  Exit codes: 0 success, 2 bad input
or usage, 3 enumeration limit exceeded (switch to `mc`).
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .bounds import compute_bounds, find_critical_vertices
from .exact import DEFAULT_MAX_EDGES, EdgeLimitExceeded, exact_connectivity
from .fileio import GraphFileError, parse_graph_file, to_json
from .graph import GraphValidationError, ProbGraph, adjacency_matrix, support_components
from .montecarlo import mc_connectivity
from .sensitivity import rank_improvements
from .spectral import spectral_report
from .walks import walk_matrix, walk_probabilities

SCHEMA_VERSION = "1.0.0"

_DEFAULT_BOUNDS_TOL = 1e-12
_DEFAULT_CRITICAL_TOL = 1e-9


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _nonneg_float(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="probconn",
        description="Connectivity quality analysis of networks with unreliable links.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="graph file to analyze")
    common.add_argument(
        "--max-edges",
        type=_nonneg_int,
        default=DEFAULT_MAX_EDGES,
        help="per-component edge limit for exact enumeration",
    )
    common.add_argument(
        "--tolerance",
        type=_nonneg_float,
        default=None,
        help="override the analysis tolerance",
    )
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("compute", parents=[common], help="full exact analysis")
    mc = sub.add_parser("mc", parents=[common], help="Monte Carlo estimate")
    mc.add_argument("--samples", type=_positive_int, required=True)
    mc.add_argument("--seed", type=int, default=0)
    sub.add_parser("bounds", parents=[common], help="entrywise bounds")
    sub.add_parser("spectrum", parents=[common], help="eigenvalues and verdicts")
    sub.add_parser("critical", parents=[common], help="critical vertices")
    walk = sub.add_parser("walk", parents=[common], help="walk probabilities")
    walk.add_argument("--z", type=_positive_int, required=True, help="walk length")
    rank = sub.add_parser("rank", parents=[common], help="link-improvement ranking")
    rank.add_argument(
        "--include-absent",
        action="store_true",
        help="also evaluate vertex pairs without an edge as candidate links",
    )
    return parser


def _rows(matrix) -> list[list[float]]:
    return [[float(x) for x in row] for row in matrix]


def _base_document(command: str, g: ProbGraph) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": command,
        "n": g.n,
        "m": g.m,
    }


def _spectrum_fields(q, partition, include_eigvec: bool = False) -> dict:
    report = spectral_report(q, partition)
    fields = {
        "components": [
            {"vertices": block, "lambda_max": lam}
            for block, lam in zip(partition, report.component_lambdas)
        ],
        "eigenvalues": [float(w) for w in report.eigenvalues],
        "lambda_max": report.lambda_max,
        "lambda_max_normalized": report.lambda_max_normalized,
        "psd": report.psd,
        "definite": report.definite,
    }
    if include_eigvec:
        fields["principal_eigenvector"] = [float(x) for x in report.principal_eigvec]
    return fields


def _bounds_fields(g: ProbGraph, q, tolerance: float) -> dict:
    report = compute_bounds(adjacency_matrix(g), q, tolerance)
    return {
        "lower": _rows(report.lower),
        "upper": _rows(report.upper),
        "tolerance": report.tolerance,
        "violations": [
            {"i": v.i, "j": v.j, "kind": v.kind, "magnitude": v.magnitude}
            for v in report.violations
        ],
        "unconstrained_pairs": [list(p) for p in report.unconstrained_pairs],
    }


def _critical_fields(q, tolerance: float) -> list[dict]:
    findings = find_critical_vertices(q, tolerance)
    out = []
    for f in findings:
        out.append(
            {
                "k": f.k,
                "witnesses": [list(w) for w in f.witnesses],
                "partition": None
                if f.partition_hint is None
                else {"v1": f.partition_hint[0], "v3": f.partition_hint[1]},
                "warnings": [
                    {"l": l, "m": m, "error": err} for l, m, err in f.warnings
                ],
            }
        )
    return out


def run_command(argv: list[str]) -> int:
    """Run one CLI invocation; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage problems itself
        code = exc.code
        return code if isinstance(code, int) else 2

    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"probconn: cannot read {args.input}: {exc}", file=sys.stderr)
        return 2

    try:
        g = parse_graph_file(text)
    except (GraphFileError, GraphValidationError) as exc:
        print(f"probconn: {args.input}: {exc}", file=sys.stderr)
        return 2

    doc = _base_document(args.command, g)
    try:
        if args.command == "compute":
            q = exact_connectivity(g, args.max_edges)
            doc["engine"] = "exact"
            doc["q"] = _rows(q)
            doc.update(_spectrum_fields(q, support_components(g)))
            doc["bounds"] = _bounds_fields(
                g, q, args.tolerance if args.tolerance is not None else _DEFAULT_BOUNDS_TOL
            )
            critical_tol = (
                args.tolerance if args.tolerance is not None else _DEFAULT_CRITICAL_TOL
            )
            doc["critical_tolerance"] = critical_tol
            doc["critical_vertices"] = _critical_fields(q, critical_tol)
        elif args.command == "mc":
            est = mc_connectivity(g, args.samples, args.seed)
            doc["engine"] = "mc"
            doc["q"] = _rows(est.q_hat)
            doc.update(_spectrum_fields(est.q_hat, support_components(g)))
            doc["mc"] = {
                "samples": est.samples,
                "seed": est.seed,
                "std_err": _rows(est.std_err),
            }
        elif args.command == "bounds":
            q = exact_connectivity(g, args.max_edges)
            doc["engine"] = "exact"
            doc["q"] = _rows(q)
            doc["bounds"] = _bounds_fields(
                g, q, args.tolerance if args.tolerance is not None else _DEFAULT_BOUNDS_TOL
            )
        elif args.command == "spectrum":
            q = exact_connectivity(g, args.max_edges)
            doc["engine"] = "exact"
            doc.update(_spectrum_fields(q, support_components(g), include_eigvec=True))
        elif args.command == "critical":
            q = exact_connectivity(g, args.max_edges)
            doc["engine"] = "exact"
            critical_tol = (
                args.tolerance if args.tolerance is not None else _DEFAULT_CRITICAL_TOL
            )
            doc["critical_tolerance"] = critical_tol
            doc["critical_vertices"] = _critical_fields(q, critical_tol)
        elif args.command == "walk":
            walked = walk_probabilities(walk_matrix(g), args.z)
            doc["z"] = walked.z
            doc["walk"] = _rows(walked.entries)
        elif args.command == "rank":
            ranking = rank_improvements(g, args.include_absent, args.max_edges)
            doc["engine"] = "exact"
            doc["lambda_max"] = ranking.lambda_max
            doc["include_absent"] = bool(args.include_absent)
            doc["ranking"] = [
                {
                    "edge_index": e.edge_index,
                    "i": e.i,
                    "j": e.j,
                    "probability": e.probability,
                    "dlambda": e.dlambda,
                    "derivative_method": e.derivative_method,
                    "headroom": e.headroom,
                    "projected_gain": e.projected_gain,
                }
                for e in ranking.entries
            ]
        else:  # pragma: no cover - argparse restricts the choices
            print(f"probconn: unknown command {args.command}", file=sys.stderr)
            return 2
    except EdgeLimitExceeded as exc:
        print(
            f"probconn: {exc}\nprobconn: try the `mc` subcommand for graphs "
            f"this large",
            file=sys.stderr,
        )
        return 3

    print(to_json(doc, pretty=args.pretty))
    return 0


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
