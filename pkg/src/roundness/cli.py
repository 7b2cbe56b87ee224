"""Command-line interface: deterministic JSON reports over the library.

Commands
--------
roundness   compute the supremal negative-type exponent of a metric space
negtype     decide (strict) p-negative type at a given exponent
cube        classify / spectrum / scan / lemmas for Hamming-cube subsets
tree        embed a tree into a cube, or emit the prefix path embedding
verify      kernel-coincidence check at the computed exponent

Inputs are graph specs (``cycle:5``, ``circulant:8:1,3``, ``petersen``,
``dodecahedron``), matrix files (JSON ``{"labels": [...], "matrix": [[...]]}``
or bare CSV), or edge-list files (first line the vertex count, then ``u v``
lines). Reports are byte-identical for identical inputs and flags. Exit codes:
0 success/holds, 1 semantic negative (violated, hypothesis failed, none
found), 2 input error. Set ROUNDNESS_LOG=DEBUG for diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys

from .errors import HypothesisViolatedError, RoundnessError
from .graphs import SOLIDS, gen_family, load_edge_list, load_solid, path_metric
from .hamming import (
    CubeSubset,
    classify_subset,
    eigen_identity_check,
    factor_matrix,
    factorization_check,
    lifted_vertex_matrix,
    null_dimension_check,
    path_embedding_witness,
    scan_subsets,
    sign_matrix,
    tree_embedding_search,
)
from .metric import build_metric_space, has_row_permutation_property
from .negtype import check_negative_type, generalized_roundness, kernel_coincidence_check
from .spectral import det_exact

log = logging.getLogger("roundness")


# -- input handling -----------------------------------------------------------


def graph_from_spec(spec: str):
    parts = spec.split(":")
    name = parts[0]
    if name in SOLIDS:
        if len(parts) > 1:
            raise RoundnessError(f"{name} takes no parameters")
        return load_solid(name)
    if name == "petersen":
        if len(parts) > 1:
            raise RoundnessError("petersen takes no parameters")
        return gen_family("petersen")
    if name == "circulant":
        if len(parts) != 3:
            raise RoundnessError("circulant spec is circulant:N:s1,s2,...")
        offsets = [int(s) for s in parts[2].split(",") if s]
        return gen_family("circulant", int(parts[1]), offsets)
    if len(parts) != 2:
        raise RoundnessError(f"graph spec {spec!r} should look like family:param")
    return gen_family(name, int(parts[1]))


def load_matrix_file(path: str):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        rows = [[float(x) for x in row] for row in csv.reader(io.StringIO(text)) if row]
        return rows, None
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise RoundnessError('matrix JSON must be an object with a "matrix" key')
    return obj["matrix"], obj.get("labels")


def resolve_space(args):
    """Turn --graph/--matrix/--edges into a metric space plus a canonical
    description used for the input digest."""
    if getattr(args, "graph", None):
        g = graph_from_spec(args.graph)
        space = path_metric(g)
    elif getattr(args, "matrix", None):
        matrix, labels = load_matrix_file(args.matrix)
        space = build_metric_space(matrix, labels, validate=not args.no_validate)
    elif getattr(args, "edges", None):
        space = path_metric(load_edge_list(args.edges))
    else:
        raise RoundnessError("one of --graph, --matrix or --edges is required")
    desc = {"labels": list(space.labels), "matrix": [[float(x) for x in row] for row in space.dist]}
    return space, desc


def digest_of(payload) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def emit(command: str, inputs, result: dict, diagnostics: dict, pretty: bool) -> None:
    report = {
        "command": command,
        "inputs_digest": digest_of(inputs),
        "result": result,
        "diagnostics": diagnostics,
    }
    if pretty:
        text = json.dumps(report, sort_keys=True, indent=2)
    else:
        text = json.dumps(report, sort_keys=True, separators=(",", ":"))
    print(text)


def emit_error(exc: Exception, pretty: bool) -> None:
    payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    if pretty:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


# -- subcommand handlers --------------------------------------------------------


def cmd_roundness(args) -> int:
    space, desc = resolve_space(args)
    res = generalized_roundness(space, p_max=args.p_max, tol_p=args.tol_p,
                                tol_eig=args.tol_eig, row_perm_tol=args.row_perm_tol)
    result = {
        "status": res.status,
        "q": res.q,
        "bracket": list(res.bracket) if res.bracket else None,
        "method": res.method,
        "certificate": [float(x) for x in res.certificate] if res.certificate is not None else None,
        "det_normalized": res.det_normalized,
    }
    diag = {"p_max": args.p_max, "tol_p": args.tol_p, "tol_eig": args.tol_eig,
            "iterations": res.iterations}
    emit("roundness", desc, result, diag, args.pretty)
    return 0


def cmd_negtype(args) -> int:
    space, desc = resolve_space(args)
    verdict = check_negative_type(space, args.p, tol_eig=args.tol_eig)
    witness = None
    if verdict.witness is not None:
        witness = {
            "eta": [float(x) for x in verdict.witness.eta],
            "form_value": verdict.witness.form_value,
        }
    result = {
        "p": verdict.p,
        "holds": verdict.holds,
        "strict": verdict.strict,
        "max_form_eigenvalue": verdict.max_form_eigenvalue,
        "witness": witness,
    }
    diag = {"tol_eig": args.tol_eig, "require_strict": args.strict}
    emit("negtype", desc, result, diag, args.pretty)
    ok = verdict.strict if args.strict else verdict.holds
    return 0 if ok else 1


def cmd_verify(args) -> int:
    space, desc = resolve_space(args)
    if not has_row_permutation_property(space, rel_tol=args.row_perm_tol):
        raise HypothesisViolatedError(
            "rows of the distance matrix are not permutations of each other"
        )
    res = generalized_roundness(space, p_max=args.p_max, tol_p=args.tol_p,
                                tol_eig=args.tol_eig, row_perm_tol=args.row_perm_tol)
    diag = {"p_max": args.p_max, "tol_p": args.tol_p, "tol_eig": args.tol_eig, "tol": args.tol}
    if res.status != "Finite":
        result = {
            "status": "Unbounded",
            "holds": None,
            "note": "kernel coincidence requires a finite roundness exponent",
        }
        emit("verify", desc, result, diag, args.pretty)
        return 1
    report = kernel_coincidence_check(space, res.q, tol=args.tol,
                                      row_perm_tol=args.row_perm_tol)
    result = {
        "status": "Finite",
        "q": res.q,
        "holds": report.holds,
        "max_defect": report.max_defect,
        "form_kernel_dim": report.form_kernel_dim,
        "matrix_kernel_dim": report.matrix_kernel_dim,
    }
    emit("verify", desc, result, diag, args.pretty)
    return 0 if report.holds else 1


def parse_subset(n: int, text: str) -> CubeSubset:
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if not tokens:
        raise RoundnessError("empty subset")
    if all(len(t) == n and set(t) <= {"0", "1"} for t in tokens):
        return CubeSubset.from_bitstrings(tokens)
    return CubeSubset.from_indices(n, [int(t) for t in tokens])


def cmd_cube(args) -> int:
    if args.cube_cmd == "classify":
        subset = parse_subset(args.n, args.subset)
        cls = classify_subset(subset)
        result = {
            "n": args.n,
            "indices": list(subset.index_set),
            "bitstrings": [v.bitstring() for v in subset.vertices],
            "strict": cls.strict,
            "rank": cls.rank,
            "dependency": list(cls.dependency) if cls.dependency else None,
        }
        emit("cube.classify", {"n": args.n, "subset": result["bitstrings"]},
             result, {}, args.pretty)
        return 0
    if args.cube_cmd == "spectrum":
        identities = eigen_identity_check(args.n)
        ranks = null_dimension_check(args.n)
        result = {"n": args.n, "eigen_identities": identities, "null_dimension": ranks}
        emit("cube.spectrum", {"n": args.n}, result, {}, args.pretty)
        return 0 if identities["ok"] and ranks["ok"] else 1
    if args.cube_cmd == "scan":
        summary = scan_subsets(args.n, max_size=args.max_size, p_max=args.p_max,
                               tol_p=args.tol_p, tol_eig=args.tol_eig, jobs=args.jobs)
        argmin = None
        if summary.argmin_subset is not None:
            argmin = {
                "indices": list(summary.argmin_subset),
                "bitstrings": [format(i, f"0{args.n}b") for i in summary.argmin_subset],
            }
        result = {
            "n": summary.n,
            "max_size": summary.max_size,
            "counts": [
                {"size": size, "strict": strict, "count": count}
                for (size, strict), count in sorted(summary.counts.items())
            ],
            "min_q_over_strict": summary.min_q_over_strict,
            "argmin_subset": argmin,
            "unbounded_strict_count": summary.unbounded_strict_count,
            "note": "sizes 1-2 are excluded from the minimum (their roundness is unbounded)",
        }
        diag = {"p_max": args.p_max, "tol_p": args.tol_p, "tol_eig": args.tol_eig,
                "jobs": args.jobs}
        emit("cube.scan", {"n": args.n, "max_size": summary.max_size}, result, diag, args.pretty)
        return 0
    if args.cube_cmd == "lemmas":
        ok = factorization_check(args.n)
        result = {"n": args.n, "ok": ok, "factor_determinant": det_exact(factor_matrix(args.n))}
        if args.dump_matrices:
            result["matrices"] = {
                "sign": sign_matrix(args.n).tolist(),
                "lifted_vertex": lifted_vertex_matrix(args.n).tolist(),
                "factor": factor_matrix(args.n).tolist(),
            }
        emit("cube.lemmas", {"n": args.n}, result, {}, args.pretty)
        return 0 if ok else 1
    raise RoundnessError(f"unknown cube subcommand {args.cube_cmd!r}")


def cmd_tree(args) -> int:
    if args.tree_cmd == "embed":
        tree = load_edge_list(args.edges)
        embedding = tree_embedding_search(tree, args.n)
        result = {
            "k": tree.n,
            "n": args.n,
            "found": embedding is not None,
            "embedding": (
                {str(v): embedding[v].bitstring() for v in sorted(embedding)}
                if embedding is not None
                else None
            ),
        }
        emit("tree.embed", {"edges": sorted(tree.edges), "k": tree.n, "n": args.n},
             result, {}, args.pretty)
        return 0 if embedding is not None else 1
    if args.tree_cmd == "witness":
        images = path_embedding_witness(args.k)
        result = {
            "k": args.k,
            "dimension": args.k - 1,
            "images": [v.bitstring() for v in images],
            "verified": True,
        }
        emit("tree.witness", {"k": args.k}, result, {}, args.pretty)
        return 0
    raise RoundnessError(f"unknown tree subcommand {args.tree_cmd!r}")


# -- parser ---------------------------------------------------------------------


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pretty", action="store_true", help="indent the JSON report")


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", help="graph spec, e.g. cycle:5, hypercube:3, circulant:8:1,3")
    p.add_argument("--matrix", help="matrix file (JSON or CSV)")
    p.add_argument("--edges", help="edge-list file")
    p.add_argument("--no-validate", action="store_true",
                   help="skip the triangle-inequality check on matrix input")


def _add_tolerance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p-max", type=float, default=64.0, dest="p_max",
                   help="exponent cutoff before reporting Unbounded (default 64)")
    p.add_argument("--tol-p", type=float, default=1e-9, dest="tol_p",
                   help="bisection width in the exponent (default 1e-9)")
    p.add_argument("--tol-eig", type=float, default=1e-9, dest="tol_eig",
                   help="relative eigenvalue tolerance (default 1e-9)")


def _add_row_perm_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--row-perm-tol", type=float, default=None, dest="row_perm_tol",
                   help="relative tolerance for the row-permutation test "
                        "(default: exact for integer matrices, 1e-12 otherwise)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gr",
        description="Generalized roundness and negative type of finite metric spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roundness", help="supremal negative-type exponent")
    _add_common_flags(p)
    _add_input_flags(p)
    _add_tolerance_flags(p)
    _add_row_perm_flag(p)
    p.set_defaults(func=cmd_roundness)

    p = sub.add_parser("negtype", help="decide (strict) p-negative type")
    _add_common_flags(p)
    _add_input_flags(p)
    p.add_argument("--p", type=float, required=True, help="exponent to test")
    p.add_argument("--tol-eig", type=float, default=1e-9, dest="tol_eig")
    p.add_argument("--strict", action="store_true",
                   help="exit 0 only if the type is strict")
    p.set_defaults(func=cmd_negtype)

    p = sub.add_parser("verify", help="kernel coincidence at the computed exponent")
    _add_common_flags(p)
    _add_input_flags(p)
    _add_tolerance_flags(p)
    p.add_argument("--tol", type=float, default=1e-6,
                   help="defect tolerance for the coincidence check (default 1e-6)")
    _add_row_perm_flag(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cube", help="Hamming-cube subset tooling")
    cube_sub = p.add_subparsers(dest="cube_cmd", required=True)
    c = cube_sub.add_parser("classify", help="exact strictness of a subset")
    _add_common_flags(c)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--subset", required=True,
                   help="comma-separated bitstrings (000,011) or indices (0,3)")
    c.set_defaults(func=cmd_cube)
    c = cube_sub.add_parser("spectrum", help="eigenvector identities and exact ranks")
    _add_common_flags(c)
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(func=cmd_cube)
    c = cube_sub.add_parser("scan", help="classify all subsets and minimize roundness")
    _add_common_flags(c)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--max-size", type=int, default=None, dest="max_size")
    c.add_argument("--jobs", type=int, default=1)
    _add_tolerance_flags(c)
    c.set_defaults(func=cmd_cube)
    c = cube_sub.add_parser("lemmas", help="exact factorization identities")
    _add_common_flags(c)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--dump-matrices", action="store_true", dest="dump_matrices")
    c.set_defaults(func=cmd_cube)

    p = sub.add_parser("tree", help="tree-into-cube embeddings")
    tree_sub = p.add_subparsers(dest="tree_cmd", required=True)
    t = tree_sub.add_parser("embed", help="exhaustive isometric embedding search")
    _add_common_flags(t)
    t.add_argument("--edges", required=True, help="edge-list file of the tree")
    t.add_argument("--n", type=int, required=True, help="cube dimension")
    t.set_defaults(func=cmd_tree)
    t = tree_sub.add_parser("witness", help="prefix embedding of the k-vertex path")
    _add_common_flags(t)
    t.add_argument("--k", type=int, required=True)
    t.set_defaults(func=cmd_tree)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("ROUNDNESS_LOG")
    if level:
        logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO),
                            stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HypothesisViolatedError as exc:
        emit_error(exc, args.pretty)
        return 1
    except (RoundnessError, ValueError, OSError) as exc:
        emit_error(exc, args.pretty)
        return 2


if __name__ == "__main__":
    sys.exit(main())
