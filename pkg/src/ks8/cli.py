"""Command-line entry point: ``ks8 <subcommand>``.

Exit codes: 0 success / all claims pass, 1 a claim failed, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from ks8 import reference
from ks8.contexts import build_graph, enumerate_octads, format_catalog, quadruple_report, symmetry_report
from ks8.exact_linalg import ExactVector, format_vectors, parse_vectors
from ks8.ks_engine import (
    ContextHypergraph,
    ParityCertificate,
    format_hypergraph,
    is_valid_certificate,
    merge_to_planes,
    parse_hypergraph,
    search_assignment,
)
from ks8.mermin import defining_operator_sets
from ks8.pipeline import construct, smallest_state_proof, verify_all
from ks8.state_specific import format_proof, verify_proof

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc.strerror or exc}") from None


def _dump(doc: dict, args: argparse.Namespace, text: str) -> None:
    if args.format == "json":
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _emit(text, args.out)


def cmd_generate(args: argparse.Namespace) -> int:
    if args.qubits < 2:
        raise UsageError(f"--qubits must be at least 2, got {args.qubits}")
    c = construct(args.qubits)
    sets = defining_operator_sets(args.qubits)
    header = [f"{len(c.vectors)} vectors from {len(c.octads)} joint eigenbases, {args.qubits} qubits"]
    header += [f"basis {k}: {s}" for k, s in enumerate(sets)]
    vec_text = format_vectors(c.vectors, "\n".join(header))
    offsets = [0]
    for o in c.octads:
        offsets.append(offsets[-1] + len(o))
    octad_lines = [f"bases {len(c.octads)}"]
    octad_lines += [" ".join(str(i) for i in range(offsets[k], offsets[k + 1])) for k in range(len(c.octads))]
    octad_text = "\n".join(octad_lines) + "\n"
    sign = sets[-1].expected_product_sign
    if args.out is None:
        sys.stdout.write(vec_text + octad_text)
    else:
        outdir = Path(args.out)
        try:
            outdir.mkdir(parents=True, exist_ok=True)
            (outdir / "vectors.txt").write_text(vec_text)
            (outdir / "octads.txt").write_text(octad_text)
        except OSError as exc:
            raise UsageError(f"cannot write to {outdir}: {exc.strerror or exc}") from None
        print(f"wrote {len(c.vectors)} vectors and {len(c.octads)} bases to {outdir}")
    print(f"product sign of {sets[-1]}: {sign if sign is not None else 'not proportional to identity'}", file=sys.stderr)
    return EXIT_OK


def _catalog_from(args: argparse.Namespace):
    if args.vectors:
        try:
            vectors = parse_vectors(Path(args.vectors).read_text())
            return None, enumerate_octads(build_graph([v.ray() for v in vectors]))
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read {args.vectors}: {exc}") from None
    c = construct(3)
    return c, c.catalog


def cmd_octads(args: argparse.Namespace) -> int:
    c, cat = _catalog_from(args)
    stats = {"vectors": len(cat.graph), "octads": len(cat)}
    if c is not None:
        stats.update(symmetry_report(cat, c.basis_of).as_dict())
    if args.format == "json":
        doc = {
            "stats": stats,
            "vectors": [v.text() for v in cat.graph.vertices],
            "octads": [list(o) for o in cat.octads],
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        head = "".join(f"# {k}: {json.dumps(v)}\n" for k, v in stats.items())
        _emit(head + format_catalog(cat), args.out)
    return EXIT_OK


def cmd_quadruples(args: argparse.Namespace) -> int:
    c = construct(3)
    qr = quadruple_report(c.catalog, c.basis_of)
    verts = c.graph.vertices
    doc = {
        "count": len(qr.selections),
        "subsets_examined": qr.total_subsets,
        "condition_counts": qr.counts,
        "orthogonal_by_retained_octads": {str(k): v for k, v in qr.retained_histogram.items()},
        "selections": [
            {"excluded": [str(verts[i]) for i in s.excluded], "retained_octads": list(s.retained_octads)}
            for s in qr.selections
        ],
    }
    lines = [f"quadruples: {len(qr.selections)} (of {qr.total_subsets} four-vector subsets)"]
    lines += [f"  {k}: {v}" for k, v in qr.counts.items()]
    lines.append("orthogonal quadruples by retained octads: " + json.dumps(doc["orthogonal_by_retained_octads"]))
    if args.list:
        lines += [" ".join(s["excluded"]) + "  ->  " + " ".join(map(str, s["retained_octads"])) for s in doc["selections"]]
    _dump(doc, args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify_all(args: argparse.Namespace) -> int:
    if args.drop_octad is not None and not 0 <= args.drop_octad < len(reference.PARITY_OCTADS):
        raise UsageError(f"--drop-octad must be in 0..{len(reference.PARITY_OCTADS) - 1}")
    rep = verify_all(drop_octad=args.drop_octad, seed=args.seed)
    _emit(rep.to_json() if args.format == "json" else rep.to_text(), args.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_merge(args: argparse.Namespace) -> int:
    h = ContextHypergraph.from_contexts(reference.parity_octads())
    merged = merge_to_planes(h, reference.plane_spec())
    ranks = Counter(p.rank for p in merged.projectors)
    valid = is_valid_certificate(merged, ParityCertificate.of(merged, range(len(merged.contexts))))
    unsat = search_assignment(merged) is None
    summary = {
        "projectors": len(merged.projectors),
        "rank2": ranks.get(2, 0),
        "rank1": ranks.get(1, 0),
        "context_sizes": [len(ctx) for ctx in merged.contexts],
        "certificate_valid": valid,
        "satisfiable": not unsat,
    }
    if args.format == "json":
        _emit(json.dumps({"summary": summary, "hypergraph": format_hypergraph(merged)}, indent=2) + "\n", args.out)
    else:
        head = "".join(f"# {k}: {json.dumps(v)}\n" for k, v in summary.items())
        _emit(head + format_hypergraph(merged), args.out)
    return EXIT_OK if valid and unsat else EXIT_FAIL


def cmd_state_proof(args: argparse.Namespace) -> int:
    literal = " ".join(args.state)
    try:
        state = ExactVector.parse(literal)
    except ValueError as exc:
        raise UsageError(f"cannot parse state {literal!r}: {exc}") from None
    c = construct(3)
    if state.dim != 8 or state.ray() not in set(c.vectors):
        cands = "\n".join(f"  {v.text()}" for v in c.vectors)
        raise UsageError(f"state {literal!r} is not one of the {len(c.vectors)} vectors:\n{cands}")
    proof, source = smallest_state_proof(c, state)
    verdict = verify_proof(proof)
    if args.format == "json":
        doc = {
            "state": proof.state.text(),
            "certificate": source,
            "contexts": [
                {"vectors": [v.text() for v in ctx], "signs": list(signs)}
                for ctx, signs in zip(proof.contexts, proof.expansion_signs)
            ],
            "distinct_vectors": len(proof.vectors),
            "verdict": verdict.reason,
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        head = f"# certificate: {source}\n# contexts: {len(proof.contexts)}, vectors: {len(proof.vectors)}\n"
        _emit(head + format_proof(proof) + f"verdict {verdict.reason}\n", args.out)
    return EXIT_OK if verdict else EXIT_FAIL


def cmd_search(args: argparse.Namespace) -> int:
    if args.hypergraph:
        try:
            h = parse_hypergraph(Path(args.hypergraph).read_text())
        except (OSError, ValueError, KeyError, IndexError) as exc:
            raise UsageError(f"cannot read {args.hypergraph}: {exc}") from None
    else:
        c = construct(3)
        if args.octads == "defining":
            h = ContextHypergraph.from_contexts(c.octads)
        elif args.octads == "parity":
            h = ContextHypergraph.from_contexts(reference.parity_octads())
        else:
            h = c.hypergraph
    a = search_assignment(h)
    doc = {
        "projectors": len(h.projectors),
        "contexts": len(h.contexts),
        "assignment": None if a is None else list(a.values),
    }
    if a is None:
        text = f"no noncontextual assignment ({len(h.projectors)} projectors, {len(h.contexts)} contexts)\n"
    else:
        ones = " ".join(str(h.projectors[i]) for i in a.ones())
        text = f"assignment found; value 1 on: {ones}\n"
    _dump(doc, args, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ks8", description="Exact checks of the 40-vector Kochen-Specker set in R^8.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, fmt: bool = True) -> None:
        p.add_argument("--out", help="output path (default: stdout)")
        if fmt:
            p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("generate", help="write the defining vectors and bases")
    p.add_argument("--qubits", type=int, default=3)
    p.add_argument("--out", help="output directory (default: stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("octads", help="enumerate orthogonal octads")
    p.add_argument("--vectors", help="vector file to use instead of the generated set")
    common(p)
    p.set_defaults(func=cmd_octads)

    p = sub.add_parser("quadruples", help="enumerate excluded quadruples")
    p.add_argument("--list", action="store_true", help="list every selection")
    common(p)
    p.set_defaults(func=cmd_quadruples)

    p = sub.add_parser("verify-all", help="run every check and report")
    p.add_argument("--drop-octad", type=int, help="remove one parity-proof octad (diagnostic)")
    p.add_argument("--seed", type=int, default=0, help="seed for random sub-instances")
    common(p)
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("merge", help="merge vector pairs into rank-2 planes")
    common(p)
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("state-proof", help="state-specific proof for a known state")
    p.add_argument("state", nargs="+", help='state vector, e.g. "1 0 0 -1 0 -1 -1 0" or 100-10-1-10')
    common(p)
    p.set_defaults(func=cmd_state_proof)

    p = sub.add_parser("search", help="search for a noncontextual assignment")
    p.add_argument("--hypergraph", help="hypergraph file")
    p.add_argument("--octads", choices=("defining", "parity", "all"), default="all")
    common(p)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ks8: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
