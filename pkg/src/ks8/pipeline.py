"""End-to-end construction and the claim-by-claim verification report."""

from __future__ import annotations

import itertools
import json
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Any

from ks8 import reference
from ks8.contexts import (
    OctadCatalog,
    OrthogonalityGraph,
    build_graph,
    enumerate_octads,
    quadruple_report,
    symmetry_report,
)
from ks8.exact_linalg import Context, ExactVector, is_resolution_of_identity
from ks8.ks_engine import (
    ContextHypergraph,
    ParityCertificate,
    find_parity_certificates,
    is_valid_certificate,
    merge_to_planes,
    search_assignment,
)
from ks8.mermin import (
    OperatorSet,
    commutes,
    commutes_by_matrix,
    generate_defining_octads,
    mermin_words,
    operator_value_assignments,
    product_sign,
)
from ks8.oracles import brute_force_certificates, naive_octads
from ks8.state_specific import StateSpecificProof, reduce_by_state, verify_proof

SEARCH_SECONDS = 10.0
QUADRUPLE_TARGET = 1280


@dataclass(frozen=True)
class Construction:
    """Defining octads for ``n`` qubits and everything derived from them."""

    n: int
    octads: tuple[Context, ...]

    @property
    def vectors(self) -> tuple[ExactVector, ...]:
        return tuple(v for c in self.octads for v in c.vectors)

    @property
    def basis_of(self) -> tuple[int, ...]:
        return tuple(k for k, c in enumerate(self.octads) for _ in c.vectors)

    @cached_property
    def graph(self) -> OrthogonalityGraph:
        return build_graph(self.vectors)

    @cached_property
    def catalog(self) -> OctadCatalog:
        return enumerate_octads(self.graph)

    @cached_property
    def hypergraph(self) -> ContextHypergraph:
        return self.catalog.hypergraph()

    def octad_indices(self, contexts: list[Context]) -> list[int]:
        return [self.catalog.find(c.vectors) for c in contexts]


def construct(n: int = 3) -> Construction:
    return Construction(n, tuple(generate_defining_octads(n)))


def _as_sets(contexts) -> set[frozenset[ExactVector]]:
    return {frozenset(v.ray() for v in c.vectors) for c in contexts}


def smallest_state_proof(c: Construction, state: ExactVector) -> tuple[StateSpecificProof, str]:
    """Fewest-context proof for ``state`` over all excluded-quadruple certificates.

    The reference certificate is tried first and wins ties.  Returns the
    proof and a label naming the certificate it came from.
    """
    state = state.ray()
    cat = c.catalog
    candidates: list[tuple[str, list[Context]]] = [("reference", reference.parity_octads())]
    for sel in quadruple_report(cat, c.basis_of).selections:
        label = "exclude " + " ".join(str(cat.graph.vertices[i]) for i in sel.excluded)
        candidates.append((label, [cat.context(k) for k in sel.retained_octads]))
    best = None
    for label, ctxs in candidates:
        if not any(state in ctx.vectors for ctx in ctxs):
            continue
        proof = reduce_by_state(ctxs, state)
        key = (len(proof.contexts), len(proof.vectors))
        if best is None or key < best[0]:
            best = (key, proof, label)
    if best is None:
        raise ValueError(f"{state} is not covered by any certificate")
    return best[1], best[2]


@dataclass
class Claim:
    id: str
    criterion: int
    description: str
    expected: Any
    computed: Any
    passed: bool


@dataclass
class Report:
    claims: list[Claim] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    def check(self, id: str, criterion: int, description: str, expected: Any, computed: Any) -> bool:
        ok = expected == computed
        self.claims.append(Claim(id, criterion, description, expected, computed, ok))
        return ok

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def to_json(self) -> str:
        doc = {
            "passed": self.passed,
            "claims": [asdict(c) for c in self.claims],
            "info": self.info,
        }
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        rows = [("id", "expected", "computed", "result")]
        for c in self.claims:
            rows.append((c.id, _short(c.expected), _short(c.computed), "PASS" if c.passed else "FAIL"))
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        out = []
        for k, r in enumerate(rows):
            out.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
            if k == 0:
                out.append("  ".join("-" * w for w in widths))
        failed = sum(not c.passed for c in self.claims)
        out.append("")
        out.append(f"{len(self.claims) - failed}/{len(self.claims)} claims pass")
        if self.info:
            out.append("")
            for key, val in self.info.items():
                out.append(f"{key}: {json.dumps(val, sort_keys=True)}")
        return "\n".join(out) + "\n"


def _short(x: Any) -> str:
    s = json.dumps(x, sort_keys=True) if not isinstance(x, str) else x
    return s if len(s) <= 48 else s[:45] + "..."


def _orbit_shapes(c: Construction, selections, rng: random.Random, sample: int = 20) -> dict[str, int]:
    """(contexts, vectors) of the state reduction for every covered state over sampled certificates."""
    shapes: Counter[str] = Counter()
    for sel in rng.sample(selections, min(sample, len(selections))):
        ctxs = [c.catalog.context(k) for k in sel.retained_octads]
        for state in sorted({v for ctx in ctxs for v in ctx.vectors}):
            p = reduce_by_state(ctxs, state)
            shapes[f"{len(p.contexts)}x{len(p.vectors)}"] += 1
    return dict(sorted(shapes.items()))


def verify_all(drop_octad: int | None = None, seed: int = 0) -> Report:
    """Regenerate everything from the operator sets and check every claim.

    ``drop_octad`` removes one octad from the parity proof before the
    certificate, merge and state-specific checks, which must then fail.
    """
    rep = Report()
    c = construct(3)

    # construction
    rep.check("construction.octads", 1, "defining octads generated", 5, len(c.octads))
    rep.check("construction.vectors", 1, "distinct canonical vectors", 40, len(set(c.vectors)))
    rep.check(
        "construction.disjoint", 1, "defining octads pairwise disjoint", True,
        all(not (set(a.vectors) & set(b.vectors)) for a, b in itertools.combinations(c.octads, 2)),
    )
    rep.check(
        "construction.reference", 1, "defining octads equal the reference bases as ray sets", True,
        _as_sets(c.octads) == _as_sets(reference.defining_octads()),
    )

    # operator algebra
    words = mermin_words(3)
    rep.check(
        "operators.commute", 2, "ZZZ, ZXX, XZX, XXZ pairwise commute (rule and matrices agree)", True,
        all(commutes(a, b) and commutes_by_matrix(a, b) for a, b in itertools.combinations(words, 2)),
    )
    rep.check("operators.product_sign", 2, "product of the four words", -1, product_sign(OperatorSet(tuple(words))))

    # symmetry statistics
    sym = symmetry_report(c.catalog, c.basis_of)
    rep.check("symmetry.degree", 3, "orthogonal neighbours per vector", [23], sorted(set(sym.degrees)))
    rep.check(
        "symmetry.per_basis", 3, "neighbours in own basis, then in each other basis",
        [[7, 4, 4, 4, 4]], [list(b) for b in sorted(set(sym.basis_degrees))],
    )
    non_orth = sorted({len(c.graph) - 1 - d for d in sym.degrees})
    rep.check("symmetry.non_orthogonal", 3, "non-orthogonal others per vector", [16], non_orth)
    rep.check("symmetry.abs_inner", 3, "|inner| over non-orthogonal pairs", [2], list(sym.non_neighbour_inners))

    # octad catalog
    cat = c.catalog
    rep.check("catalog.octads", 4, "orthogonal octads among the 40 vectors", 25, len(cat))
    rep.check("catalog.per_vertex", 4, "octads through each vector", [5], sorted(set(sym.octads_per_vertex)))
    cat_sets = _as_sets(cat.contexts())
    rep.check("catalog.defining", 4, "defining octads in catalog", True, _as_sets(c.octads) <= cat_sets)
    parity_ctx = reference.parity_octads()
    rep.check("catalog.parity", 4, "parity-proof octads in catalog", True, _as_sets(parity_ctx) <= cat_sets)

    # quadruples
    qr = quadruple_report(cat, c.basis_of)
    rep.check(
        "quadruples.count", 5,
        "orthogonal quadruples in distinct bases leaving exactly 11 octads that form a certificate",
        QUADRUPLE_TARGET, len(qr.selections),
    )
    quad = tuple(sorted(cat.graph.index(v) for v in reference.excluded_quadruple()))
    sel = next((s for s in qr.selections if s.excluded == quad), None)
    parity_idx = sorted(c.octad_indices(parity_ctx))
    rep.check(
        "quadruples.reference", 5, "reference quadruple leaves exactly the parity-proof octads", parity_idx,
        sorted(sel.retained_octads) if sel else None,
    )
    rep.info["quadruple_condition_counts"] = qr.counts
    rep.info["orthogonal_quadruples_by_retained_octads"] = {str(k): v for k, v in qr.retained_histogram.items()}

    # parity proof
    used = [k for k in range(len(parity_idx)) if k != drop_octad]
    chosen = [parity_ctx[k] for k in used]
    chosen_idx = [parity_idx[k] for k in used] if len(parity_idx) == len(parity_ctx) else []
    h = c.hypergraph
    cert = ParityCertificate.of(h, chosen_idx)
    rep.check("parity.certificate", 6, "parity-proof octads form a valid certificate", True, is_valid_certificate(h, cert))
    rep.check(
        "parity.multiplicities", 6, "multiplicities over the parity-proof octads", [2, 4],
        sorted(set(cert.multiplicity.values())),
    )
    t0 = time.perf_counter()
    none_11 = search_assignment(h.restrict(chosen_idx)) is None
    none_25 = search_assignment(h) is None
    slow = time.perf_counter() - t0 > SEARCH_SECONDS
    defining_idx = c.octad_indices(list(c.octads))
    some_5 = search_assignment(h.restrict(defining_idx)) is not None
    rep.check("parity.search_11", 6, "no assignment on the parity-proof octads", True, none_11)
    rep.check("parity.search_25", 6, "no assignment on all 25 octads", True, none_25)
    rep.check("parity.search_5", 6, "assignment exists on the 5 defining octads", True, some_5)
    rep.check("parity.search_time", 6, f"exhaustive searches finish within {SEARCH_SECONDS:g} s", True, not slow)
    certs = find_parity_certificates(h, 11)
    rep.info["certificates_by_size"] = {str(k): v for k, v in sorted(Counter(len(x) for x in certs).items())}

    # merge
    sub = ContextHypergraph.from_contexts(chosen)
    try:
        merged = merge_to_planes(sub, reference.plane_spec())
        ranks = Counter(p.rank for p in merged.projectors)
        merged_ok = all(is_resolution_of_identity(merged.context(k)) for k in range(len(merged.contexts)))
        merged_cert = is_valid_certificate(merged, ParityCertificate.of(merged, range(len(merged.contexts))))
        merged_none = search_assignment(merged) is None
        counts = [len(merged.projectors), ranks.get(2, 0), ranks.get(1, 0)]
    except ValueError as exc:
        merged_ok = merged_cert = merged_none = False
        counts = str(exc)
    rep.check("merge.projectors", 7, "projectors after merge: total, rank 2, rank 1", [30, 14, 16], counts)
    rep.check("merge.resolution", 7, "merged contexts resolve the identity", True, merged_ok)
    rep.check("merge.certificate", 7, "merged contexts still form a certificate", True, merged_cert)
    rep.check("merge.search", 7, "no assignment after merge", True, merged_none)

    # state-specific proof
    try:
        proof = reduce_by_state(chosen, reference.reference_state())
        shape = [len(proof.contexts), len(proof.vectors)]
        expansions = {frozenset(zip(map(str, ctx), signs)) for ctx, signs in zip(proof.contexts, proof.expansion_signs)}
        mults = sorted(set(proof.multiplicities().values()))
        verdict = verify_proof(proof).reason
    except ValueError as exc:
        shape, expansions, mults, verdict = str(exc), set(), [], "error"
    wanted = {frozenset((str(reference.vec(s)), k) for k, s in ctx) for ctx in reference.STATE_EXPANSIONS}
    rep.check("state.shape", 8, "contexts and distinct vectors after conditioning", [7, 13], shape)
    rep.check("state.expansions", 8, "each context expands 2*state with the listed signs", True, expansions == wanted)
    rep.check("state.multiplicities", 8, "occurrences per vector", [2, 4], mults)
    rep.check("state.verdict", 8, "proof verifies and admits no assignment", "ok", verdict)
    if shape == [7, 13]:
        rep.info["state_proof_vectors_per_dimension"] = "13/8"
    rep.info["state_proof_shapes"] = _orbit_shapes(c, qr.selections, random.Random(seed))

    # oracle equivalence
    rng = random.Random(seed)
    agree = _as_sets(cat.contexts()) == naive_octads(c.vectors)
    for _ in range(10):
        subset = rng.sample(list(c.vectors), rng.randint(20, 36))
        fast = enumerate_octads(build_graph(subset))
        agree &= _as_sets(fast.contexts()) == naive_octads(subset)
    rep.check("oracle.cliques", 9, "bitmask octad search matches naive search on 11 instances", True, agree)
    gf2_agree = True
    for _ in range(10):
        pick = rng.sample(range(len(cat)), 10)
        part = h.restrict(pick)
        fast = {cert.context_indices for cert in find_parity_certificates(part, 10)}
        slow_certs = brute_force_certificates(part.contexts, 10)
        gf2_agree &= fast == slow_certs
    rep.check("oracle.gf2", 9, "nullspace certificates match subset brute force on 10 instances", True, gf2_agree)

    # operator-level contradiction
    rep.check(
        "operators.values", 10, "single-site +-1 values reproducing the operator identity (of 64)", 0,
        len(operator_value_assignments(3)),
    )
    return rep
