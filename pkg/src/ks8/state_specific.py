"""State-specific contradiction obtained by conditioning a parity proof on a known state."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ks8.exact_linalg import Context, ExactVector, inner
from ks8.ks_engine import ContextHypergraph, search_assignment

__all__ = [
    "ProofVerdict",
    "StateSpecificProof",
    "format_proof",
    "parse_proof",
    "proof_hypergraph",
    "reduce_by_state",
    "verify_proof",
]


@dataclass(frozen=True)
class StateSpecificProof:
    """A known state and the contexts that still matter once it is known.

    Each context lists the vectors neither parallel nor orthogonal to the
    state; ``expansion_signs[k][i]`` is ``inner(v_i, state) / 2`` so that
    ``2 * state == sum(sign_i * v_i)`` within each context.
    """

    state: ExactVector
    contexts: tuple[tuple[ExactVector, ...], ...]
    expansion_signs: tuple[tuple[int, ...], ...]
    source_contexts: tuple[int, ...] = ()

    @property
    def vectors(self) -> tuple[ExactVector, ...]:
        return tuple(sorted({v for ctx in self.contexts for v in ctx}))

    def multiplicities(self) -> dict[ExactVector, int]:
        return dict(Counter(v for ctx in self.contexts for v in ctx))


def reduce_by_state(contexts: Sequence[Context], state: ExactVector) -> StateSpecificProof:
    """Drop the state and everything orthogonal to it from each rank-one context.

    Contexts that become empty are discarded.  Within every surviving context
    the kept vectors must span a subspace containing the state, which for a
    full basis holds automatically.  Coefficients must be +-1 in the norm-4
    convention; anything else is rejected.
    """
    state = state.ray()
    all_vectors = {v for ctx in contexts for v in ctx.vectors}
    if state not in all_vectors:
        raise ValueError(f"state {state} is not one of the context vectors")
    out_ctx = []
    out_signs = []
    sources = []
    for k, ctx in enumerate(contexts):
        if any(p.rank != 1 for p in ctx.members):
            raise ValueError(f"context {k} has a projector of rank > 1")
        kept = sorted(v for v in ctx.vectors if v != state and inner(v, state) != 0)
        if not kept:
            continue
        # exact projection of the state onto span(kept) must be the state
        proj = [Fraction(0)] * state.dim
        for v in kept:
            c = Fraction(inner(v, state), v.norm_sq)
            for i, x in enumerate(v.components):
                proj[i] += c * x
        if proj != [Fraction(x) for x in state.components]:
            raise ValueError(f"context {k}: retained vectors do not span a subspace containing the state")
        signs = []
        for v in kept:
            q, r = divmod(inner(v, state), 2)
            if r or q not in (1, -1):
                raise ValueError(f"context {k}: coefficient {Fraction(inner(v, state), 2)} of {v} is not +-1")
            signs.append(q)
        out_ctx.append(tuple(kept))
        out_signs.append(tuple(signs))
        sources.append(k)
    return StateSpecificProof(state, tuple(out_ctx), tuple(out_signs), tuple(sources))


def proof_hypergraph(p: StateSpecificProof) -> ContextHypergraph:
    """Rank-one hypergraph of the proof; contexts are partial, not full bases."""
    return ContextHypergraph.from_contexts(
        (Context.of_vectors(ctx) for ctx in p.contexts), complete=False
    )


@dataclass(frozen=True)
class ProofVerdict:
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def verify_proof(p: StateSpecificProof) -> ProofVerdict:
    """Check every invariant of ``p`` and that no assignment exists.

    The reason code is ``"ok"`` or the first failed check.
    """
    if not p.contexts:
        return ProofVerdict(False, "no-contexts")
    if len(p.contexts) != len(p.expansion_signs):
        return ProofVerdict(False, "sign-shape")
    state = p.state
    for ctx, signs in zip(p.contexts, p.expansion_signs):
        if len(ctx) != len(signs) or not ctx:
            return ProofVerdict(False, "sign-shape")
        if any(u.dim != state.dim for u in ctx):
            return ProofVerdict(False, "dimension")
        if any(inner(u, v) != 0 for u, v in itertools.combinations(ctx, 2)):
            return ProofVerdict(False, "not-orthogonal")
        for v in ctx:
            if v.ray() == state.ray() or inner(v, state) == 0:
                return ProofVerdict(False, "parallel-or-orthogonal-to-state")
        if any(2 * s != inner(v, state) for v, s in zip(ctx, signs)):
            return ProofVerdict(False, "coefficient")
        total = [sum(s * v[i] for v, s in zip(ctx, signs)) for i in range(state.dim)]
        if total != [2 * x for x in state.components]:
            return ProofVerdict(False, "expansion")
    if len(p.contexts) % 2 == 0:
        return ProofVerdict(False, "even-context-count")
    if any(m % 2 for m in p.multiplicities().values()):
        return ProofVerdict(False, "odd-multiplicity")
    try:
        h = proof_hypergraph(p)
    except ValueError:
        return ProofVerdict(False, "not-orthogonal")
    if search_assignment(h) is not None:
        return ProofVerdict(False, "assignment-exists")
    return ProofVerdict(True, "ok")


def format_proof(p: StateSpecificProof) -> str:
    """Proof text: state line, indexed vectors, then signed references per context.

    ::

        state 1 0 0 -1 0 -1 -1 0
        vectors 13
        0: 0 0 0 2 0 0 0 0
        ...
        contexts 7
        +3 +5 -0 -1
    """
    vecs = p.vectors
    index = {v: i for i, v in enumerate(vecs)}
    lines = [f"state {p.state.text()}", f"vectors {len(vecs)}"]
    lines.extend(f"{i}: {v.text()}" for i, v in enumerate(vecs))
    lines.append(f"contexts {len(p.contexts)}")
    for ctx, signs in zip(p.contexts, p.expansion_signs):
        lines.append(" ".join(f"{'+' if s > 0 else '-'}{index[v]}" for v, s in zip(ctx, signs)))
    return "\n".join(lines) + "\n"


def parse_proof(text: str) -> StateSpecificProof:
    rows = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows[0].startswith("state "):
        raise ValueError("missing state line")
    state = ExactVector(tuple(int(x) for x in rows[0].split()[1:]))
    n = int(rows[1].split()[1])
    vecs = [ExactVector(tuple(int(x) for x in r.split(":", 1)[1].split())) for r in rows[2 : 2 + n]]
    m = int(rows[2 + n].split()[1])
    ctxs, signs = [], []
    for row in rows[3 + n : 3 + n + m]:
        refs = row.split()
        signs.append(tuple(1 if r[0] == "+" else -1 for r in refs))
        ctxs.append(tuple(vecs[int(r[1:])] for r in refs))
    if len(ctxs) != m:
        raise ValueError("context count does not match header")
    return StateSpecificProof(state, tuple(ctxs), tuple(signs))

