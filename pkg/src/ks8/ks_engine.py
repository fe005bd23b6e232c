"""Noncontextual value assignments, parity certificates and rank-two merges.

A :class:`ContextHypergraph` lists distinct projectors and the contexts that
use them.  An assignment gives every projector 0 or 1 with exactly one 1 per
context.  A parity certificate is an odd family of contexts in which every
projector occurs an even number of times; counting ones in two ways then
gives odd = even, so no assignment exists on those contexts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from ks8.exact_linalg import Context, ExactVector, Projector, inner, is_resolution_of_identity

__all__ = [
    "Assignment",
    "ContextHypergraph",
    "MalformedPlaneSpec",
    "ParityCertificate",
    "PlaneSpec",
    "find_parity_certificates",
    "format_hypergraph",
    "gf2_nullspace",
    "is_valid_assignment",
    "is_valid_certificate",
    "merge_to_planes",
    "parse_hypergraph",
    "push_assignment",
    "search_assignment",
]


@dataclass(frozen=True)
class ContextHypergraph:
    projectors: tuple[Projector, ...]
    contexts: tuple[tuple[int, ...], ...]
    complete: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "projectors", tuple(self.projectors))
        object.__setattr__(self, "contexts", tuple(tuple(c) for c in self.contexts))
        if len(set(self.projectors)) != len(self.projectors):
            raise ValueError("duplicate projectors in hypergraph")
        n = len(self.projectors)
        for k, ctx in enumerate(self.contexts):
            if len(set(ctx)) != len(ctx):
                raise ValueError(f"context {k} repeats a projector")
            if any(not 0 <= i < n for i in ctx):
                raise ValueError(f"context {k} refers to a missing projector")
            members = [self.projectors[i] for i in ctx]
            for p, q in itertools.combinations(members, 2):
                if not p.is_orthogonal_to(q):
                    raise ValueError(f"context {k}: {p} and {q} are not orthogonal")
            if self.complete and not is_resolution_of_identity(Context(tuple(members))):
                raise ValueError(f"context {k} is not a resolution of identity")

    @classmethod
    def from_contexts(cls, contexts: Iterable[Context], complete: bool = True) -> ContextHypergraph:
        """Deduplicate projectors in order of first appearance."""
        index: dict[Projector, int] = {}
        projectors: list[Projector] = []
        idx_contexts = []
        for ctx in contexts:
            row = []
            for p in ctx.members:
                if p not in index:
                    index[p] = len(projectors)
                    projectors.append(p)
                row.append(index[p])
            idx_contexts.append(tuple(row))
        return cls(tuple(projectors), tuple(idx_contexts), complete)

    @property
    def dim(self) -> int:
        return self.projectors[0].dim

    def context(self, k: int) -> Context:
        return Context(tuple(self.projectors[i] for i in self.contexts[k]))

    def restrict(self, context_indices: Iterable[int]) -> ContextHypergraph:
        """Sub-hypergraph on the chosen contexts, keeping only projectors they use."""
        return ContextHypergraph.from_contexts((self.context(k) for k in context_indices), self.complete)

    def incidence(self) -> list[int]:
        """Projector-by-context incidence, one bitmask over contexts per projector."""
        rows = [0] * len(self.projectors)
        for k, ctx in enumerate(self.contexts):
            for i in ctx:
                rows[i] |= 1 << k
        return rows

    def multiplicities(self, context_indices: Iterable[int]) -> list[int]:
        counts = [0] * len(self.projectors)
        for k in context_indices:
            for i in self.contexts[k]:
                counts[i] += 1
        return counts


@dataclass(frozen=True)
class Assignment:
    values: tuple[int, ...]

    def ones(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if v)


@dataclass(frozen=True)
class ParityCertificate:
    context_indices: tuple[int, ...]
    multiplicity: Mapping[int, int]

    @classmethod
    def of(cls, h: ContextHypergraph, context_indices: Iterable[int]) -> ParityCertificate:
        idx = tuple(sorted(context_indices))
        counts = h.multiplicities(idx)
        return cls(idx, {i: c for i, c in enumerate(counts) if c})

    def __len__(self) -> int:
        return len(self.context_indices)


def is_valid_certificate(h: ContextHypergraph, cert: ParityCertificate) -> bool:
    idx = cert.context_indices
    if len(set(idx)) != len(idx) or len(idx) % 2 == 0:
        return False
    if any(not 0 <= k < len(h.contexts) for k in idx):
        return False
    return all(c % 2 == 0 for c in h.multiplicities(idx))


def is_valid_assignment(h: ContextHypergraph, a: Assignment) -> bool:
    if len(a.values) != len(h.projectors) or any(v not in (0, 1) for v in a.values):
        return False
    return all(sum(a.values[i] for i in ctx) == 1 for ctx in h.contexts)


class _Conflict(Exception):
    pass


def search_assignment(h: ContextHypergraph) -> Assignment | None:
    """Exhaustive backtracking for an assignment, or ``None`` if there is none.

    Branches on the lowest unassigned projector, trying 1 before 0.  After each
    choice, unit propagation runs to a fixpoint: a context holding a 1 forces
    its other members to 0, and a context with a single open member and no 1
    forces that member to 1.  Projectors outside every context get 0.
    """
    n = len(h.projectors)
    contexts_of: list[list[int]] = [[] for _ in range(n)]
    for k, ctx in enumerate(h.contexts):
        for i in ctx:
            contexts_of[i].append(k)
    for ctx in h.contexts:
        if not ctx:
            return None

    def propagate(values: list[int | None], queue: list[int]) -> None:
        while queue:
            k = queue.pop()
            ctx = h.contexts[k]
            ones = [i for i in ctx if values[i] == 1]
            if len(ones) > 1:
                raise _Conflict
            open_ = [i for i in ctx if values[i] is None]
            if ones:
                forced, val = open_, 0
            elif not open_:
                raise _Conflict
            elif len(open_) == 1:
                forced, val = open_, 1
            else:
                continue
            for i in forced:
                values[i] = val
                queue.extend(contexts_of[i])

    def solve(values: list[int | None]) -> list[int | None] | None:
        try:
            free = next(i for i, v in enumerate(values) if v is None and contexts_of[i])
        except StopIteration:
            return values
        for val in (1, 0):
            trial = list(values)
            trial[free] = val
            try:
                propagate(trial, list(contexts_of[free]))
            except _Conflict:
                continue
            found = solve(trial)
            if found is not None:
                return found
        return None

    start: list[int | None] = [None] * n
    try:
        propagate(start, list(range(len(h.contexts))))
    except _Conflict:
        return None
    found = solve(start)
    if found is None:
        return None
    return Assignment(tuple(0 if v is None else v for v in found))


def gf2_nullspace(columns: Sequence[int], n_cols: int) -> list[int]:
    """Basis of ``{x : sum of columns[j] over bits j of x == 0}`` over GF(2).

    ``columns`` are bitmask column vectors of an ``m x n_cols`` matrix; the
    returned basis vectors are bitmasks over column indices.
    """
    # Row-reduce the augmented columns [column | unit_j]; combinations that
    # cancel the column part are nullspace vectors.
    pivots: dict[int, tuple[int, int]] = {}
    basis = []
    for j in range(n_cols):
        vec, tag = columns[j], 1 << j
        while vec:
            top = vec.bit_length() - 1
            if top not in pivots:
                pivots[top] = (vec, tag)
                break
            pv, pt = pivots[top]
            vec ^= pv
            tag ^= pt
        else:
            basis.append(tag)
    return basis


def _span(basis: Sequence[int]) -> Iterator[int]:
    for bits in range(1 << len(basis)):
        x = 0
        for b, v in enumerate(basis):
            if bits >> b & 1:
                x ^= v
        yield x


def find_parity_certificates(h: ContextHypergraph, max_contexts: int | None = None) -> list[ParityCertificate]:
    """All parity certificates with at most ``max_contexts`` contexts.

    Certificates are the odd-weight vectors of the GF(2) nullspace of the
    projector-by-context incidence matrix, so the search walks the nullspace
    (``2**dim`` vectors) instead of all context subsets.  Sorted by size, then
    lexicographically.
    """
    n_ctx = len(h.contexts)
    limit = n_ctx if max_contexts is None else max_contexts
    columns = []
    for ctx in h.contexts:
        col = 0
        for i in ctx:
            col |= 1 << i
        columns.append(col)
    certs = []
    for x in _span(gf2_nullspace(columns, n_ctx)):
        w = x.bit_count()
        if w % 2 == 1 and w <= limit:
            idx = tuple(k for k in range(n_ctx) if x >> k & 1)
            certs.append(idx)
    certs.sort(key=lambda c: (len(c), c))
    return [ParityCertificate.of(h, c) for c in certs]


class MalformedPlaneSpec(ValueError):
    pass


@dataclass(frozen=True)
class PlaneSpec:
    """Lines of mutually orthogonal vectors; each adjacent pair on a line spans a plane.

    A middle vector of a line belongs to two planes; which one applies in a
    given context is decided by which neighbour is present there.
    """

    lines: tuple[tuple[ExactVector, ...], ...]

    def __post_init__(self) -> None:
        lines = tuple(tuple(v.ray() for v in line) for line in self.lines)
        for line in lines:
            if len(set(line)) != len(line):
                raise MalformedPlaneSpec(f"repeated vector on line {line}")
            for u, v in itertools.combinations(line, 2):
                if inner(u, v) != 0:
                    raise MalformedPlaneSpec(f"{u} and {v} share a line but are not orthogonal")
        object.__setattr__(self, "lines", lines)

    @classmethod
    def parse(cls, lines: Iterable[Iterable[str]]) -> PlaneSpec:
        return cls(tuple(tuple(ExactVector.parse(s) for s in line) for line in lines))

    @property
    def pairs(self) -> tuple[frozenset[ExactVector], ...]:
        return tuple(frozenset(line[i : i + 2]) for line in self.lines for i in range(len(line) - 1))

    @property
    def vectors(self) -> frozenset[ExactVector]:
        return frozenset(v for line in self.lines for v in line)

    def planes(self) -> tuple[Projector, ...]:
        return tuple(Projector(sorted(p)) for p in self.pairs)


def _perfect_matchings(items: frozenset, pairs: Sequence[frozenset]) -> Iterator[list[frozenset]]:
    if not items:
        yield []
        return
    first = min(items)
    for p in pairs:
        if first in p and p <= items:
            for rest in _perfect_matchings(items - p, pairs):
                yield [p] + rest


def merge_to_planes(h: ContextHypergraph, spec: PlaneSpec) -> ContextHypergraph:
    """Replace paired rank-one projectors by the rank-two projector on their plane.

    Inside each context, the rank-one members whose vectors belong to ``spec``
    must be covered by exactly one set of disjoint spec pairs.  An uncovered
    spec vector (its partner missing) or an ambiguous cover means the spec does
    not fit the hypergraph and raises :class:`MalformedPlaneSpec`.
    """
    pairs = spec.pairs
    spec_vectors = spec.vectors
    merged = []
    for k in range(len(h.contexts)):
        ctx = h.context(k)
        keep = []
        present = set()
        for p in ctx.members:
            if p.rank == 1 and p.span[0] in spec_vectors:
                present.add(p.span[0])
            else:
                keep.append(p)
        covers = list(itertools.islice(_perfect_matchings(frozenset(present), pairs), 2))
        if not covers:
            raise MalformedPlaneSpec(f"context {k}: vectors {sorted(map(str, present))} cannot be paired")
        if len(covers) > 1:
            raise MalformedPlaneSpec(f"context {k}: pairing of {sorted(map(str, present))} is ambiguous")
        planes = [Projector(sorted(pair)) for pair in covers[0]]
        # keep the original member order, planes in place of their first vector
        out = []
        placed = set()
        for p in ctx.members:
            if p in keep:
                out.append(p)
                continue
            v = p.span[0]
            plane = next(q for q in planes if v in q.span)
            if plane not in placed:
                out.append(plane)
                placed.add(plane)
        merged.append(Context(tuple(out)))
    return ContextHypergraph.from_contexts(merged, h.complete)


def push_assignment(h: ContextHypergraph, merged: ContextHypergraph, a: Assignment) -> Assignment:
    """Carry an assignment across :func:`merge_to_planes`.

    A merged projector gets the sum of the values of the rank-one projectors
    of ``h`` on its spanning vectors.
    """
    by_vector: dict[ExactVector, int] = {}
    for p, val in zip(h.projectors, a.values):
        if p.rank == 1:
            by_vector[p.span[0]] = val
    values = []
    for q in merged.projectors:
        if q in h.projectors:
            values.append(a.values[h.projectors.index(q)])
        else:
            values.append(sum(by_vector[v] for v in q.span))
    return Assignment(tuple(values))


def format_hypergraph(h: ContextHypergraph) -> str:
    """Text exchange format.

    ::

        hypergraph dim 8 projectors 30 contexts 11 complete 1
        projector 2
        <vector line>
        <vector line>
        ...
        context 0 5 9 12
    """
    lines = [
        f"hypergraph dim {h.dim} projectors {len(h.projectors)} contexts {len(h.contexts)} complete {int(h.complete)}"
    ]
    for p in h.projectors:
        lines.append(f"projector {p.rank}")
        lines.extend(v.text() for v in p.span)
    for ctx in h.contexts:
        lines.append("context " + " ".join(map(str, ctx)))
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> ContextHypergraph:
    rows = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or not rows[0].startswith("hypergraph"):
        raise ValueError("missing hypergraph header")
    head = rows[0].split()
    fields = dict(zip(head[1::2], head[2::2]))
    dim = int(fields["dim"])
    complete = bool(int(fields.get("complete", 1)))
    projectors = []
    contexts = []
    i = 1
    while i < len(rows):
        tok = rows[i].split()
        if tok[0] == "projector":
            rank = int(tok[1])
            span = [ExactVector(tuple(int(x) for x in rows[i + 1 + r].split())) for r in range(rank)]
            if any(v.dim != dim for v in span):
                raise ValueError(f"projector at line {i + 1} has wrong dimension")
            projectors.append(Projector(span))
            i += 1 + rank
        elif tok[0] == "context":
            contexts.append(tuple(int(x) for x in tok[1:]))
            i += 1
        else:
            raise ValueError(f"unexpected line {rows[i]!r}")
    if len(projectors) != int(fields["projectors"]) or len(contexts) != int(fields["contexts"]):
        raise ValueError("header counts do not match body")
    return ContextHypergraph(tuple(projectors), tuple(contexts), complete)
