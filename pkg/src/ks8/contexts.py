"""Orthogonality graph, octad catalog and excluded-quadruple enumeration."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from ks8.exact_linalg import AngleClass, Context, ExactVector, angle_class, inner
from ks8.ks_engine import ContextHypergraph, ParityCertificate, is_valid_certificate

__all__ = [
    "OctadCatalog",
    "OrthogonalityGraph",
    "QuadrupleReport",
    "QuadrupleSelection",
    "SymmetryReport",
    "build_graph",
    "enumerate_octads",
    "enumerate_quadruples",
    "format_catalog",
    "parse_catalog",
    "quadruple_report",
    "symmetry_report",
]


@dataclass(frozen=True)
class OrthogonalityGraph:
    vertices: tuple[ExactVector, ...]
    adjacency: tuple[int, ...]  # bitmask of orthogonal neighbours per vertex

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def degree(self, i: int) -> int:
        return bin(self.adjacency[i]).count("1")

    def neighbours(self, i: int) -> list[int]:
        return [j for j in range(len(self.vertices)) if self.adjacency[i] >> j & 1]

    def index(self, v: ExactVector) -> int:
        return self.vertices.index(v.ray())

    def __len__(self) -> int:
        return len(self.vertices)


def build_graph(vectors: Sequence[ExactVector]) -> OrthogonalityGraph:
    vectors = tuple(vectors)
    rays = [v.ray() for v in vectors]
    dup = [v for v, c in Counter(rays).items() if c > 1]
    if dup:
        raise ValueError(f"duplicate rays: {', '.join(map(str, dup))}")
    adj = [0] * len(vectors)
    for i, j in itertools.combinations(range(len(vectors)), 2):
        if inner(vectors[i], vectors[j]) == 0:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return OrthogonalityGraph(vectors, tuple(adj))


@dataclass(frozen=True)
class OctadCatalog:
    graph: OrthogonalityGraph
    octads: tuple[tuple[int, ...], ...]
    membership: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self) -> None:
        member = [[] for _ in self.graph.vertices]
        for k, oc in enumerate(self.octads):
            for i in oc:
                member[i].append(k)
        object.__setattr__(self, "membership", tuple(tuple(m) for m in member))

    def context(self, k: int) -> Context:
        return Context.of_vectors(self.graph.vertices[i] for i in self.octads[k])

    def contexts(self) -> list[Context]:
        return [self.context(k) for k in range(len(self.octads))]

    def find(self, vectors: Sequence[ExactVector]) -> int:
        """Index of the octad made of exactly these vectors."""
        key = tuple(sorted(self.graph.index(v) for v in vectors))
        return self.octads.index(key)

    def hypergraph(self) -> ContextHypergraph:
        return ContextHypergraph.from_contexts(self.contexts())

    def __len__(self) -> int:
        return len(self.octads)


def enumerate_octads(g: OrthogonalityGraph, size: int | None = None) -> OctadCatalog:
    """All cliques of ``size`` mutually orthogonal vertices (default: the dimension).

    A set of ``d`` mutually orthogonal nonzero vectors in dimension ``d`` is a
    basis, so for the default size every clique is an orthogonal octad.
    Octads are reported as sorted vertex tuples in ``(first vector, ...)``
    order of the vectors themselves, so the catalog does not depend on the
    order the vertices were given in.
    """
    n = len(g.vertices)
    if n == 0:
        return OctadCatalog(g, ())
    k = g.vertices[0].dim if size is None else size
    found: list[tuple[int, ...]] = []

    def extend(clique: list[int], cand: int) -> None:
        if len(clique) == k:
            found.append(tuple(clique))
            return
        if bin(cand).count("1") < k - len(clique):
            return
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            extend(clique + [v], cand & g.adjacency[v])

    extend([], (1 << n) - 1)
    verts = g.vertices
    found.sort(key=lambda oc: sorted(verts[i] for i in oc))
    return OctadCatalog(g, tuple(found))


@dataclass(frozen=True)
class SymmetryReport:
    degrees: tuple[int, ...]
    # per vertex: orthogonal-neighbour counts in each defining basis
    basis_degrees: tuple[tuple[int, ...], ...]
    non_neighbour_inners: tuple[int, ...]  # |inner| values over non-orthogonal pairs, sorted unique
    angle_counts: dict[str, int]
    octad_count: int
    octads_per_vertex: tuple[int, ...]
    incidences: int

    def as_dict(self) -> dict:
        return {
            "degrees": sorted(set(self.degrees)),
            "basis_degrees": [list(b) for b in sorted(set(self.basis_degrees))],
            "non_neighbour_abs_inner": list(self.non_neighbour_inners),
            "angle_counts": dict(self.angle_counts),
            "octad_count": self.octad_count,
            "octads_per_vertex": sorted(set(self.octads_per_vertex)),
            "incidences": self.incidences,
        }


def symmetry_report(cat: OctadCatalog, basis_of: Sequence[int]) -> SymmetryReport:
    """Degree, angle and membership statistics in one object.

    ``basis_of[i]`` is the defining basis of vertex ``i``; the per-basis degree
    tuple lists the own basis first, then the others in basis order.
    """
    g = cat.graph
    n = len(g)
    n_bases = max(basis_of) + 1
    basis_degrees = []
    for i in range(n):
        per = [0] * n_bases
        for j in g.neighbours(i):
            per[basis_of[j]] += 1
        own = per.pop(basis_of[i])
        basis_degrees.append((own, *per))
    angles: Counter[str] = Counter()
    abs_inner = set()
    for i, j in itertools.combinations(range(n), 2):
        angles[angle_class(g.vertices[i], g.vertices[j]).value] += 1
        ip = inner(g.vertices[i], g.vertices[j])
        if ip:
            abs_inner.add(abs(ip))
    for a in AngleClass:
        angles.setdefault(a.value, 0)
    return SymmetryReport(
        degrees=tuple(g.degree(i) for i in range(n)),
        basis_degrees=tuple(basis_degrees),
        non_neighbour_inners=tuple(sorted(abs_inner)),
        angle_counts=dict(sorted(angles.items())),
        octad_count=len(cat),
        octads_per_vertex=tuple(len(m) for m in cat.membership),
        incidences=sum(len(o) for o in cat.octads),
    )


@dataclass(frozen=True)
class QuadrupleSelection:
    excluded: tuple[int, int, int, int]
    retained_octads: tuple[int, ...]


def _octad_masks(cat: OctadCatalog) -> list[int]:
    masks = [0] * len(cat.graph)
    for v, octs in enumerate(cat.membership):
        for k in octs:
            masks[v] |= 1 << k
    return masks


def enumerate_quadruples(
    cat: OctadCatalog, basis_of: Sequence[int], retained: int = 11
) -> list[QuadrupleSelection]:
    """Four-vertex exclusions whose untouched octads form a parity proof.

    A selection is kept when its four vertices are mutually orthogonal, lie in
    four different defining bases, and exactly ``retained`` catalog octads
    avoid all four and make a valid parity certificate.
    """
    return quadruple_report(cat, basis_of, retained).selections


@dataclass(frozen=True)
class QuadrupleReport:
    """Counts of four-vertex subsets under each combination of conditions.

    Keys of ``counts`` are ``+``-joined condition names: ``orthogonal``,
    ``distinct_bases``, ``retained`` (exactly the target number of octads
    avoid the four) and ``certificate`` (those octads are a parity proof).
    """

    total_subsets: int
    counts: dict[str, int]
    retained_histogram: dict[int, int]  # retained-octad count -> orthogonal quadruples
    selections: list[QuadrupleSelection]


_CONDITIONS = ("orthogonal", "distinct_bases", "retained", "certificate")


def quadruple_report(cat: OctadCatalog, basis_of: Sequence[int], retained: int = 11) -> QuadrupleReport:
    g = cat.graph
    h = cat.hypergraph()
    n = len(g)
    n_oct = len(cat)
    everything = (1 << n_oct) - 1
    masks = _octad_masks(cat)
    flag_counts: Counter[tuple[bool, ...]] = Counter()
    hist: Counter[int] = Counter()
    selections = []
    cert_cache: dict[int, bool] = {}
    total = 0
    for quad in itertools.combinations(range(n), 4):
        total += 1
        a, b, c, d = quad
        adj_a = g.adjacency[a]
        orth = bool(adj_a >> b & adj_a >> c & adj_a >> d & 1) and g.adjacent(b, c) and g.adjacent(b, d) and g.adjacent(c, d)
        distinct = len({basis_of[a], basis_of[b], basis_of[c], basis_of[d]}) == 4
        kept_mask = everything & ~(masks[a] | masks[b] | masks[c] | masks[d])
        n_kept = kept_mask.bit_count()
        cert = cert_cache.get(kept_mask)
        if cert is None:
            kept = [k for k in range(n_oct) if kept_mask >> k & 1]
            cert = cert_cache[kept_mask] = is_valid_certificate(h, ParityCertificate.of(h, kept))
        if orth:
            hist[n_kept] += 1
        flags = (orth, distinct, n_kept == retained, cert)
        flag_counts[flags] += 1
        if all(flags):
            kept = tuple(k for k in range(n_oct) if kept_mask >> k & 1)
            selections.append(QuadrupleSelection(quad, kept))
    counts = {}
    for r in range(1, len(_CONDITIONS) + 1):
        for combo in itertools.combinations(range(len(_CONDITIONS)), r):
            counts["+".join(_CONDITIONS[i] for i in combo)] = sum(
                m for flags, m in flag_counts.items() if all(flags[i] for i in combo)
            )
    return QuadrupleReport(total, counts, dict(sorted(hist.items())), selections)


def format_catalog(cat: OctadCatalog) -> str:
    """Catalog text: a header listing the indexed vectors, then one octad per line."""
    lines = [f"vectors {len(cat.graph)}"]
    lines.extend(f"{i}: {v.text()}" for i, v in enumerate(cat.graph.vertices))
    lines.append(f"octads {len(cat)}")
    lines.extend(" ".join(map(str, oc)) for oc in cat.octads)
    return "\n".join(lines) + "\n"


def parse_catalog(text: str) -> OctadCatalog:
    rows = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    n = int(rows[0].split()[1])
    vectors = []
    for i, row in enumerate(rows[1 : 1 + n]):
        idx, comps = row.split(":", 1)
        if int(idx) != i:
            raise ValueError(f"vector index {idx} out of order")
        vectors.append(ExactVector(tuple(int(x) for x in comps.split())))
    m = int(rows[1 + n].split()[1])
    octads = tuple(tuple(int(x) for x in row.split()) for row in rows[2 + n : 2 + n + m])
    if len(octads) != m:
        raise ValueError("octad count does not match header")
    g = build_graph(vectors)
    for oc in octads:
        if any(not g.adjacent(a, b) for a, b in itertools.combinations(oc, 2)):
            raise ValueError(f"octad {oc} is not mutually orthogonal")
    return OctadCatalog(g, octads)
