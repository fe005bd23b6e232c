import itertools
import random

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from ks8 import reference
from ks8.exact_linalg import Context, ExactVector, Projector, is_resolution_of_identity
from ks8.ks_engine import (
    Assignment,
    ContextHypergraph,
    MalformedPlaneSpec,
    ParityCertificate,
    PlaneSpec,
    find_parity_certificates,
    format_hypergraph,
    gf2_nullspace,
    is_valid_assignment,
    is_valid_certificate,
    merge_to_planes,
    parse_hypergraph,
    push_assignment,
    search_assignment,
)
from ks8.oracles import brute_force_certificates, brute_force_satisfiable


@pytest.fixture(scope="module")
def parity_h():
    return ContextHypergraph.from_contexts(reference.parity_octads())


def e(i, d=4):
    return ExactVector(tuple(2 * (i == j) for j in range(d)))


def test_hypergraph_rejects_incomplete_context():
    ctx = reference.defining_octads()[0]
    with pytest.raises(ValueError):
        ContextHypergraph.from_contexts([Context.of_vectors(ctx.vectors[:7])])
    h = ContextHypergraph.from_contexts([Context.of_vectors(ctx.vectors[:7])], complete=False)
    assert len(h.projectors) == 7


def test_hypergraph_rejects_non_orthogonal_members():
    bad = Context.of_vectors([reference.vec("20000000"), reference.vec("11110000")])
    with pytest.raises(ValueError):
        ContextHypergraph.from_contexts([bad], complete=False)


def test_parity_certificate(parity_h):
    cert = ParityCertificate.of(parity_h, range(11))
    assert len(parity_h.projectors) == 36
    assert is_valid_certificate(parity_h, cert)
    assert sorted(set(cert.multiplicity.values())) == [2, 4]


def test_even_or_broken_certificates_rejected(parity_h):
    assert not is_valid_certificate(parity_h, ParityCertificate.of(parity_h, range(10)))
    assert not is_valid_certificate(parity_h, ParityCertificate.of(parity_h, [0, 1, 2]))
    assert not is_valid_certificate(parity_h, ParityCertificate((0, 0, 1), {}))
    assert not is_valid_certificate(parity_h, ParityCertificate((0, 1, 99), {}))


def test_search_results(c3, parity_h):
    assert search_assignment(parity_h) is None
    assert search_assignment(c3.hypergraph) is None
    defining = ContextHypergraph.from_contexts(c3.octads)
    a = search_assignment(defining)
    assert a is not None and is_valid_assignment(defining, a)
    assert len(a.ones()) == 5


def test_search_drops_to_satisfiable_without_one_octad(parity_h):
    for k in range(11):
        sub = parity_h.restrict([j for j in range(11) if j != k])
        a = search_assignment(sub)
        assert a is not None and is_valid_assignment(sub, a)


def test_assignment_validation():
    h = ContextHypergraph.from_contexts([Context.of_vectors(e(i) for i in range(4))])
    assert is_valid_assignment(h, Assignment((0, 1, 0, 0)))
    assert not is_valid_assignment(h, Assignment((0, 1, 1, 0)))
    assert not is_valid_assignment(h, Assignment((0, 0, 0, 0)))
    assert not is_valid_assignment(h, Assignment((0, 2, 0, 0)))


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.data())
def test_search_matches_brute_force(catalog, data):
    h = catalog.hypergraph()
    ks = data.draw(st.lists(st.integers(0, 24), min_size=1, max_size=4, unique=True))
    sub = h.restrict(ks)
    if len({i for ctx in sub.contexts for i in ctx}) > 22:
        return
    assert (search_assignment(sub) is not None) == brute_force_satisfiable(sub.contexts)


def test_gf2_nullspace_small():
    # columns over 3 rows: c0 = c1 + c2
    basis = gf2_nullspace([0b011, 0b001, 0b010], 3)
    assert basis == [0b111]
    assert gf2_nullspace([0b1, 0b10], 2) == []


@settings(max_examples=20, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.randoms(use_true_random=False))
def test_gf2_certificates_match_brute_force(catalog, rnd):
    h = catalog.hypergraph()
    sub = h.restrict(rnd.sample(range(25), 10))
    fast = {c.context_indices for c in find_parity_certificates(sub, 7)}
    assert fast == brute_force_certificates(sub.contexts, 7)


def test_certificates_in_full_catalog(c3):
    certs = find_parity_certificates(c3.hypergraph, 11)
    assert {len(c) for c in certs} == {11}
    assert len(certs) == 320
    rng = random.Random(3)
    for cert in rng.sample(certs, 20):
        assert is_valid_certificate(c3.hypergraph, cert)
        assert search_assignment(c3.hypergraph.restrict(cert.context_indices)) is None


def test_merge_counts(parity_h):
    merged = merge_to_planes(parity_h, reference.plane_spec())
    ranks = [p.rank for p in merged.projectors]
    assert (len(ranks), ranks.count(2), ranks.count(1)) == (30, 14, 16)
    assert all(is_resolution_of_identity(merged.context(k)) for k in range(11))
    assert is_valid_certificate(merged, ParityCertificate.of(merged, range(11)))
    assert search_assignment(merged) is None
    # each plane occurs in exactly two contexts
    planes = [i for i, p in enumerate(merged.projectors) if p.rank == 2]
    mult = merged.multiplicities(range(11))
    assert {mult[i] for i in planes} == {2}


def test_merge_rejects_unpaired_vector(parity_h):
    lines = [list(line) for line in reference.PLANE_LINES]
    lines[0] = lines[0][:2]  # drop 00000020, leaving its partner alone
    with pytest.raises(MalformedPlaneSpec):
        merge_to_planes(parity_h, PlaneSpec.parse(lines))


def test_plane_spec_rejects_non_orthogonal_line():
    with pytest.raises(MalformedPlaneSpec):
        PlaneSpec.parse([("20000000", "11110000")])


def test_push_assignment_toy():
    f3, f4 = ExactVector((0, 0, 1, 1)), ExactVector((0, 0, 1, -1))
    h = ContextHypergraph.from_contexts(
        [Context.of_vectors([e(0), e(1), e(2), e(3)]), Context.of_vectors([e(0), e(1), f3, f4])]
    )
    merged = merge_to_planes(h, PlaneSpec(((e(0), e(1)),)))
    assert sorted(p.rank for p in merged.projectors) == [1, 1, 1, 1, 2]
    valid = [Assignment(bits) for bits in itertools.product((0, 1), repeat=len(h.projectors))]
    valid = [a for a in valid if is_valid_assignment(h, a)]
    assert len(valid) == 6
    for a in valid:
        assert is_valid_assignment(merged, push_assignment(h, merged, a))


def test_hypergraph_round_trip(parity_h):
    merged = merge_to_planes(parity_h, reference.plane_spec())
    for h in (parity_h, merged):
        text = format_hypergraph(h)
        back = parse_hypergraph(text)
        assert back.projectors == h.projectors and back.contexts == h.contexts
        assert format_hypergraph(back) == text


def test_hypergraph_parse_errors():
    with pytest.raises(ValueError):
        parse_hypergraph("nothing here")
    text = format_hypergraph(ContextHypergraph.from_contexts([Context.of_vectors(e(i) for i in range(4))]))
    with pytest.raises(ValueError):
        parse_hypergraph(text.replace("contexts 1", "contexts 2"))


def test_projector_equality_is_by_matrix():
    a, b = reference.vec("11110000"), reference.vec("1-1-110000")
    assert Projector.of(a, b) == Projector.of(b, -a)
    assert hash(Projector.of(a, b)) == hash(Projector.of(b, a))
