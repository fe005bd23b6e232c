import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ks8.exact_linalg import (
    AngleClass,
    Context,
    ExactVector,
    Projector,
    angle_class,
    format_vectors,
    identity_matrix,
    inner,
    is_resolution_of_identity,
    parse_vectors,
)
from ks8 import reference

V = ExactVector.of


def test_inner_examples():
    assert inner(V(1, 1, 1, 1, 0, 0, 0, 0), V(1, -1, -1, 1, 0, 0, 0, 0)) == 0
    assert inner(V(2, 0, 0, 0, 0, 0, 0, 0), V(1, 1, 1, 1, 0, 0, 0, 0)) == 2
    with pytest.raises(ValueError):
        inner(V(1, 0), V(1, 0, 0))


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        V(0, 0, 0)


def test_parse_forms_agree():
    a = ExactVector.parse("1 0 0 -1 0 -1 -1 0")
    assert ExactVector.parse("100-10-1-10") == a
    assert ExactVector.parse("100\\=10\\=1\\=10") == a
    assert a.compact() == "100-10-1-10"


def test_ray_canonical_form():
    assert V(0, -2, 0, 0, 0, 0, 0, 0).ray() == V(0, 2, 0, 0, 0, 0, 0, 0)
    assert V(-3, 3, 3, -3, 0, 0, 0, 0).ray() == V(1, -1, -1, 1, 0, 0, 0, 0)
    assert V(1, 0, 0, 0, 0, 0, 0, 0).ray().norm_sq == 4


def test_angle_classes():
    e1 = V(2, 0, 0, 0, 0, 0, 0, 0)
    assert angle_class(e1, V(0, 2, 0, 0, 0, 0, 0, 0)) is AngleClass.ORTHOGONAL
    assert angle_class(e1, V(1, 1, 1, 1, 0, 0, 0, 0)) is AngleClass.ACUTE_OBTUSE_HALF
    assert angle_class(e1, V(-1, 1, 1, 1, 0, 0, 0, 0)) is AngleClass.ACUTE_OBTUSE_HALF


def test_identity_from_unit_vectors():
    ctx = Context.of_vectors(V(*(2 * (i == j) for j in range(8))) for i in range(8))
    assert is_resolution_of_identity(ctx)


def test_missing_vector_is_not_identity():
    ctx = reference.defining_octads()[1]
    assert is_resolution_of_identity(ctx)
    assert not is_resolution_of_identity(Context.of_vectors(ctx.vectors[:7]))


def test_rank_two_context():
    # 1100-1-100 + 1-1001-100 span a plane; its complement fills the rest
    a, b = reference.vec("1100-1-100"), reference.vec("1-1001-100")
    rest = [v for v in reference.defining_octads()[2].vectors if v not in (a, b)]
    ctx = Context((Projector.of(a, b), *(Projector.of(v) for v in rest)))
    assert ctx.ranks.count(2) == 1
    assert is_resolution_of_identity(ctx)


def test_projector_rejects_non_orthogonal_span():
    with pytest.raises(ValueError):
        Projector.of(V(2, 0, 0, 0, 0, 0, 0, 0), V(1, 1, 1, 1, 0, 0, 0, 0))


def test_projector_matrix_is_idempotent():
    p = Projector.of(reference.vec("11110000"), reference.vec("1-1-110000"))
    m = p.matrix
    sq = [[sum(m[i][k] * m[k][j] for k in range(8)) for j in range(8)] for i in range(8)]
    assert tuple(map(tuple, sq)) == m
    assert sum(m[i][i] for i in range(8)) == Fraction(2)


def test_vector_file_round_trip():
    vs = [v for c in reference.defining_octads() for v in c.vectors]
    assert parse_vectors(format_vectors(vs, "forty vectors")) == vs


octads = reference.defining_octads() + reference.parity_octads()


@given(st.sampled_from(octads), st.permutations(range(8)), st.lists(st.sampled_from([1, -1]), min_size=8, max_size=8))
def test_resolution_invariant_under_order_and_sign(ctx, perm, signs):
    vs = [ctx.vectors[i] * s for i, s in zip(perm, signs)]
    assert is_resolution_of_identity(Context.of_vectors(vs))


@given(st.sampled_from(octads), st.integers(0, 7))
def test_dropping_a_member_breaks_resolution(ctx, k):
    vs = [v for i, v in enumerate(ctx.vectors) if i != k]
    assert not is_resolution_of_identity(Context.of_vectors(vs))


@given(st.lists(st.integers(-3, 3), min_size=8, max_size=8).filter(any), st.integers(-4, 4).filter(bool))
def test_ray_ignores_scaling(comps, k):
    v = ExactVector(tuple(comps))
    assert (v * k).ray() == v.ray()
    assert v.ray().ray() == v.ray()


def test_identity_matrix_shape():
    m = identity_matrix(3)
    assert all(m[i][j] == (i == j) for i, j in itertools.product(range(3), repeat=2))
