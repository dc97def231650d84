import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monocone.errors import DimensionMismatch, NotNormal, NotSubsemigroup
from monocone.semigroups import (
    AffineSemigroup,
    filtration,
    group_rank,
    is_full,
    is_normal,
    is_positive,
    membership,
    split_positive,
)


def S(*gens, dim=None, bound=0):
    d = dim if dim is not None else len(gens[0]) if gens else 1
    return AffineSemigroup(d, tuple(gens), search_bound=bound)


def test_membership_examples():
    s = S((1, 0), (1, 1))
    assert membership(s, (2, 1)).value
    assert not membership(s, (0, 1)).value
    assert membership(s, (0, 0)).value


def test_membership_witness_recombines():
    s = S((2, 1), (1, 3))
    v = (4, 7)  # (2,1) + 2*(1,3)
    verdict = membership(s, v)
    assert verdict.value
    coeffs = verdict.witness
    recon = tuple(sum(c * g[i] for c, g in zip(coeffs, s.generators)) for i in range(2))
    assert recon == v


def test_membership_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        membership(S((1, 0), (1, 1)), (1, 2, 3))


def test_membership_generators_always_members():
    for gens in [((1, 0), (1, 1)), ((2, 3), (0, 1)), ((1, 0, 2), (0, 1, 1), (1, 1, 1))]:
        s = S(*gens)
        for g in gens:
            assert membership(s, g).value


def test_is_positive():
    assert is_positive(S((1, 0), (1, 1))).value
    verdict = is_positive(S((1, 0), (-1, 0)))
    assert not verdict.value
    assert verdict.witness == (1, 0)
    assert is_positive(AffineSemigroup(2, ())).value


def test_positive_witness_is_a_unit():
    verdict = is_positive(S((2, 1), (-2, -1), (0, 1)))
    assert not verdict.value
    u = verdict.witness
    s = S((2, 1), (-2, -1), (0, 1))
    assert membership(s, u).value and membership(s, tuple(-x for x in u)).value


def test_is_normal_examples():
    assert is_normal(S((2, 0), (0, 2), (1, 1))).value
    verdict = is_normal(S((2, 0), (3, 0)))
    assert not verdict.value
    assert verdict.witness == (1, 0)
    assert is_normal(S((1, 0))).value
    assert is_normal(S((2, 0), (3, 0))).bounded


def test_normality_witness_reverifies():
    verdict = is_normal(S((2, 0), (3, 0)))
    w = verdict.witness
    s = S((2, 0), (3, 0))
    # witness is in the group and the cone but not the semigroup
    assert not membership(s, w).value
    assert membership(s, tuple(2 * x for x in w)).value or membership(s, tuple(3 * x for x in w)).value


def test_is_full_examples():
    assert is_full(S((2, 0)), S((1, 0), (0, 1))).value
    assert is_full(S((2,), dim=1), S((1,), dim=1)).value
    verdict = is_full(S((1, 1), (1, 2)), S((1, 0), (0, 1)))
    assert not verdict.value
    assert verdict.witness == (0, 1)


def test_is_full_reflexive():
    for gens in [((1, 0), (1, 1)), ((2, 1),), ((1, 0), (0, 1))]:
        s = S(*gens)
        assert is_full(s, s).value


def test_is_full_not_subsemigroup():
    with pytest.raises(NotSubsemigroup):
        is_full(S((0, 1)), S((1, 1), (2, 1)))


def test_split_positive_mixed():
    k, U, pos = split_positive(S((1, 0), (-1, 0), (0, 1)))
    assert k == 1
    assert pos.ambient_dim == 1 and pos.generators == ((1,),)


def test_split_positive_already_positive():
    s = S((1, 0), (0, 1))
    k, U, pos = split_positive(s)
    assert k == 0
    assert pos == s


def test_split_positive_full_group():
    k, U, pos = split_positive(S((1, 0), (-1, 0), (0, 1), (0, -1)))
    assert k == 2
    assert pos.generators == ()


def test_split_positive_requires_normal():
    with pytest.raises(NotNormal):
        split_positive(S((2, 0), (3, 0), (0, 1), (0, -1)))


def test_split_positive_membership_agreement():
    s = S((1, 0), (-1, 0), (0, 1))
    k, U, pos = split_positive(s)
    # through the embedding, membership = (anything) x membership in C'
    for p in [(-3, 2), (5, 0), (0, 3), (2, -1)]:
        img = tuple(sum(U[i][j] * p[j] for j in range(2)) for i in range(2))
        expected = membership(pos, img[k:]).value if k < 2 else True
        assert membership(s, p).value == expected


def test_filtration_chain():
    chain = filtration([(1, 0), (1, 1), (2, 1)], 3)
    assert len(chain) == 3
    for c in chain:
        assert is_normal(c).value
    for small, big in zip(chain, chain[1:]):
        for g in small.generators:
            assert membership(big, g).value


def test_filtration_single_point():
    chain = filtration([(1, 0)], 1)
    assert len(chain) == 1
    assert membership(chain[0], (3, 0)).value
    assert not membership(chain[0], (0, 1)).value


def test_filtration_constant_stream_stabilizes():
    chain = filtration([(1, 0), (1, 0), (1, 0)], 3)
    assert chain[0].generators == chain[1].generators == chain[2].generators


def test_group_rank():
    assert group_rank(S((1, 0), (1, 1))) == 2
    assert group_rank(S((2, 4))) == 1
    assert group_rank(AffineSemigroup(2, ())) == 0


@settings(max_examples=30, deadline=None)
@given(
    st.lists(
        st.tuples(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=3)),
        min_size=1,
        max_size=3,
    )
)
def test_group_rank_order_invariant(gens):
    gens = [g for g in gens if any(g)]
    if not gens:
        return
    a = group_rank(AffineSemigroup(2, tuple(gens)))
    b = group_rank(AffineSemigroup(2, tuple(reversed(gens))))
    assert a == b
    assert a <= 2


def test_serialization_roundtrip():
    s = S((1, 0), (1, 1), bound=7)
    doc = s.to_doc()
    assert AffineSemigroup.from_doc(doc) == s
