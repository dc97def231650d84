from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monocone.errors import InvalidInput, NotNormal, NotPositive, NotSupported
from monocone.semigroups import AffineSemigroup
from monocone.sequences import (
    SupportPattern,
    adjoin_closure,
    build_direct_system,
    classify_sequence,
    embed_full,
    extend_mixed,
    family_rank,
    finseq,
    resolve,
    resolve_one_negative,
    seq_cone_coordinates,
    split_off,
)

I_ALL = SupportPattern(-1)
I_GE1 = SupportPattern(0)


def test_finseq_canonical_form():
    s = finseq([1, 2, 2], 2)
    assert s.prefix == (Fraction(1),)
    assert s.tail == Fraction(2)
    assert finseq([2, 2], 2).prefix == ()


def test_finseq_arithmetic():
    a = finseq([1, 2], 3)
    b = finseq([0, 1, 1], 2)
    assert a.add(b).at(0) == 1 and a.add(b).at(2) == 4 and a.add(b).tail == 5
    assert a.sub(a).is_zero()
    assert a.scale(2).at(1) == 4


_rationals = st.fractions(min_value=-9, max_value=9, max_denominator=9)


@given(
    st.lists(_rationals, max_size=5), _rationals,
    st.lists(_rationals, max_size=5), _rationals,
)
def test_finseq_group_laws(p1, t1, p2, t2):
    a, b = finseq(p1, t1), finseq(p2, t2)
    assert a.add(b) == b.add(a)
    assert a.add(b).sub(b) == a
    assert a.sub(a).is_zero()
    assert a.scale(2).sub(a) == a


@given(st.lists(_rationals, max_size=5), _rationals, st.integers(min_value=5, max_value=8))
def test_finseq_vectorization_is_faithful(prefix, tail, width):
    a = finseq(prefix, tail)
    v = a.as_vector(width)
    assert len(v) == width + 1
    assert all(v[i] == a.at(i) for i in range(width))
    assert v[-1] == a.tail


def test_support_pattern_membership():
    p = SupportPattern(2, frozenset({1, 5}))
    assert not p.contains(0)
    assert p.contains(1)  # exception at or below the threshold is included
    assert not p.contains(2)
    assert p.contains(3)
    assert not p.contains(5)  # exception above the threshold is excluded
    assert p.contains(6)


def test_support_pattern_restrict_and_without():
    p = SupportPattern(0)
    r = p.restrict_above(2)
    assert not r.contains(1) and not r.contains(2) and r.contains(3)
    q = p.without([3])
    assert not q.contains(3) and q.contains(4)


def test_classify_sequence_examples():
    assert classify_sequence(finseq([], 1), I_ALL) == (True, True)
    assert classify_sequence(finseq([-1], 2), I_GE1) == (True, True)
    assert classify_sequence(finseq([1, 0], 1), I_ALL) == (False, True)


def test_classify_stable_under_canonicalization():
    raw = finseq([1, 2, 2, 2], 2)  # canonicalizes to prefix (1,)
    also = finseq([1], 2)
    assert raw == also
    assert classify_sequence(raw, I_GE1) == classify_sequence(also, I_GE1)


B1 = finseq([2, 2, 2, 2], 2)
B2 = finseq([3, 1, 3, 1], 3)
B3 = finseq([4, 2, 1, 1], 4)


def test_split_off_worked_example():
    prime, family = split_off([B1, B2, B3], I_ALL)
    assert len(family.members) == 4
    assert family_rank(family.members) == 4
    for m in family.members:
        supported, almost = classify_sequence(m, I_ALL)
        assert supported and almost and m.is_nonneg()
    for b in (B1, B2, B3):
        coords = family.coordinates(b)
        assert coords is not None and all(c >= 0 for c in coords)


def test_split_off_output_size_is_input_plus_one():
    prime, family = split_off([B1, B2, B3], I_ALL)
    assert len(family.members) == 3 + 1


def test_split_off_two_element_input_rejected():
    with pytest.raises(InvalidInput):
        split_off([B1, B2], I_ALL)


def test_split_off_unsupported_alpha():
    # b1 + b2 - b3 = (0, 1 | 1) has a zero on the support set
    b1 = finseq([1, 1], 1)
    b2 = finseq([1, 2], 1)
    b3 = finseq([2, 2], 1)
    with pytest.raises(NotSupported):
        split_off([b1, b2, b3], I_ALL)


def test_resolve_one_negative_two_element_case():
    c1 = finseq([3, 4, 3, 4], 3)
    c2 = finseq([1, 2, 1, 2], 1)
    alpha = c1.sub(c2)
    family = resolve_one_negative([c1, c2], [1], I_ALL)
    assert set(family.members) == {c2, alpha}
    assert family.coordinates(c1) == (Fraction(1), Fraction(1))


def test_resolve_one_negative_chained():
    family = resolve_one_negative([B1, B2, B3], [1, 1], I_ALL)
    assert family_rank(family.members) == len(family.members)
    alpha = B1.add(B2).sub(B3)
    for v in (B1, B2, B3, alpha):
        coords = family.coordinates(v)
        assert coords is not None and all(c >= 0 for c in coords)


def test_resolve_one_negative_all_zero_flags_rejected():
    with pytest.raises(InvalidInput):
        resolve_one_negative([B1, B2], [0], I_ALL)


def test_resolve_one_negative_with_rider():
    # eta = (1, 0, 1): B2 rides along untouched but stays a member
    rider = finseq([1, 3, 2, 5], 1)
    assert family_rank([B1, rider, B2, B3]) == 4
    family = resolve_one_negative([B1, rider, B2, B3], [1, 0, 1], I_ALL)
    assert rider in family.members
    alpha = B1.add(B2).sub(B3)
    for v in (B1, rider, B2, B3, alpha):
        coords = family.coordinates(v)
        assert coords is not None and all(c >= 0 for c in coords)


def test_split_off_with_passengers():
    passenger = finseq([1, 3, 2, 5], 1)
    prime, family = split_off([B1, B2, B3], I_ALL, passengers=[passenger])
    assert passenger in family.members
    assert len(family.members) == 5
    family.validate(require_nonneg=True)


def test_resolve_independent_alpha():
    family = resolve([B1, B2], B3, I_ALL)
    assert family.members == (B1, B2, B3)


def test_resolve_alpha_already_member():
    family = resolve([B1, B2], B1, I_ALL)
    assert family.members == (B1, B2)


def test_resolve_two_negatives():
    b1 = finseq([5, 5, 5, 3, 5], 5)
    b2 = finseq([4, 1, 4, 1, 4], 4)
    b3 = finseq([1, 2, 1, 2, 1], 1)
    b4 = finseq([2, 1, 3, 1, 2], 2)
    assert family_rank([b1, b2, b3, b4]) == 4
    alpha = b1.add(b2).sub(b3).sub(b4)
    assert alpha.is_nonneg()
    family = resolve([b1, b2, b3, b4], alpha, I_ALL)
    family.validate(require_nonneg=True)
    for v in (b1, b2, b3, b4, alpha):
        coords = family.coordinates(v)
        assert coords is not None and all(c >= 0 for c in coords)


def test_resolve_rejects_unsupported_alpha():
    with pytest.raises(NotSupported):
        resolve([B1, B2], finseq([1, 0], 1), I_ALL)


def test_adjoin_closure_single():
    family = adjoin_closure([B1], I_ALL)
    assert family.members == (B1,)


def test_adjoin_closure_two_independent():
    family = adjoin_closure([B1, B2], I_ALL)
    assert family.members == (B1, B2)


def test_adjoin_closure_dependent_constants():
    consts = [finseq([], 1), finseq([], 2), finseq([], 3)]
    family = adjoin_closure(consts, I_ALL)
    assert len(family.members) >= 1
    for c in consts:
        coords = family.coordinates(c)
        assert coords is not None and all(x >= 0 for x in coords)


def test_extend_mixed_all_nonneg_delegates():
    family = extend_mixed([B1, B2], B3, I_ALL)
    assert family.members == (B1, B2, B3)


def test_extend_mixed_in_cone_shortcut():
    # the worked mixed example: alpha is already a nonnegative combination
    e1 = finseq([-1, 2, 2, 2], 2)
    e2 = finseq([1, 1, 1, 1], 1)
    alpha = e1.add(e2)
    family = extend_mixed([e1, e2], alpha, I_GE1)
    assert family.members == (e1, e2)
    assert family.coordinates(alpha) == (Fraction(1), Fraction(1))


def test_extend_mixed_genuinely_mixed():
    e1 = finseq([-1, 2, 2, 2], 2)
    e2 = finseq([1, 1, 1, 1], 1)
    e3 = finseq([1, 1, 1, 2], 1)
    alpha = e1.add(e2).sub(e3)
    family = extend_mixed([e1, e2, e3], alpha, I_GE1)
    family.validate()
    for v in (e1, e2, e3, alpha):
        coords = family.coordinates(v)
        assert coords is not None and all(c >= 0 for c in coords)


def test_extend_mixed_negative_tail_rejected():
    with pytest.raises(InvalidInput):
        extend_mixed([B1], finseq([1], -1), I_GE1)


def test_extend_mixed_negative_on_support_rejected():
    with pytest.raises(NotSupported):
        extend_mixed([finseq([1, -1, 1], 1)], finseq([1, 1, 1], 1), I_ALL)


def test_build_direct_system_identity_transitions():
    p1, p2 = finseq([1, 0], 1), finseq([0, 1], 1)
    fams, trans = build_direct_system([p1, p2, p1.add(p2)], SupportPattern(1), 3)
    assert [len(f.members) for f in fams] == [1, 2, 2]
    assert trans[1] == [[1, 0], [0, 1]]


def test_build_direct_system_depth_one():
    fams, trans = build_direct_system([B1], I_ALL, 1)
    assert len(fams) == 1 and trans == []
    assert fams[0].members == (B1,)


def test_build_direct_system_type_h_stream():
    stream = [finseq([b], 1) for b in range(4)]
    fams, trans = build_direct_system(stream, I_GE1, 4)
    # every prefix of the stream lies in its stage with nonneg integer coords
    for n, fam in enumerate(fams):
        for h in stream[: n + 1]:
            coords = seq_cone_coordinates(list(fam.members), h)
            assert coords is not None
            assert all(c.denominator == 1 and c >= 0 for c in coords)
    # transitions compose exactly
    for n in range(len(trans) - 1):
        a, b = trans[n + 1], trans[n]
        composed = [
            [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))
        ]
        mem2 = list(fams[n + 2].members)
        direct = []
        for p in fams[n].members:
            c = seq_cone_coordinates(mem2, p)
            direct.append([int(x) for x in c])
        expected = [[direct[j][k] for j in range(len(direct))] for k in range(len(mem2))]
        assert composed == expected


def test_embed_full_quadrant():
    h = AffineSemigroup(2, ((1, 0), (0, 1)))
    images, cert = embed_full(h, 2)
    assert cert.value and cert.bounded
    assert len(images) == 2
    for img in images:
        assert img.tail > 0


def test_embed_full_type_h_truncation():
    h = AffineSemigroup(2, ((1, 0), (1, 1), (2, 1)))
    images, cert = embed_full(h, 3)
    assert cert.value


def test_embed_full_type_h_box_radius_10():
    h = AffineSemigroup(2, ((1, 0), (1, 1), (2, 1)), search_bound=10)
    images, cert = embed_full(h, 3)
    assert cert.value and cert.bounded


def test_embed_full_rejects_units():
    with pytest.raises(NotPositive):
        embed_full(AffineSemigroup(2, ((1, 0), (-1, 0), (0, 1))), 2)


def test_embedding_feeds_direct_system():
    # end to end: embed a plane semigroup by stagewise duals, then absorb the
    # images into a direct system with nonnegative integer coordinates
    h = AffineSemigroup(2, ((1, 0), (1, 1), (2, 1)))
    images, cert = embed_full(h, 3)
    assert cert.value
    # the embedding is additive: (1,0) + (1,1) = (2,1)
    assert images[0].add(images[1]) == images[2]
    support = SupportPattern(max(img.window for img in images) - 1)
    families, transitions = build_direct_system(images, support, 5)
    for n, family in enumerate(families):
        for img in images[: n + 1]:
            coords = seq_cone_coordinates(list(family.members), img)
            assert coords is not None
            assert all(c >= 0 and c.denominator == 1 for c in coords)


def test_embed_full_rejects_non_normal():
    with pytest.raises(NotNormal):
        embed_full(AffineSemigroup(1, ((2,), (3,))), 2)
