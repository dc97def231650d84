from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monocone import linalg as la
from monocone.errors import DependentGenerators, LineInCone, NoSeparator, UnsupportedDimension


def test_rank_identity():
    assert la.rank([[1, 0], [0, 1]]) == 2


def test_rank_proportional_rows():
    assert la.rank([[1, 2], [2, 4]]) == 1


def test_rank_hand_derived():
    # third row is not in the span: solving the first two coordinates forces
    # a = 1/2, b = 1, which fails on the third coordinate (4 != 1)
    assert la.rank([[2, 2, 2, 2, 2], [3, 1, 3, 1, 3], [4, 2, 1, 1, 4]]) == 3


def test_rank_invariance_under_permutation_and_scaling():
    rows = [[2, 2, 2, 2, 2], [3, 1, 3, 1, 3], [4, 2, 1, 1, 4]]
    base = la.rank(rows)
    assert la.rank(rows[::-1]) == base
    scaled = [[Fraction(7, 3) * x for x in rows[0]], rows[1], [Fraction(-2) * x for x in rows[2]]]
    assert la.rank(scaled) == base


@given(
    st.lists(
        st.lists(st.integers(min_value=-6, max_value=6), min_size=3, max_size=3),
        min_size=1,
        max_size=4,
    )
)
def test_rank_row_permutation_property(rows):
    base = la.rank(rows)
    assert la.rank(rows[::-1]) == base


def test_cone_coordinates_simple():
    gamma = [la.vec([1, 0]), la.vec([1, 1])]
    assert la.cone_coordinates(gamma, la.vec([3, 2])) == (Fraction(1), Fraction(2))


def test_cone_coordinates_zero():
    gamma = [la.vec([1, 0]), la.vec([1, 1])]
    assert la.cone_coordinates(gamma, la.vec([0, 0])) == (Fraction(0), Fraction(0))


def test_cone_coordinates_negative_is_absent():
    gamma = [la.vec([1, 0]), la.vec([1, 1])]
    assert la.cone_coordinates(gamma, la.vec([0, 1])) is None


def test_cone_coordinates_dependent_raises():
    gamma = [la.vec([1, 0]), la.vec([2, 0])]
    with pytest.raises(DependentGenerators):
        la.cone_coordinates(gamma, la.vec([1, 0]))


def test_smith_identity():
    U, D, V = la.smith_normal_form([[1, 0], [0, 1]])
    assert D == [[1, 0], [0, 1]]


def test_smith_hand_derived():
    # d1 = gcd of entries = 2; d1*d2 = |det| = 12
    U, D, V = la.smith_normal_form([[2, 4], [4, 2]])
    assert D == [[2, 0], [0, 6]]


def test_smith_rank_deficient():
    U, D, V = la.smith_normal_form([[1, 0], [0, 0]])
    assert D == [[1, 0], [0, 0]]


@settings(max_examples=60)
@given(
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=1, max_value=3),
    st.data(),
)
def test_smith_properties(nrows, ncols, data):
    mat = [
        [data.draw(st.integers(min_value=-9, max_value=9)) for _ in range(ncols)]
        for _ in range(nrows)
    ]
    U, D, V = la.smith_normal_form(mat)
    assert la.int_det(U) in (1, -1)
    assert la.int_det(V) in (1, -1)
    for i in range(nrows):
        for j in range(ncols):
            if i != j:
                assert D[i][j] == 0
    diag = [D[i][i] for i in range(min(nrows, ncols))]
    for a, b in zip(diag, diag[1:]):
        assert a >= 0 and b >= 0
        if a != 0:
            assert b % a == 0
        else:
            assert b == 0


def test_separating_functional_basic():
    L = la.separating_functional([(1, 0), (1, 1)], (0, 1))
    assert L((0, 1)) < 0
    assert L((1, 0)) >= 0 and L((1, 1)) >= 0
    assert L.coefficients == (Fraction(1), Fraction(-1))


def test_separating_functional_cn_scenario():
    # the x = (2,2) approximation scenario: (2,2) lies outside cone((1,0),(3,2))
    L = la.separating_functional([(1, 0), (3, 2)], (2, 2))
    assert L((2, 2)) < 0
    assert L((1, 0)) >= 0 and L((3, 2)) >= 0


def test_separating_functional_member_raises():
    with pytest.raises(NoSeparator):
        la.separating_functional([(1, 0), (1, 1)], (2, 1))


def test_separating_functional_strict():
    L = la.separating_functional([(1, 0), (1, 1)], (0, 1), strict=True)
    assert L((0, 1)) < 0
    assert L((1, 0)) > 0 and L((1, 1)) > 0


def test_separating_functional_strict_line_raises():
    with pytest.raises(LineInCone):
        la.separating_functional([(1, 0), (-1, 0)], (0, 1), strict=True)


def test_separating_functional_dimension_cap():
    gens = [tuple(1 if i == j else 0 for i in range(5)) for j in range(5)]
    with pytest.raises(UnsupportedDimension):
        la.separating_functional(gens, tuple([-1] * 5))


def test_dual_description_quadrant():
    rays, lines = la.dual_description([la.vec([1, 0]), la.vec([0, 1])], 2)
    assert sorted(rays) == [la.vec([0, 1]), la.vec([1, 0])]
    assert lines == []


def test_dual_description_halfline():
    rays, lines = la.dual_description([la.vec([1, 0])], 2)
    assert rays == [la.vec([1, 0])]
    assert lines == [la.vec([0, 1])]


def test_nonneg_combination_witness():
    sol = la.nonneg_combination([la.vec([1, 0]), la.vec([1, 1])], la.vec([3, 2]))
    assert sol == (Fraction(1), Fraction(2))
    assert la.nonneg_combination([la.vec([1, 0]), la.vec([1, 1])], la.vec([0, 1])) is None


def test_cone_is_pointed():
    ok, _ = la.cone_is_pointed([la.vec([1, 0]), la.vec([1, 1])], 2)
    assert ok
    ok, witness = la.cone_is_pointed([la.vec([1, 0]), la.vec([-1, 0])], 2)
    assert not ok and witness is not None


def test_unimodular_inverse():
    m = [[2, 1], [1, 1]]
    inv = la.unimodular_inverse(m)
    prod = [[sum(m[i][k] * inv[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert prod == [[1, 0], [0, 1]]
