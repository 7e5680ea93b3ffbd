import pytest
from hypothesis import given, settings, strategies as st

from core.errors import LayoutOverflowError, StructureError
from core.inttuple import (
    checked, colex_less, compatible, congruent, coordinate_map, crd2idx, depth,
    exclusive_prefix_product, idx2crd, iter_coords, rank, set_overflow_checking, size,
    validate_shape, weakly_congruent,
)
from strategies import shapes


@pytest.mark.parametrize("t, expected", [
    (31, 1),
    ((16, 32), 2),
    (((4, 6), (3, (2, 2), 8)), 2),
])
def test_rank(t, expected):
    assert rank(t) == expected


@pytest.mark.parametrize("t, expected", [
    (31, 0),
    ((2, (4, 1), -1), 2),
    ((3, -8, 7), 1),
])
def test_depth(t, expected):
    assert depth(t) == expected


@pytest.mark.parametrize("s, expected", [(4, 4), (((2, 3), 2), 12), ((2, (3, 5)), 30)])
def test_size(s, expected):
    assert size(s) == expected


def test_congruence():
    assert congruent((4, 8), (5, 7))
    assert not congruent((4, 8), (4, (2, 4)))
    assert congruent(3, 3)


def test_weak_congruence_is_asymmetric():
    assert weakly_congruent(30, (2, 15))
    assert not weakly_congruent((1, 2), (1, 2, 3))
    assert not weakly_congruent(((1, 1), 1), 5)


def test_compatibility():
    assert compatible(30, (6, 5))
    assert not compatible((2, (3, 5)), ((3, 2), 5))
    assert compatible((2, (3, 5)), (2, (3, 5)))


def test_colex_order():
    assert colex_less((1, 0), (0, 1))
    assert not colex_less((0, 0), (0, 0))
    assert colex_less(((1, 2), 0), ((0, 0), 1))
    with pytest.raises(StructureError):
        colex_less((1, 0), 1)


@pytest.mark.parametrize("shape, expected", [
    (4, [0, 1, 2, 3]),
    ((2, 3), [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)]),
    (((2, 3), 2), [
        ((0, 0), 0), ((1, 0), 0), ((0, 1), 0), ((1, 1), 0), ((0, 2), 0), ((1, 2), 0),
        ((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1), ((0, 2), 1), ((1, 2), 1),
    ]),
])
def test_coordinate_tables(shape, expected):
    assert [idx2crd(i, shape) for i in range(size(shape))] == expected
    assert list(iter_coords(shape)) == expected


def test_idx2crd_rows():
    assert idx2crd(7, ((2, 3), 2)) == ((1, 0), 1)
    assert idx2crd(0, ((2, 3), (4, 5))) == ((0, 0), (0, 0))
    assert idx2crd(4, (2, 3)) == (0, 2)


def test_idx2crd_last_mode_absorbs_overflow():
    assert idx2crd(9, (2, 3)) == (1, 4)


def test_crd2idx_rows():
    assert crd2idx(((1, 2), 1), ((2, 3), 2)) == 11
    assert crd2idx(((0, 0), 0), ((2, 3), 2)) == 0
    assert crd2idx((3, 1), (6, 2)) == 9


def test_coordinate_map():
    assert coordinate_map(7, 12, ((2, 3), 2)) == ((1, 0), 1)
    assert coordinate_map((1, 2), (2, 3), (2, 3)) == (1, 2)
    assert coordinate_map(((0, 2), 1), ((2, 3), 2), (6, 2)) == (4, 1)
    with pytest.raises(StructureError):
        coordinate_map(0, (2, 3), (3, 2))


@pytest.mark.parametrize("s, expected", [
    ((4, 6, 8, 10), (1, 4, 24, 192)),
    (7, (1,)),
    ((2, 3, 2), (1, 2, 6)),
])
def test_exclusive_prefix_product(s, expected):
    assert exclusive_prefix_product(s) == expected


def test_empty_tuples_are_rejected():
    with pytest.raises(StructureError):
        validate_shape(())
    with pytest.raises(StructureError):
        validate_shape((2, 0))


def test_overflow_is_checked():
    with pytest.raises(LayoutOverflowError):
        checked(1 << 63)
    set_overflow_checking(False)
    try:
        assert checked(1 << 63) == 1 << 63
    finally:
        set_overflow_checking(True)


@given(shapes(max_leaves=5))
@settings(max_examples=200, deadline=None)
def test_index_round_trip(shape):
    previous = None
    for i in range(size(shape)):
        coord = idx2crd(i, shape)
        assert crd2idx(coord, shape) == i
        if previous is not None:
            assert colex_less(previous, coord)
        previous = coord


@given(shapes(), st.data())
@settings(max_examples=200, deadline=None)
def test_compatible_is_a_partial_order(shape, data):
    coarse = size(shape)
    assert compatible(shape, shape)
    assert compatible(coarse, shape)
    other = data.draw(shapes())
    if compatible(shape, other):
        assert size(shape) == size(other)
    if weakly_congruent(shape, other) and weakly_congruent(other, shape):
        assert congruent(shape, other)


@st.composite
def refinement(draw, shape):
    """A shape that shape coarsens: some leaves split into factor tuples."""
    if isinstance(shape, tuple):
        return tuple(draw(refinement(mode)) for mode in shape)
    if draw(st.booleans()):
        return shape
    first = draw(st.sampled_from([k for k in range(1, shape + 1) if shape % k == 0]))
    return (first, shape // first)


@given(shapes(), st.data())
@settings(max_examples=300, deadline=None)
def test_compatible_is_transitive_along_refinements(shape, data):
    middle = data.draw(refinement(shape))
    fine = data.draw(refinement(middle))
    assert compatible(shape, middle) and compatible(middle, fine)
    assert compatible(shape, fine)


@given(shapes(), shapes(), shapes())
@settings(max_examples=300, deadline=None)
def test_compatible_is_transitive_and_antisymmetric(a, b, c):
    if compatible(a, b) and compatible(b, a):
        assert a == b
    if compatible(a, b) and compatible(b, c):
        assert compatible(a, c)


@given(shapes(), st.data())
@settings(max_examples=300, deadline=None)
def test_mutually_compatible_refinements_are_equal(shape, data):
    finer = data.draw(refinement(shape))
    if compatible(finer, shape):
        assert finer == shape
