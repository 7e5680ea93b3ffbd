import pytest
from hypothesis import given, settings

from core.errors import PathError, SemimoduleError, StructureError, UnsupportedOperation
from core.inttuple import crd2idx, idx2crd, iter_coords
from core.layout import (
    Layout, coalesce, coalesce_bymode, concat, coordinate_identity, cosize,
    flatten_layout, identity_layout, make_layout, sublayout,
)
from core.parser import parse_layout
from core.stride import Xor, Zero, as_coordinate, basis
from strategies import layouts, shapes

NESTED = Layout(((2, 2), (4, 2)), ((1, 8), (2, 16)))


def test_make_layout():
    assert str(make_layout((4, 8), (1, 4))) == "(4,8):(1,4)"
    assert str(make_layout((4, 8), (basis(0), basis(1)))) == "(4,8):(e0,e1)"
    assert str(make_layout((4, 6))) == "(4,6):(1,4)"


@pytest.mark.parametrize("shape, stride, error", [
    ((4, 8), (1, (4, 4)), StructureError),
    ((4, 0), (1, 4), StructureError),
    ((2, 2), (1, Xor(1)), SemimoduleError),
    ((2, 2), (basis(0), 2), SemimoduleError),
])
def test_make_layout_rejects(shape, stride, error):
    with pytest.raises(error):
        make_layout(shape, stride)


def test_evaluation():
    assert NESTED(22) == 26
    assert NESTED(((0, 1), (1, 1))) == 26
    assert NESTED(0) == 0
    assert Layout((4, 8), (8, 1))(1, 2) == 10


def test_evaluation_rejects_inadmissible_coordinates():
    with pytest.raises(StructureError):
        NESTED((1, 2, 3))


def test_rank_and_depth():
    assert NESTED.rank == 2
    assert NESTED.depth == 2
    assert NESTED.size() == 32


def test_concat():
    assert concat(Layout(4, 1), Layout(8, 4)) == Layout((4, 8), (1, 4))
    assert concat([Layout(2, 1), Layout((8, 1), (6, 2))]).rank == 2
    with pytest.raises(SemimoduleError):
        concat(Layout(4, 2), Layout(3, basis(0)))


def test_sublayout():
    L = Layout((4, (3, 2)), (2, (8, 1)))
    assert sublayout(L, 1) == Layout((3, 2), (8, 1))
    assert Layout((4, 8), (1, 4))[0] == Layout(4, 1)
    assert NESTED[(1, 0)] == Layout(4, 2)
    assert sublayout(Layout(8, 1), 0) == Layout(8, 1)


def test_sublayout_path_errors():
    with pytest.raises(PathError):
        sublayout(NESTED, 2)
    with pytest.raises(PathError):
        sublayout(NESTED, (0, 0, 1))


@pytest.mark.parametrize("text, expected", [
    ("(4,(3,2)):(2,(8,1))", "(4,3,2):(2,8,1)"),
    ("8:1", "8:1"),
    ("((2,2),(4,2)):((1,8),(2,16))", "(2,2,4,2):(1,8,2,16)"),
])
def test_flatten(text, expected):
    assert str(flatten_layout(parse_layout(text))) == expected


@pytest.mark.parametrize("text, expected", [
    ("(2,(1,6)):(1,(6,2))", "12:1"),
    ("((4,3),5):((15,1),3)", "(4,15):(15,1)"),
    ("1:7", "1:0"),
    ("(2,4):(4,1)", "(2,4):(4,1)"),
    ("(4,2):(f1,f4)", "8:f1"),
    ("(4,8):(e0,e1)", "(4,8):(e0,e1)"),
])
def test_coalesce(text, expected):
    assert str(coalesce(parse_layout(text))) == expected


@pytest.mark.parametrize("text, profile, expected", [
    ("(2,(1,6)):(1,(6,2))", (1, 1), "(2,6):(1,2)"),
    ("(4,(3,5)):(15,(1,3))", (1, 1), "(4,15):(15,1)"),
    ("((4,3),5):((15,1),3)", (1, 1), "((4,3),5):((15,1),3)"),
    ("((4,3),5):((15,1),3)", None, "(4,15):(15,1)"),
])
def test_coalesce_bymode(text, profile, expected):
    assert str(coalesce_bymode(parse_layout(text), profile)) == expected


def test_coalesce_bymode_profile_must_fit():
    with pytest.raises(StructureError):
        coalesce_bymode(Layout((2, 3), (1, 2)), (1, 1, 1))


@pytest.mark.parametrize("shape, expected", [
    ((4, 6), "(4,6):(1,4)"),
    (24, "24:1"),
    ((3, (4, 2)), "(3,(4,2)):(1,(3,12))"),
])
def test_identity_layout(shape, expected):
    assert str(identity_layout(shape)) == expected


@pytest.mark.parametrize("shape, expected", [
    ((4, 8), "(4,8):(e0,e1)"),
    (7, "7:e0"),
    ((4, (3, 2)), "(4,(3,2)):(e0,(e1,3*e1))"),
])
def test_coordinate_identity(shape, expected):
    assert str(coordinate_identity(shape)) == expected


def test_cosize():
    assert cosize(Layout((4, 8), (1, 4))) == 32
    assert cosize(Layout(1, Zero)) == 1
    assert cosize(Layout((4, 8), (20, 2))) == 75
    assert cosize(coordinate_identity((4, 8))) == (4, 8)
    with pytest.raises(UnsupportedOperation):
        cosize(Layout((2, 2), (Xor(1), Xor(2))))
    with pytest.raises(UnsupportedOperation):
        cosize(Layout(4, -1))


@given(layouts())
@settings(max_examples=300, deadline=None)
def test_coalesce_and_flatten_preserve_the_function(L):
    merged, flat = coalesce(L), flatten_layout(L)
    assert merged.size() == L.size()
    assert merged.depth <= 1
    for i in range(L.size()):
        assert merged(i) == L(i)
        assert flat(i) == L(i)
        assert L(idx2crd(i, L.shape)) == L(i)


@given(shapes())
@settings(max_examples=200, deadline=None)
def test_identities_map_coordinates_to_themselves(shape):
    ident = identity_layout(shape)
    for i in range(ident.size()):
        assert ident(i) == i
    coords = coordinate_identity(shape)
    modes = shape if isinstance(shape, tuple) else (shape,)
    for c in iter_coords(shape):
        natural = c if isinstance(shape, tuple) else (c,)
        expected = tuple(crd2idx(x, m) for x, m in zip(natural, modes))
        assert as_coordinate(coords(c), len(modes)) == expected


@given(layouts(), layouts())
@settings(max_examples=100, deadline=None)
def test_concat_round_trips_through_sublayout(A, B):
    joined = concat(A, B)
    assert sublayout(joined, 0) == A
    assert sublayout(joined, 1) == B
