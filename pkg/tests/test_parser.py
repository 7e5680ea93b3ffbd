import pytest
from hypothesis import given, settings

from core.errors import ParseError, StructureError
from core.layout import Layout, format_tiler
from core.parser import (
    format_coord, parse_coord, parse_inttuple, parse_layout, parse_stride, parse_tiler,
)
from core.stride import BasisSum, Xor, basis
from strategies import layouts


@pytest.mark.parametrize("text", [
    "((2,2),(4,2)):((1,8),(2,16))",
    "(4,8):(e0,e1)",
    "(4,(3,2)):(e0,(e1,3*e1))",
    "(4,4):(f1,f5)",
    "8:-1",
    "1:0",
])
def test_layout_text_round_trips(text):
    assert str(parse_layout(text)) == text


def test_whitespace_is_ignored():
    assert parse_layout(" ( 4 , 8 ) : ( 1 , 4 ) ") == Layout((4, 8), (1, 4))


def test_stride_forms():
    assert parse_stride("3e1") == basis(1, 3)
    assert parse_stride("2*e0+7*e1") == BasisSum(((0, 2), (1, 7)))
    assert parse_stride("(f16,0)") == (Xor(16), 0)
    assert parse_inttuple("(2,(3,5))") == (2, (3, 5))


def test_coordinates_with_placeholders():
    c = parse_coord("(2,((0,_),_))")
    assert c == (2, ((0, None), None))
    assert format_coord(c) == "(2,((0,_),_))"


def test_tilers():
    assert parse_tiler("[4:2,8:2]") == (Layout(4, 2), Layout(8, 2))
    assert parse_tiler("⟨3:1,(2,2):(1,4)⟩") == (Layout(3, 1), Layout((2, 2), (1, 4)))
    assert parse_tiler("(4,8)") == (4, 8)
    assert parse_tiler("3:4") == Layout(3, 4)
    assert format_tiler(parse_tiler("[4:2,8]")) == "[4:2,8]"


@pytest.mark.parametrize("text, offset", [
    ("(4,8):(1,)", 9),
    ("8:1 x", 4),
    ("(4,8", 4),
    ("⟨4:1,x⟩", 7),
])
def test_parse_errors_report_byte_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_tiler(text) if text.startswith("⟨") else parse_layout(text)
    assert info.value.offset == offset
    assert f"at byte {offset}" in str(info.value)


def test_incongruent_text_is_a_structure_error():
    with pytest.raises(StructureError):
        parse_layout("(4,8):(1,(4,4))")


def test_basis_needs_an_axis_after_star():
    with pytest.raises(ParseError):
        parse_stride("2*3")


@given(layouts())
@settings(max_examples=200, deadline=None)
def test_printed_layouts_parse_back(L):
    assert parse_layout(str(L)) == L
