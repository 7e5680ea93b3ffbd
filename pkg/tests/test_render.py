import pytest

from core.errors import ResourceError, StructureError
from core.layout import Layout, coordinate_identity
from core.parser import parse_layout
from modules import algebra
from modules.render import render, render_1d, render_2d


def cells(text: str):
    return [row.split() for row in text.splitlines()]


def test_column_major_grid():
    grid = cells(render(parse_layout("(4,8):(1,4)")))
    assert len(grid) == 4
    assert [row[0] for row in grid] == ["0", "1", "2", "3"]
    assert grid[0] == [str(4 * c) for c in range(8)]


def test_columns_are_right_aligned():
    lines = render(parse_layout("(2,3):(1,9)")).splitlines()
    assert lines == ["0  9 18", "1 10 19"]


def test_coordinate_cells():
    grid = cells(render(coordinate_identity((4, 8))))
    assert grid[0][0] == "(0,0)"
    assert grid[1][2] == "(1,2)"
    assert grid[3][7] == "(3,7)"


BLOCKED_GRID = """
 0  1  2  3 24 25 26 27 48 49 50 51 72 73 74 75  96  97  98  99
 4  5  6  7 28 29 30 31 52 53 54 55 76 77 78 79 100 101 102 103
 8  9 10 11 32 33 34 35 56 57 58 59 80 81 82 83 104 105 106 107
12 13 14 15 36 37 38 39 60 61 62 63 84 85 86 87 108 109 110 111
16 17 18 19 40 41 42 43 64 65 66 67 88 89 90 91 112 113 114 115
20 21 22 23 44 45 46 47 68 69 70 71 92 93 94 95 116 117 118 119
"""

RAKED_GRID = """
 0 24 48 72  96  1 25 49 73  97  2 26 50 74  98  3 27 51 75  99
12 36 60 84 108 13 37 61 85 109 14 38 62 86 110 15 39 63 87 111
 4 28 52 76 100  5 29 53 77 101  6 30 54 78 102  7 31 55 79 103
16 40 64 88 112 17 41 65 89 113 18 42 66 90 114 19 43 67 91 115
 8 32 56 80 104  9 33 57 81 105 10 34 58 82 106 11 35 59 83 107
20 44 68 92 116 21 45 69 93 117 22 46 70 94 118 23 47 71 95 119
"""


@pytest.mark.parametrize("operation, expected", [
    ("blocked_product", BLOCKED_GRID),
    ("raked_product", RAKED_GRID),
])
def test_product_grids(operation, expected):
    R = getattr(algebra, operation)(parse_layout("(3,4):(4,1)"), parse_layout("(2,5):(1,2)"))
    assert cells(render(R)) == cells(expected.strip())


def test_rows():
    assert render(Layout(4, 2)) == "0 2 4 6"
    assert render_1d(Layout(4, 2), ",") == "0,2,4,6"
    assert render(parse_layout("4:f1")) == "0 1 2 3"


def test_rank_errors():
    with pytest.raises(StructureError):
        render(parse_layout("(2,2,2):(1,2,4)"))
    with pytest.raises(StructureError):
        render_2d(Layout(4, 1))


def test_cell_limit():
    with pytest.raises(ResourceError):
        render(parse_layout("(4,8):(1,4)"), max_cells=16)
