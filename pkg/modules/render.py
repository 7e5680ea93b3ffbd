"""
Layout Algebra - Rendering
Rank-1 layouts as a row and rank-2 layouts as a grid of offsets
"""

import logging
from typing import Any, List

from core.errors import ResourceError, StructureError
from core.layout import Layout
from core.stride import StrideKind, Xor, as_coordinate, axis_count

logger = logging.getLogger(__name__)


def _cell(value: Any, axes: int) -> str:
    if isinstance(value, Xor):
        return str(value.mask)
    if axes:
        return "(" + ",".join(str(x) for x in as_coordinate(value, axes)) + ")"
    return str(value)


def _aligned(rows: List[List[str]], separator: str) -> str:
    widths = [max(len(row[j]) for row in rows) for j in range(len(rows[0]))]
    return "\n".join(
        separator.join(cell.rjust(width) for cell, width in zip(row, widths))
        for row in rows)


def _check_cells(L: Layout, max_cells: int):
    if L.size() > max_cells:
        raise ResourceError(f"{L} has {L.size()} cells, above the render limit {max_cells}")


def _axes(L: Layout) -> int:
    return axis_count(L.stride) if L.kind is StrideKind.COORD else 0


def render_1d(L: Layout, separator: str = " ", max_cells: int = 4096) -> str:
    _check_cells(L, max_cells)
    axes = _axes(L)
    return _aligned([[_cell(L(i), axes) for i in range(L.size())]], separator)


def render_2d(L: Layout, separator: str = " ", max_cells: int = 4096) -> str:
    """Rows follow mode 0 and columns follow mode 1."""
    if L.rank != 2:
        raise StructureError(f"a grid needs a rank-2 layout, got rank {L.rank}: {L}")
    _check_cells(L, max_cells)
    axes = _axes(L)
    rows, cols = L[0].size(), L[1].size()
    grid = [[_cell(L(r, c), axes) for c in range(cols)] for r in range(rows)]
    return _aligned(grid, separator)


def render(L: Layout, separator: str = " ", max_cells: int = 4096) -> str:
    if L.rank == 1:
        return render_1d(L, separator, max_cells)
    if L.rank == 2:
        return render_2d(L, separator, max_cells)
    raise StructureError(f"only rank-1 and rank-2 layouts can be rendered, got rank {L.rank}")


__all__ = ["render", "render_1d", "render_2d"]
