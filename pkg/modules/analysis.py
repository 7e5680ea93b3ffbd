"""
Layout Algebra - Layout Analysis
Vectorization width, offset admissibility, linear forms and the completeness chain
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence

import numpy as np

from core.errors import AdmissibilityError, ContractError, LayoutError, ResourceError
from core.inttuple import flatten, idx2crd
from core.layout import Layout, coalesce, layout_eval
from core.stride import StrideKind, Xor, as_coordinate, axis_count, elem_value
from .algebra import compose, left_inverse, right_inverse
from .xor_basis import bit_matrix

logger = logging.getLogger(__name__)

# Single-warp tensor-memory access patterns: instruction coordinate -> TMEM offset
# (lane stride 16384, column stride 1).
TMEM_LANE = 16384
TMEM_INSTRUCTIONS: Dict[str, Layout] = {
    "tcgen05.32x32b.x1": Layout((1, 128), (1, TMEM_LANE)),
    "tcgen05.32x32b.x2": Layout((2, 128), (1, TMEM_LANE)),
    "tcgen05.16x256b.x1": Layout((8, (16, 4)), (1, (TMEM_LANE, 32 * TMEM_LANE))),
}
TMEM_DATA = Layout((128, 512), (TMEM_LANE, 1))

DEFAULT_LOCATE_BOUND = 65536


def _require_same_size(A: Layout, B: Layout):
    if A.size() != B.size():
        raise ContractError(f"layouts {A} and {B} differ in size")


def max_common_vector(A: Layout, B: Layout) -> int:
    """Number of leading elements that are contiguous in both A and B.

    Falls back to 1 when B cannot be composed with A's right inverse.
    """
    _require_same_size(A, B)
    try:
        joint = coalesce(compose(B, right_inverse(A)))
    except LayoutError as e:
        logger.warning(f"no common vector for {A} and {B}: {e}")
        return 1
    extent, stride = joint.modes()[0]
    width = extent if stride == 1 else 1
    logger.debug(f"max common vector of {A} and {B}: {width}")
    return width


def common_sublayout(A: Layout, B: Layout) -> Layout:
    """Coordinates of the first max_common_vector elements shared by A and B."""
    width = max_common_vector(A, B)
    return compose(right_inverse(A), Layout(width, 1))


def locate_offsets(A: Layout, T: Layout, bound: int = DEFAULT_LOCATE_BOUND) -> Layout:
    """Logical coordinates of A holding each offset T(i).

    Raises AdmissibilityError at the first i whose offset A does not hold
    exactly once. T is scanned element by element, so its size is capped by
    bound.
    """
    if T.size() > bound:
        raise ResourceError(
            f"instruction layout {T} has {T.size()} elements, above the locate bound {bound}")
    inverse = left_inverse(A)
    seen = set()
    for i in range(T.size()):
        offset = T(i)
        coord = layout_eval(inverse, offset)
        if not 0 <= coord < A.size() or A(coord) != offset:
            raise AdmissibilityError(
                f"offset {offset} of instruction element {i} is not in the image of {A}", i)
        if coord in seen:
            raise AdmissibilityError(
                f"offset {offset} of instruction element {i} maps to a repeated coordinate {coord}", i)
        seen.add(coord)
    result = compose(inverse, T)
    logger.debug(f"located {T} in {A}: {result}")
    return result


@dataclass
class LinearForm:
    """Matrix of a layout over its natural coordinates.

    Integer layouts give one row, coordinate layouts one row per axis and
    xor layouts a 0/1 matrix from domain bits to offset bits.
    """
    kind: str
    matrix: np.ndarray
    extents: tuple

    @property
    def binary(self) -> bool:
        return self.kind == StrideKind.XOR.value

    def apply(self, index: int) -> Any:
        """Offset of the integral coordinate index, computed from the matrix."""
        natural = np.array(flatten(idx2crd(index, self.extents)), dtype=np.int64)
        if self.binary:
            bits = np.array([(int(c) >> j) & 1
                             for c, s in zip(natural, self.extents) if s > 1
                             for j in range(s.bit_length() - 1)], dtype=np.int64)
            value = (self.matrix @ bits) % 2
            return int(sum(int(b) << r for r, b in enumerate(value)))
        result = self.matrix @ natural
        if self.kind == StrideKind.COORD.value:
            return tuple(int(x) for x in result)
        return int(result[0])


def linear_form(L: Layout) -> LinearForm:
    modes = L.modes()
    extents = tuple(s for s, _ in modes)
    kind = L.kind or StrideKind.INT
    if kind is StrideKind.XOR:
        matrix = np.array(bit_matrix(L), dtype=np.int64)
    elif kind is StrideKind.COORD:
        axes = axis_count(L.stride)
        columns = [as_coordinate(d, axes) for _, d in modes]
        matrix = np.array(columns, dtype=np.int64).T
    else:
        matrix = np.array([[elem_value(d) for _, d in modes]], dtype=np.int64)
    return LinearForm(kind=kind.value, matrix=matrix, extents=extents)


def function_to_chain(table: Sequence[int]) -> List[Layout]:
    """Layouts whose composition, outermost first, reproduces table on its domain.

    The rightmost layouts send i to 2**(i-1) through the extended domain and
    the leftmost layout looks up the value at that bit.
    """
    n = len(table)
    if n == 0:
        raise ContractError("function table is empty")
    if table[0] != 0:
        raise ContractError(f"function must map 0 to 0, got {table[0]}")
    if n == 1:
        return [Layout(1, 0)]
    values = tuple(table[1:])
    lookup = Layout(2, values[0]) if n == 2 else Layout((2,) * (n - 1), values)
    chain = [lookup]
    for k in range(3, n):
        chain.append(Layout((k, 1), (1, 2 * (k - 1))))
    return chain


def chain_eval(chain: Sequence[Layout], i: int) -> Any:
    """Apply the chain right to left; an empty chain is the identity."""
    value: Any = i
    for layout in reversed(chain):
        if isinstance(value, Xor):
            value = value.mask
        value = layout_eval(layout, value)
    return value


__all__ = [
    "TMEM_INSTRUCTIONS", "TMEM_DATA", "max_common_vector", "common_sublayout",
    "locate_offsets", "LinearForm", "linear_form", "function_to_chain", "chain_eval",
]
