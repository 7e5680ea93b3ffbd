"""
Layout Algebra - Binary Linear Algebra
F2 elimination over xor-stride layouts, used by the swizzle inverses and linear forms
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from core.errors import UnsupportedOperation
from core.inttuple import exclusive_prefix_product, flatten
from core.layout import Layout, coalesce, from_modes
from core.stride import elem_value, is_pow2, is_zero, xor

logger = logging.getLogger(__name__)


@dataclass
class XorColumns:
    """Binary expansion of a layout: one (value, domain) column per domain bit."""
    columns: List[Tuple[int, int]] = field(default_factory=list)
    tail: Optional[Tuple[int, int, int]] = None  # (extent, value bit, domain position)

    @property
    def value_bits(self) -> int:
        top = 0
        for value, _ in self.columns:
            top |= value
        return top.bit_length()


def expand_columns(L: Layout) -> XorColumns:
    """Split every power-of-two mode into single-bit columns.

    A mode with a non-power-of-two extent is accepted only as the topmost
    mode, with a single-bit stride above every other value bit.
    """
    shapes = flatten(L.shape)
    strides = flatten(L.stride)
    positions = exclusive_prefix_product(shapes)
    expanded = XorColumns()
    live = [i for i, s in enumerate(shapes) if s > 1]
    for i in live:
        s, d, pos = shapes[i], strides[i], positions[i]
        mask = 0 if is_zero(d) else elem_value(d)
        if is_pow2(s):
            for j in range(s.bit_length() - 1):
                if mask:
                    expanded.columns.append((mask << j, pos << j))
            continue
        if i != live[-1] or not is_pow2(pos):
            raise UnsupportedOperation(
                f"xor layout {L} has a non-power-of-two mode {s} below other modes")
        if mask and not is_pow2(mask):
            raise UnsupportedOperation(
                f"xor layout {L} has a non-power-of-two mode {s} with a multi-bit stride")
        if mask:
            expanded.tail = (s, mask.bit_length() - 1, pos)
    if expanded.tail and expanded.tail[1] < expanded.value_bits:
        raise UnsupportedOperation(
            f"xor layout {L} has a non-power-of-two mode overlapping lower bits")
    return expanded


class XorBasis:
    """Reduced row-echelon basis keyed by each row's lowest set bit."""

    def __init__(self, columns: List[Tuple[int, int]] = ()):
        self.rows: Dict[int, Tuple[int, int]] = {}
        for value, domain in columns:
            self.add(value, domain)

    def reduce(self, value: int, domain: int = 0) -> Tuple[int, int]:
        for pivot, (v, x) in self.rows.items():
            if value >> pivot & 1:
                value ^= v
                domain ^= x
        return value, domain

    def add(self, value: int, domain: int) -> bool:
        value, domain = self.reduce(value, domain)
        if value == 0:
            return False
        pivot = (value & -value).bit_length() - 1
        for p, (v, x) in list(self.rows.items()):
            if v >> pivot & 1:
                self.rows[p] = (v ^ value, x ^ domain)
        self.rows[pivot] = (value, domain)
        return True

    def solve(self, target: int) -> Optional[int]:
        """Domain combination reaching target, or None when target is outside the span."""
        remainder, domain = self.reduce(target)
        return domain if remainder == 0 else None

    def pseudo_inverse(self, bit: int) -> int:
        return self.rows[bit][1] if bit in self.rows else 0


def xor_right_inverse(L: Layout) -> Layout:
    expanded = expand_columns(L)
    space = XorBasis(expanded.columns)
    modes = []
    bit = 0
    while True:
        domain = space.solve(1 << bit)
        if domain is None:
            break
        modes.append((2, xor(domain)))
        bit += 1
    if expanded.tail and expanded.tail[1] == bit:
        extent, _, pos = expanded.tail
        modes.append((extent, xor(pos)))
    result = coalesce(from_modes(modes))
    logger.debug(f"xor right inverse {L} -> {result}")
    return result


def xor_left_inverse(L: Layout) -> Layout:
    expanded = expand_columns(L)
    space = XorBasis(expanded.columns)
    bits = expanded.value_bits
    modes = [(2, xor(space.pseudo_inverse(b))) for b in range(bits)]
    if expanded.tail:
        extent, top, pos = expanded.tail
        if top > bits:
            modes.append((1 << (top - bits), 0))
        modes.append((extent, xor(pos)))
    result = coalesce(from_modes(modes))
    logger.debug(f"xor left inverse {L} -> {result}")
    return result


def bit_matrix(L: Layout) -> List[List[int]]:
    """Rows are value bits, columns are domain bits."""
    masks = []
    for s, d in L.modes():
        if s == 1:
            continue
        if not is_pow2(s):
            raise UnsupportedOperation(
                f"linear form of {L} needs power-of-two extents for xor strides")
        mask = 0 if is_zero(d) else elem_value(d)
        masks.extend(mask << j for j in range(s.bit_length() - 1))
    rows = max(1, max((m.bit_length() for m in masks), default=0))
    return [[(m >> r) & 1 for m in masks] for r in range(rows)]


__all__ = ["XorBasis", "XorColumns", "expand_columns",
           "xor_right_inverse", "xor_left_inverse", "bit_matrix"]
