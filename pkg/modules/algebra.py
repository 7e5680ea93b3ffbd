"""
Layout Algebra - Operators
Composition, complement, inverses, division and products over layouts
"""

import logging
import operator
from itertools import accumulate
from typing import Any, Dict, List, Sequence, Tuple, Union

from core.errors import (
    KindError, LayoutError, NonDistributive, NotComplementable, NotLeftInvertible,
    ShapeIndivisible, StrideIndivisible, StructureError, UnsupportedOperation,
)
from core.inttuple import exclusive_prefix_product, flatten, is_int, is_tuple, unflatten
from core.layout import (
    Layout, Mode, Tiler, coalesce, coalesce_modes, concat, cosize, from_modes,
    sublayout, tile_layout,
)
from core.stride import (
    BasisSum, ScaledBasis, StrideKind, Zero, axis_count, basis, is_zero,
    sm_compose_scale,
)
from .xor_basis import xor_left_inverse, xor_right_inverse

logger = logging.getLogger(__name__)


def _require_nonnegative(L: Layout, operation: str):
    for _, d in L.modes():
        if is_int(d) and d < 0:
            raise UnsupportedOperation(f"{operation} requires non-negative strides: {L}")
        if isinstance(d, ScaledBasis) and d.scale < 0:
            raise UnsupportedOperation(f"{operation} requires non-negative strides: {L}")


def _modes(L: Layout) -> List[Layout]:
    """Top-level modes of L as layouts; a leaf counts as a single mode."""
    return [sublayout(L, i) for i in range(L.rank)] if is_tuple(L.shape) else [L]


def _axis_modes(L: Layout) -> List[List[Tuple[int, int, int]]]:
    """Per codomain axis: (stride scale, extent, domain position) of each live mode."""
    axes = axis_count(L.stride)
    positions = exclusive_prefix_product(flatten(L.shape))
    grouped: List[List[Tuple[int, int, int]]] = [[] for _ in range(axes)]
    for (s, d), p in zip(L.modes(), positions):
        if s == 1 or is_zero(d):
            continue
        if isinstance(d, BasisSum):
            raise UnsupportedOperation(f"stride {d} spans several axes in {L}")
        if d.scale < 0:
            raise UnsupportedOperation(f"negative coordinate stride {d} in {L}")
        grouped[d.axis].append((d.scale, s, p))
    return grouped


# ---------------------------------------------------------------- composition

def _compose_leaf(modes: Sequence[Mode], s: int, d: int, span: int = 0) -> Layout:
    """A composed with the single mode s:d, where A is given by coalesced modes.

    A is truncated to the modes reached by span, the largest offset of the
    whole right-hand layout, so sibling leaves are checked against the same
    modes of A.
    """
    if s == 1:
        return Layout(1, Zero)
    if d == 0:
        return Layout(s, Zero)
    if d < 0:
        raise UnsupportedOperation(f"composition with negative stride {d}")
    limit = max((s - 1) * d, span)
    prefix = list(accumulate((m for m, _ in modes), operator.mul, initial=1))
    kept = [mode for mode, p in zip(modes, prefix) if p <= limit]

    result: List[Mode] = []
    rest_shape, rest_stride = s, d
    for curr_shape, curr_stride in kept[:-1]:
        if curr_shape % rest_stride and rest_stride % curr_shape:
            raise StrideIndivisible(curr_shape, rest_stride)
        new_shape = min(max(1, curr_shape // rest_stride), rest_shape)
        if new_shape < rest_shape and rest_shape % new_shape:
            raise ShapeIndivisible(new_shape, rest_shape)
        if new_shape != 1:
            result.append((new_shape, sm_compose_scale(curr_stride, rest_stride)))
        rest_shape //= new_shape
        rest_stride = -(-rest_stride // curr_shape)
        if rest_shape == 1:
            break
    if rest_shape != 1 or not result:
        result.append((rest_shape, sm_compose_scale(kept[-1][1], rest_stride)))
    return from_modes(result)


def _check_segregated(leaves: Sequence[Tuple[int, int]], A: Layout):
    """Leaf images of B must occupy disjoint stride bands of A."""
    live = [(s, d) for s, d in leaves if s > 1 and d != 0]
    for i, (si, di) in enumerate(live):
        for sj, dj in live[i + 1:]:
            if si * di > dj and sj * dj > di:
                logger.warning(f"conservatively rejecting interleaved modes {si}:{di} and {sj}:{dj}")
                raise NonDistributive(
                    f"modes {si}:{di} and {sj}:{dj} interleave; composition with {A} "
                    f"does not distribute over them")


def _span(leaves: Sequence[Tuple[int, int]]) -> int:
    return sum((s - 1) * d for s, d in leaves if d > 0)


def _reshape(B: Layout, parts: Sequence[Layout]) -> Layout:
    """Replace each leaf of B with the matching composed part."""
    if not is_tuple(B.shape):
        return parts[0]
    shape = unflatten(tuple(p.shape for p in parts), B.shape)
    stride = unflatten(tuple(p.stride for p in parts), B.shape)
    return Layout(shape, stride)


def _prepared(A: Layout) -> List[Mode]:
    return coalesce_modes(A.modes(), keep_tail=True) or [(1, Zero)]


def compose(A: Layout, B: Union[Layout, Tiler]) -> Layout:
    """R = A o B, with R(c) = A(B(c)) and R congruent to B."""
    if is_tuple(B):
        return compose_bymode(A, B)
    B = tile_layout(B)
    kind = B.kind
    if kind is StrideKind.XOR:
        raise KindError(f"cannot compose with xor-stride layout {B} on the right")
    _require_nonnegative(A, "composition")
    _require_nonnegative(B, "composition")

    if kind is StrideKind.COORD:
        parts = _compose_coordinate(A, B)
    else:
        modes = _prepared(A)
        leaves = B.modes()
        if len(modes) > 1:
            _check_segregated(leaves, A)
        span = _span(leaves)
        parts = [_compose_leaf(modes, s, d, span) for s, d in leaves]
    result = _reshape(B, parts)
    logger.debug(f"compose {A} o {B} -> {result}")
    return result


def _compose_coordinate(A: Layout, B: Layout) -> List[Layout]:
    axes = _modes(A)
    prepared = {}
    by_axis = {}
    for s, d in B.modes():
        if is_zero(d):
            continue
        if isinstance(d, BasisSum):
            raise KindError(f"stride {d} spans several axes; compose per axis instead")
        if d.axis >= len(axes):
            raise StructureError(f"stride {d} addresses axis {d.axis} of rank-{len(axes)} {A}")
        by_axis.setdefault(d.axis, []).append((s, d.scale))
    spans = {}
    for axis, leaves in by_axis.items():
        prepared[axis] = _prepared(axes[axis])
        if len(prepared[axis]) > 1:
            _check_segregated(leaves, axes[axis])
        spans[axis] = _span(leaves)
    parts = []
    for s, d in B.modes():
        if is_zero(d):
            parts.append(Layout(s, Zero))
        else:
            parts.append(_compose_leaf(prepared[d.axis], s, d.scale, spans[d.axis]))
    return parts


def compose_bymode(A: Layout, tiler: Tiler) -> Layout:
    """Compose mode i of A with tiler item i; remaining modes of A are untouched."""
    if not is_tuple(tiler):
        return compose(A, tiler)
    if not tiler:
        return A
    modes = _modes(A)
    if len(tiler) > len(modes):
        raise StructureError(f"tiler of rank {len(tiler)} exceeds rank {len(modes)} of {A}")
    if not is_tuple(A.shape) and len(tiler) == 1:
        return A if tiler[0] is None else compose_bymode(A, tiler[0])
    result = []
    for i, mode in enumerate(modes):
        if i >= len(tiler) or tiler[i] is None:
            result.append(mode)
            continue
        try:
            result.append(compose_bymode(mode, tiler[i]))
        except LayoutError as e:
            raise e.with_mode(i) from e
    return concat(*result) if result else A


# ---------------------------------------------------------------- complement

def _complement_modes(strided: Sequence[Tuple[int, int]], M: int, relaxed: bool) -> List[Mode]:
    """Complement of (stride, extent) pairs against a codomain of size M."""
    if M < 1:
        raise StructureError(f"complement codomain size must be positive, got {M}")
    result: List[Mode] = []
    current = 1
    for d, s in sorted(strided):
        if d < current:
            raise NotComplementable(
                f"mode {s}:{d} overlaps the image of lower modes ending at {current}")
        q, r = divmod(d, current)
        if r and q >= 2:
            if not relaxed:
                raise NotComplementable(
                    f"stride {d} is not a multiple of {current}; no exact complement exists")
            logger.warning(f"relaxed complement floors gap {d}/{current} to {q}")
        if q > 1:
            result.append((q, current))
        current = s * d
    result.append((-(-M // current), current))
    return result


def complement(L: Layout, M: Any = None, relaxed: bool = False) -> Layout:
    """Layout whose image fills the gaps of L's image up to M.

    relaxed floors non-dividing gap ratios instead of failing.
    """
    kind = L.kind
    if kind is StrideKind.XOR:
        raise UnsupportedOperation(f"complement is not defined for xor strides: {L}")
    if kind is StrideKind.COORD:
        return _complement_coordinate(L, M, relaxed)
    _require_nonnegative(L, "complement")
    if M is None:
        M = cosize(L)
    if not is_int(M):
        raise StructureError(f"integer layout {L} needs an integer codomain size, got {M}")
    strided = [(d, s) for s, d in L.modes() if s != 1 and d != 0]
    result = from_modes(_complement_modes(strided, M, relaxed))
    logger.debug(f"complement {L} in {M} -> {result}")
    return result


def _complement_coordinate(L: Layout, M: Any, relaxed: bool) -> Layout:
    grouped = _axis_modes(L)
    if M is None:
        M = cosize(L)
    sizes = M if is_tuple(M) else (M,) * len(grouped)
    if len(sizes) != len(grouped):
        raise StructureError(f"codomain {M} does not match {len(grouped)} axes of {L}")
    parts = []
    for axis, entries in enumerate(grouped):
        modes = _complement_modes([(d, s) for d, s, _ in entries], sizes[axis], relaxed)
        parts.append(from_modes([(s, basis(axis, d)) for s, d in modes]))
    result = concat(*parts) if len(parts) > 1 else parts[0]
    logger.debug(f"complement {L} in {M} -> {result}")
    return result


# ---------------------------------------------------------------- inverses

def _right_chain(entries: Sequence[Tuple[int, int, int]]) -> Layout:
    """Longest chain of modes whose strides are the running products 1, s0, s0*s1, ...

    Repeated strides (non-injective layouts) branch; the chain reaching the
    largest product wins, the first in (stride, extent, position) order on ties.
    """
    by_stride: Dict[int, List[Mode]] = {}
    for d, s, p in sorted(entries):
        by_stride.setdefault(d, []).append((s, p))

    def longest(current: int) -> Tuple[int, List[Mode]]:
        best_reach, best = current, []
        for s, p in by_stride.get(current, []):
            reach, rest = longest(s * current)
            if reach > best_reach:
                best_reach, best = reach, [(s, p)] + rest
        return best_reach, best

    return coalesce(from_modes(longest(1)[1]))


def _left_chain(entries: Sequence[Tuple[int, int, int]], L: Layout) -> Layout:
    ordered = sorted(entries)
    if not ordered:
        return Layout(1, Zero)
    modes = []
    if ordered[0][0] > 1:
        modes.append((ordered[0][0], Zero))
    for (d, s, p), (d_next, _, _) in zip(ordered, ordered[1:]):
        if d_next % d or d_next < s * d:
            raise NotLeftInvertible(
                f"{L} is not injective with a divisible stride chain at "
                f"strides {d} and {d_next}")
        modes.append((d_next // d, p))
    _, s_last, p_last = ordered[-1]
    modes.append((s_last, p_last))
    return coalesce(from_modes(modes))


def _integer_entries(L: Layout) -> List[Tuple[int, int, int]]:
    _require_nonnegative(L, "inversion")
    positions = exclusive_prefix_product(flatten(L.shape))
    return [(d, s, p) for (s, d), p in zip(L.modes(), positions) if s > 1 and d != 0]


def _per_axis(L: Layout, build) -> Layout:
    parts = [build(entries) for entries in _axis_modes(L)]
    return concat(*parts) if len(parts) > 1 else parts[0]


def right_inverse(L: Layout) -> Layout:
    """Largest compact R with L(R(i)) = i on its domain."""
    kind = L.kind
    if kind is StrideKind.XOR:
        result = xor_right_inverse(L)
    elif kind is StrideKind.COORD:
        result = _per_axis(L, _right_chain)
    else:
        result = _right_chain(_integer_entries(L))
    logger.debug(f"right inverse {L} -> {result}")
    return result


def left_inverse(L: Layout) -> Layout:
    """L' with L'(L(k)) = k for every k below size(L)."""
    kind = L.kind
    if kind is StrideKind.XOR:
        result = xor_left_inverse(L)
    elif kind is StrideKind.COORD:
        result = _per_axis(L, lambda entries: _left_chain(entries, L))
    else:
        result = _left_chain(_integer_entries(L), L)
    logger.debug(f"left inverse {L} -> {result}")
    return result


# ---------------------------------------------------------------- division

def _split(A: Layout, tiler: Tiler, relaxed: bool) -> Tuple[List[Layout], List[Layout]]:
    """Per-mode (tile, rest) pairs for a tuple tiler; untouched modes go to the rests."""
    modes = _modes(A)
    if len(tiler) > len(modes):
        raise StructureError(f"tiler of rank {len(tiler)} exceeds rank {len(modes)} of {A}")
    tiles, rests = [], []
    for i, mode in enumerate(modes):
        if i >= len(tiler):
            rests.append(mode)
            continue
        try:
            divided = logical_divide(mode, tiler[i], relaxed)
        except LayoutError as e:
            raise e.with_mode(i) from e
        tiles.append(divided[0])
        rests.append(divided[1])
    return tiles, rests


def logical_divide(A: Layout, B: Tiler, relaxed: bool = False) -> Layout:
    """(tile, rest): A composed with B and with B's complement in size(A)."""
    if is_tuple(B):
        modes = _modes(A)
        if len(B) > len(modes):
            raise StructureError(f"tiler of rank {len(B)} exceeds rank {len(modes)} of {A}")
        if not is_tuple(A.shape):
            return logical_divide(A, B[0], relaxed)
        parts = []
        for i, mode in enumerate(modes):
            if i >= len(B):
                parts.append(mode)
                continue
            try:
                parts.append(logical_divide(mode, B[i], relaxed))
            except LayoutError as e:
                raise e.with_mode(i) from e
        return concat(*parts)
    B = tile_layout(B)
    rest = coalesce(complement(B, A.size(), relaxed))
    result = concat(compose(A, B), compose(A, rest))
    logger.debug(f"logical divide {A} / {B} -> {result}")
    return result


def _gathered(parts: List[Layout]) -> Layout:
    return parts[0] if len(parts) == 1 else concat(*parts)


def zipped_divide(A: Layout, tiler: Tiler, relaxed: bool = False) -> Layout:
    """((tiles...), (rests...)): the tile in mode 0, tile indices in mode 1."""
    if not is_tuple(tiler):
        return logical_divide(A, tiler, relaxed)
    tiles, rests = _split(A, tiler, relaxed)
    return concat(_gathered(tiles), _gathered(rests))


def tiled_divide(A: Layout, tiler: Tiler, relaxed: bool = False) -> Layout:
    """((tiles...), rest0, rest1, ...)."""
    if not is_tuple(tiler):
        divided = logical_divide(A, tiler, relaxed)
        return concat(divided[0], *_modes(divided[1]))
    tiles, rests = _split(A, tiler, relaxed)
    return concat(_gathered(tiles), *rests)


def flat_divide(A: Layout, tiler: Tiler, relaxed: bool = False) -> Layout:
    """(tile0, tile1, ..., rest0, rest1, ...)."""
    if not is_tuple(tiler):
        divided = logical_divide(A, tiler, relaxed)
        return concat(divided[0], *_modes(divided[1]))
    tiles, rests = _split(A, tiler, relaxed)
    return concat(*tiles, *rests)


# ---------------------------------------------------------------- products

def logical_product(A: Layout, B: Layout, relaxed: bool = False) -> Layout:
    """(A, A* o B): B enumerates repetitions of A inside A's complement."""
    B = tile_layout(B)
    rest = complement(A, A.size() * cosize(B), relaxed)
    result = concat(A, compose(rest, B))
    logger.debug(f"logical product {A} x {B} -> {result}")
    return result


def _paired(A: Layout, B: Layout, relaxed: bool, tile_first: bool) -> Layout:
    B = tile_layout(B)
    if A.rank != B.rank:
        raise StructureError(
            f"products by mode need equal ranks, got {A.rank} and {B.rank}")
    repeated = logical_product(A, B, relaxed)[1]
    if not is_tuple(A.shape):
        return concat(A, repeated) if tile_first else concat(repeated, A)
    modes = []
    for a, c in zip(_modes(A), _modes(repeated)):
        modes.append(concat(a, c) if tile_first else concat(c, a))
    return concat(*modes)


def blocked_product(A: Layout, B: Layout, relaxed: bool = False) -> Layout:
    """Mode i is (A_i, C_i): tiles of A laid out contiguously."""
    return _paired(A, B, relaxed, tile_first=True)


def raked_product(A: Layout, B: Layout, relaxed: bool = False) -> Layout:
    """Mode i is (C_i, A_i): tiles of A interleaved."""
    return _paired(A, B, relaxed, tile_first=False)


__all__ = [
    "compose", "compose_bymode", "complement", "right_inverse", "left_inverse",
    "logical_divide", "zipped_divide", "tiled_divide", "flat_divide",
    "logical_product", "blocked_product", "raked_product",
]
