"""
Layout Algebra - Layouts
The shape:stride function object, its evaluation, structural operators and coalesce
"""

import logging
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Tuple, Union

from .errors import PathError, SemimoduleError, StructureError, UnsupportedOperation
from .inttuple import (
    IntTuple, Shape, congruent, depth, exclusive_prefix_product, flatten,
    format_tuple, idx2crd, is_int, is_tuple, rank, size, unflatten, validate,
    validate_shape,
)
from .stride import (
    StrideElem, StrideKind, Xor, Zero, axis_count, axis_scale, basis, is_pow2,
    is_stride_elem, sm_add, sm_scale, stride_kind,
)

logger = logging.getLogger(__name__)

Mode = Tuple[int, StrideElem]


@dataclass(frozen=True)
class Layout:
    """A shape paired with a congruent stride."""
    shape: Shape
    stride: Any

    def __post_init__(self):
        validate_shape(self.shape)
        validate(self.stride, leaf=is_stride_elem, what="Stride")
        if not congruent(self.shape, self.stride):
            raise StructureError(
                f"shape {format_tuple(self.shape)} and stride "
                f"{format_tuple(self.stride)} are not congruent")
        stride_kind(self.stride)

    @property
    def rank(self) -> int:
        return rank(self.shape)

    @property
    def depth(self) -> int:
        return depth(self.shape)

    @property
    def kind(self) -> Optional[StrideKind]:
        return stride_kind(self.stride)

    def size(self) -> int:
        return size(self.shape)

    def cosize(self):
        return cosize(self)

    def modes(self) -> List[Mode]:
        """Flattened (extent, stride) pairs in colex order."""
        return list(zip(flatten(self.shape), flatten(self.stride)))

    def __call__(self, *coord) -> StrideElem:
        return layout_eval(self, coord[0] if len(coord) == 1 else tuple(coord))

    def __getitem__(self, path) -> "Layout":
        return sublayout(self, path)

    def __str__(self) -> str:
        return format_layout(self)


Tile = Union[Layout, int]
Tiler = Union[Tile, Tuple[Any, ...]]


def make_layout(shape: Shape, stride: Any = None) -> Layout:
    """Validated layout; a missing stride means compact colex."""
    if stride is None:
        return identity_layout(shape)
    return Layout(shape, stride)


def from_modes(modes: Sequence[Mode]) -> Layout:
    """Depth-1 layout from (extent, stride) pairs; a single pair gives a leaf."""
    if not modes:
        return Layout(1, Zero)
    if len(modes) == 1:
        return Layout(modes[0][0], modes[0][1])
    return Layout(tuple(s for s, _ in modes), tuple(d for _, d in modes))


def layout_eval(L: Layout, c: IntTuple) -> StrideElem:
    """Offset of an admissible coordinate; integral parts expand through idx2crd."""
    return _eval(L.shape, L.stride, c)


def _eval(shape: Shape, stride: Any, c: IntTuple) -> StrideElem:
    if is_tuple(c):
        if not is_tuple(shape) or len(c) != len(shape):
            raise StructureError(
                f"coordinate {format_tuple(c)} is not admissible for shape {format_tuple(shape)}")
        total: StrideElem = Zero
        for ci, si, di in zip(c, shape, stride):
            total = sm_add(total, _eval(si, di, ci))
        return total
    if is_tuple(shape):
        return _eval(shape, stride, idx2crd(c, shape))
    return sm_scale(c, stride)


def concat(*parts: Layout) -> Layout:
    """Concatenation: mode i of the result is parts[i]."""
    if len(parts) == 1 and isinstance(parts[0], (list, tuple)):
        parts = tuple(parts[0])
    if not parts:
        raise StructureError("concatenation needs at least one layout")
    try:
        return Layout(tuple(p.shape for p in parts), tuple(p.stride for p in parts))
    except SemimoduleError as e:
        raise SemimoduleError(f"layouts cannot be concatenated: {e}") from e


def sublayout(L: Layout, path: Union[int, Sequence[int]]) -> Layout:
    """Mode at a (possibly nested) index path."""
    steps = (path,) if is_int(path) else tuple(path)
    shape, stride = L.shape, L.stride
    for step in steps:
        if not is_tuple(shape):
            if step == 0:
                continue
            raise PathError(f"mode path {steps} leaves the shape {format_tuple(L.shape)}")
        if not 0 <= step < len(shape):
            raise PathError(f"mode {step} out of range for rank {len(shape)}")
        shape, stride = shape[step], stride[step]
    return Layout(shape, stride)


def flatten_layout(L: Layout) -> Layout:
    if not is_tuple(L.shape):
        return L
    return Layout(flatten(L.shape), flatten(L.stride))


def scaled(s: int, d: StrideElem) -> Optional[StrideElem]:
    """Stride that continues a mode (s, d), or None when no such stride exists."""
    if isinstance(d, Xor) and not is_pow2(s):
        return None
    return sm_scale(s, d)


def coalesce_modes(modes: Sequence[Mode], keep_tail: bool = False) -> List[Mode]:
    """Left-to-right merge of adjacent modes.

    With keep_tail, a trailing size-1 mode that cannot merge is kept, so
    evaluation past the size still follows its stride.
    """
    result: List[Mode] = []
    for s, d in modes:
        if s == 1:
            continue
        if result and scaled(*result[-1]) == d:
            s0, d0 = result[-1]
            result[-1] = (s0 * s, d0)
        else:
            result.append((s, d))
    if keep_tail and modes and modes[-1][0] == 1:
        tail = modes[-1][1]
        extends = result and scaled(*result[-1]) == tail
        if not extends and not (not result and tail == Zero):
            result.append((1, tail))
    return result


def coalesce(L: Layout) -> Layout:
    """Minimal-rank depth-1 layout with the same integral-coordinate function."""
    result = from_modes(coalesce_modes(L.modes()))
    logger.debug(f"coalesce {L} -> {result}")
    return result


def coalesce_bymode(L: Layout, profile: Any = None) -> Layout:
    """Coalesce each mode selected by profile independently."""
    if profile is None or not is_tuple(profile):
        return coalesce(L)
    if not is_tuple(L.shape) or len(profile) > len(L.shape):
        raise StructureError(
            f"profile of rank {len(profile)} does not fit layout {L}")
    modes = []
    for i in range(len(L.shape)):
        sub = sublayout(L, i)
        modes.append(coalesce_bymode(sub, profile[i]) if i < len(profile) else sub)
    return concat(*modes)


def identity_layout(s: Shape) -> Layout:
    """Compact colex layout with L(i) = i."""
    validate_shape(s)
    prefix = exclusive_prefix_product(flatten(s))
    return Layout(s, unflatten(prefix, s))


def coordinate_identity(s: Shape) -> Layout:
    """Coordinate layout mapping each natural coordinate to itself."""
    validate_shape(s)
    modes = s if is_tuple(s) else (s,)
    strides = []
    for axis, mode in enumerate(modes):
        prefix = exclusive_prefix_product(flatten(mode))
        strides.append(unflatten(tuple(basis(axis, p) for p in prefix), mode))
    return Layout(s, tuple(strides) if is_tuple(s) else strides[0])


def cosize(L: Layout):
    """One plus the largest offset; per axis for coordinate layouts."""
    kind = L.kind
    if kind is StrideKind.XOR:
        raise UnsupportedOperation("cosize is not defined for xor strides")
    if kind is StrideKind.COORD:
        axes = axis_count(L.stride)
        return tuple(
            1 + sum((s - 1) * axis_scale(d, a) for s, d in L.modes())
            for a in range(axes))
    modes = L.modes()
    if any(d < 0 for _, d in modes):
        raise UnsupportedOperation(f"cosize requires non-negative strides: {L}")
    return 1 + sum((s - 1) * d for s, d in modes)


def tile_layout(t: Tile) -> Layout:
    """A tiler leaf as a layout; an integer n means n:1."""
    if isinstance(t, Layout):
        return t
    if is_int(t):
        return Layout(t, 1)
    raise StructureError(f"invalid tile {t!r}")


def format_layout(L: Layout) -> str:
    return f"{format_tuple(L.shape)}:{format_tuple(L.stride)}"


def format_tiler(t: Tiler) -> str:
    if isinstance(t, tuple):
        return "[" + ",".join(format_tiler(item) for item in t) + "]"
    return str(t)
