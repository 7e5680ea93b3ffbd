"""
Layout Algebra - Tensors
Accessors composed with layouts, placeholder slicing, and the generic COPY and GEMM algorithms
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, List, MutableSequence, Optional, Tuple, Union

from core.errors import AccessError, ContractError, StructureError, UnsupportedOperation
from core.inttuple import is_int, is_tuple, size
from core.layout import Layout, Tiler, concat, layout_eval
from core.stride import StrideElem, StrideKind, Xor, Zero, as_coordinate, kind_of, sm_add
from . import algebra

logger = logging.getLogger(__name__)


class Accessor(ABC):
    """Something that can be offset by a stride element and dereferenced."""

    @abstractmethod
    def offset(self, d: StrideElem) -> "Accessor":
        pass

    @abstractmethod
    def deref(self) -> Any:
        pass

    def store(self, value: Any):
        raise UnsupportedOperation(f"{type(self).__name__} is read-only")


@dataclass(frozen=True)
class CountingAccessor(Accessor):
    """Dereferences to its own position; xor offsets combine by XOR."""
    base: int = 0

    def offset(self, d: StrideElem) -> "CountingAccessor":
        if isinstance(d, Xor):
            return CountingAccessor(self.base ^ d.mask)
        if not is_int(d):
            raise UnsupportedOperation(f"counting accessor cannot be offset by {d}")
        return CountingAccessor(self.base + d)

    def deref(self) -> int:
        return self.base

    def __str__(self) -> str:
        return f"{{{self.base}}}"


@dataclass(frozen=True)
class CoordAccessor(Accessor):
    """Dereferences to a coordinate; offsets add per axis."""
    base: Tuple[int, ...]

    def offset(self, d: StrideElem) -> "CoordAccessor":
        delta = as_coordinate(d, len(self.base))
        return CoordAccessor(tuple(b + x for b, x in zip(self.base, delta)))

    def deref(self) -> Tuple[int, ...]:
        return self.base

    def __str__(self) -> str:
        return "{" + str(self.base) + "}"


class BufferAccessor(Accessor):
    """Position in a shared mutable sequence; every access is bounds-checked.

    Integer offsets move origin and xor offsets accumulate into swizzle; the
    element read is storage[origin ^ swizzle].
    """

    def __init__(self, storage: MutableSequence, origin: int = 0, swizzle: int = 0):
        self.storage = storage
        self.origin = origin
        self.swizzle = swizzle

    def offset(self, d: StrideElem) -> "BufferAccessor":
        if kind_of(d) is StrideKind.COORD:
            raise UnsupportedOperation(f"buffer accessor cannot be offset by coordinate {d}")
        if isinstance(d, Xor):
            return BufferAccessor(self.storage, self.origin, self.swizzle ^ d.mask)
        return BufferAccessor(self.storage, self.origin + d, self.swizzle)

    @property
    def position(self) -> int:
        return self.origin ^ self.swizzle

    def _checked(self) -> int:
        position = self.position
        if not 0 <= position < len(self.storage):
            raise AccessError(
                f"buffer index {position} out of bounds for {len(self.storage)} elements")
        return position

    def deref(self) -> Any:
        return self.storage[self._checked()]

    def store(self, value: Any):
        self.storage[self._checked()] = value

    def __str__(self) -> str:
        return f"buffer[{self.position}]"


@dataclass(frozen=True)
class Tensor:
    """T(c) = deref(offset(accessor, layout(c)))."""
    accessor: Accessor
    layout: Layout

    def size(self) -> int:
        return self.layout.size()

    def __call__(self, *coord) -> Any:
        c = coord[0] if len(coord) == 1 else tuple(coord)
        if _has_placeholder(c):
            return self.slice(c)
        return self.accessor.offset(self.layout(c)).deref()

    def __getitem__(self, c) -> Any:
        return self(c)

    def __setitem__(self, c, value):
        self.accessor.offset(self.layout(c)).store(value)

    def slice(self, c: Any) -> "Tensor":
        """Fix the integer leaves of c; None leaves stay as modes of the result."""
        offset, sub = _partial(self.layout.shape, self.layout.stride, c)
        return Tensor(self.accessor.offset(offset), sub if sub is not None else Layout(1, Zero))

    def compose(self, tiler: Tiler) -> "Tensor":
        return Tensor(self.accessor, algebra.compose(self.layout, tiler))

    def __str__(self) -> str:
        return f"{self.accessor}\u2218{self.layout}"


def make_tensor(data: Union[int, MutableSequence, Tuple[int, ...]], layout: Layout) -> Tensor:
    """Counting tensor for an int, coordinate tensor for a tuple, buffer tensor otherwise."""
    if is_int(data):
        return Tensor(CountingAccessor(data), layout)
    if isinstance(data, tuple):
        return Tensor(CoordAccessor(data), layout)
    return Tensor(BufferAccessor(data), layout)


def _has_placeholder(c: Any) -> bool:
    if is_tuple(c):
        return any(_has_placeholder(x) for x in c)
    return c is None


def _partial(shape: Any, stride: Any, c: Any) -> Tuple[StrideElem, Optional[Layout]]:
    """Offset of the fixed leaves of c and the layout gathered at its placeholders."""
    if c is None:
        return Zero, Layout(shape, stride)
    if is_tuple(c):
        if not is_tuple(shape) or len(c) != len(shape):
            raise StructureError(f"slice {c} is not weakly congruent to shape {shape}")
        total: StrideElem = Zero
        kept: List[Layout] = []
        for ci, si, di in zip(c, shape, stride):
            offset, sub = _partial(si, di, ci)
            total = sm_add(total, offset)
            if sub is not None:
                kept.append(sub)
        if not kept:
            return total, None
        return total, kept[0] if len(kept) == 1 else concat(*kept)
    if not is_int(c) or not 0 <= c < size(shape):
        raise AccessError(f"slice index {c} out of bounds for mode of size {size(shape)}")
    return layout_eval(Layout(shape, stride), c), None


def _mode_size(T: Tensor, i: int) -> int:
    return T.layout[i].size() if is_tuple(T.layout.shape) else (T.size() if i == 0 else 1)


def copy(src: Tensor, dst: Tensor):
    """dst(i) = src(i) for every integral coordinate i."""
    if src.size() != dst.size():
        raise ContractError(f"copy needs equal sizes, got {src.size()} and {dst.size()}")
    for i in range(src.size()):
        dst[i] = src(i)
    logger.debug(f"copied {src.size()} elements from {src.layout} to {dst.layout}")


def gemm(A: Tensor, B: Tensor, C: Tensor):
    """C(m,n) += A(m,k) * B(n,k) over one integral coordinate per mode."""
    M, N, K = _mode_size(C, 0), _mode_size(C, 1), _mode_size(A, 1)
    if _mode_size(A, 0) != M:
        raise ContractError(f"gemm: size<0>(A)={_mode_size(A, 0)} differs from size<0>(C)={M}")
    if _mode_size(B, 0) != N:
        raise ContractError(f"gemm: size<0>(B)={_mode_size(B, 0)} differs from size<1>(C)={N}")
    if _mode_size(B, 1) != K:
        raise ContractError(f"gemm: size<1>(A)={K} differs from size<1>(B)={_mode_size(B, 1)}")
    for m in range(M):
        for n in range(N):
            acc = C(m, n)
            for k in range(K):
                acc = acc + A(m, k) * B(n, k)
            C[m, n] = acc


def batched_gemm(A: Tensor, B: Tensor, C: Tensor):
    """gemm over the trailing batch mode of rank-3 (M,K,L), (N,K,L), (M,N,L) tensors."""
    for T, name in ((A, "A"), (B, "B"), (C, "C")):
        if T.layout.rank != 3:
            raise ContractError(f"batched gemm needs rank-3 tensors, {name} has rank {T.layout.rank}")
    batches = _mode_size(C, 2)
    if _mode_size(A, 2) != batches or _mode_size(B, 2) != batches:
        raise ContractError("batched gemm: batch modes differ in size")
    for batch in range(batches):
        gemm(A.slice((None, None, batch)), B.slice((None, None, batch)),
             C.slice((None, None, batch)))


def zipped_divide(T: Tensor, tiler: Tiler) -> Tensor:
    """(Tile, Grid) view of T."""
    return Tensor(T.accessor, algebra.zipped_divide(T.layout, tiler))


def local_tile(T: Tensor, tiler: Tiler, block: Any) -> Tensor:
    """The tile of T at grid coordinate block."""
    return zipped_divide(T, tiler).slice((None, block))


def partition(T: Tensor, tv_layout: Layout, thread: int) -> Tensor:
    """Values owned by one thread under a (thread, value) layout."""
    return T.compose(tv_layout).slice((thread, None))


__all__ = [
    "Accessor", "CountingAccessor", "CoordAccessor", "BufferAccessor", "Tensor",
    "make_tensor", "copy", "gemm", "batched_gemm", "zipped_divide", "local_tile",
    "partition",
]
