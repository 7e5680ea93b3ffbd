"""
Layout Algebra - Integer-Semimodule Stride Elements
Plain integers, scaled coordinate basis elements and binary (XOR) elements
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Tuple, Union

from .errors import SemimoduleError, StructureError, UnsupportedOperation
from .inttuple import checked, flatten, is_int, is_tuple

logger = logging.getLogger(__name__)


class StrideKind(Enum):
    """Semimodule a stride element lives in."""
    INT = "int"
    COORD = "coord"
    XOR = "xor"


@dataclass(frozen=True)
class ScaledBasis:
    """scale * e_axis, where axis indexes a top-level codomain mode."""
    scale: int
    axis: int

    def __post_init__(self):
        if self.axis < 0:
            raise StructureError(f"basis axis must be non-negative, got {self.axis}")

    def __str__(self) -> str:
        return f"e{self.axis}" if self.scale == 1 else f"{self.scale}*e{self.axis}"


@dataclass(frozen=True)
class BasisSum:
    """A coordinate with nonzero entries on two or more axes."""
    terms: Tuple[Tuple[int, int], ...]  # (axis, scale), sorted by axis

    def __str__(self) -> str:
        return "+".join(str(ScaledBasis(scale, axis)) for axis, scale in self.terms)


@dataclass(frozen=True)
class Xor:
    """Element of the binary semimodule: addition is bitwise XOR."""
    mask: int

    def __post_init__(self):
        if self.mask < 0:
            raise StructureError(f"xor masks must be non-negative, got {self.mask}")

    def __str__(self) -> str:
        return f"f{self.mask}"


StrideElem = Union[int, ScaledBasis, BasisSum, Xor]
Zero = 0


def is_stride_elem(x: Any) -> bool:
    return is_int(x) or isinstance(x, (ScaledBasis, BasisSum, Xor))


def is_zero(x: StrideElem) -> bool:
    return is_int(x) and x == 0


def kind_of(x: StrideElem) -> Optional[StrideKind]:
    """Semimodule kind of x; None for the shared zero element."""
    if is_int(x):
        return None if x == 0 else StrideKind.INT
    if isinstance(x, (ScaledBasis, BasisSum)):
        return StrideKind.COORD
    if isinstance(x, Xor):
        return StrideKind.XOR
    raise SemimoduleError(f"not a stride element: {x!r}")


def stride_kind(stride: Any) -> Optional[StrideKind]:
    """Common kind of all nonzero leaves; mixed kinds are rejected."""
    kinds = {kind_of(leaf) for leaf in flatten(stride)} - {None}
    if len(kinds) > 1:
        raise SemimoduleError(
            f"stride mixes semimodules {sorted(k.value for k in kinds)}")
    return kinds.pop() if kinds else None


def is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def clmul(k: int, m: int) -> int:
    """Carry-less product: XOR of m shifted by every set bit of k."""
    result, shift = 0, 0
    while k:
        if k & 1:
            result ^= m << shift
        k >>= 1
        shift += 1
    return result


def _basis_terms(x: StrideElem) -> Dict[int, int]:
    if isinstance(x, ScaledBasis):
        return {x.axis: x.scale}
    if isinstance(x, BasisSum):
        return dict(x.terms)
    return {}


def _from_terms(terms: Dict[int, int]) -> StrideElem:
    live = sorted((axis, scale) for axis, scale in terms.items() if scale != 0)
    if not live:
        return Zero
    if len(live) == 1:
        axis, scale = live[0]
        return ScaledBasis(checked(scale), axis)
    return BasisSum(tuple((axis, checked(scale)) for axis, scale in live))


def basis(axis: int, scale: int = 1) -> StrideElem:
    return _from_terms({axis: scale})


def xor(mask: int) -> StrideElem:
    return Xor(mask) if mask else Zero


def sm_add(a: StrideElem, b: StrideElem) -> StrideElem:
    ka, kb = kind_of(a), kind_of(b)
    if ka is None:
        return b
    if kb is None:
        return a
    if ka is not kb:
        raise SemimoduleError(f"cannot add {a} and {b}: different semimodules")
    if ka is StrideKind.INT:
        return checked(a + b)
    if ka is StrideKind.XOR:
        return xor(a.mask ^ b.mask)
    terms = _basis_terms(a)
    for axis, scale in _basis_terms(b).items():
        terms[axis] = terms.get(axis, 0) + scale
    return _from_terms(terms)


def sm_scale(k: int, m: StrideElem) -> StrideElem:
    """k-fold sum of m."""
    kind = kind_of(m)
    if kind is None or k == 0:
        return Zero
    if kind is StrideKind.INT:
        return checked(k * m)
    if kind is StrideKind.XOR:
        if k < 0:
            raise UnsupportedOperation("xor elements cannot be scaled by negative integers")
        return xor(clmul(k, m.mask))
    return _from_terms({axis: k * scale for axis, scale in _basis_terms(m).items()})


def sm_compose_scale(d: StrideElem, k: int) -> StrideElem:
    """Stride of d stepped every k positions, as used by composition."""
    if k < 1:
        raise StructureError(f"composition scale must be positive, got {k}")
    if isinstance(d, Xor) and not is_pow2(k):
        raise UnsupportedOperation(
            f"xor stride {d} can only be composed with power-of-two steps, got {k}")
    return sm_scale(k, d)


def inner_product(c: Any, d: Any) -> StrideElem:
    """Sum of leaf products of a natural coordinate with a stride."""
    if is_tuple(c):
        if not is_tuple(d) or len(c) != len(d):
            raise StructureError(f"coordinate {c} is not congruent to stride profile")
        total: StrideElem = Zero
        for ci, di in zip(c, d):
            total = sm_add(total, inner_product(ci, di))
        return total
    if is_tuple(d):
        raise StructureError(f"integral coordinate {c} needs a shape to expand against {d}")
    return sm_scale(c, d)


def axis_count(stride: Any) -> int:
    """Number of codomain axes addressed by coordinate strides."""
    axes = [axis for leaf in flatten(stride) for axis in _basis_terms(leaf)]
    return max(axes) + 1 if axes else 0


def as_coordinate(x: StrideElem, rank: int) -> Tuple[int, ...]:
    terms = _basis_terms(x)
    if kind_of(x) not in (None, StrideKind.COORD):
        raise SemimoduleError(f"{x} is not a coordinate element")
    if terms and max(terms) >= rank:
        raise StructureError(f"{x} addresses an axis beyond rank {rank}")
    return tuple(terms.get(axis, 0) for axis in range(rank))


def axis_scale(x: StrideElem, axis: int) -> int:
    return _basis_terms(x).get(axis, 0)


def elem_value(x: StrideElem) -> int:
    """Integer reading of an Int or Xor element."""
    if isinstance(x, Xor):
        return x.mask
    if is_int(x):
        return x
    raise SemimoduleError(f"{x} has no integer value")


def format_elem(x: StrideElem) -> str:
    return str(x)
