"""
Layout Algebra - Hierarchical Integer Tuples
Profiles, congruence, compatibility and the colexicographic coordinate bijections
"""

import logging
from functools import reduce
from itertools import chain
from typing import Any, Iterator, List, Tuple, Union

from .errors import LayoutOverflowError, StructureError

logger = logging.getLogger(__name__)

IntTuple = Union[int, Tuple["IntTuple", ...]]
Shape = IntTuple
Coord = IntTuple

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1

_overflow_checks = True


def set_overflow_checking(enabled: bool):
    """Toggle the signed 64-bit range check on offsets and sizes."""
    global _overflow_checks
    _overflow_checks = enabled


def checked(value: int) -> int:
    """Reject values outside the signed 64-bit range."""
    if _overflow_checks and isinstance(value, int) and not INT64_MIN <= value <= INT64_MAX:
        raise LayoutOverflowError(f"value {value} overflows 64-bit signed range")
    return value


def is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def is_tuple(x: Any) -> bool:
    return isinstance(x, tuple)


def validate(t: Any, leaf=is_int, what: str = "IntTuple") -> Any:
    """Check that t is a well-formed hierarchical tuple with the given leaves."""
    if is_tuple(t):
        if len(t) == 0:
            raise StructureError(f"empty tuples are not valid in a {what}")
        for child in t:
            validate(child, leaf, what)
        return t
    if not leaf(t):
        raise StructureError(f"invalid {what} leaf: {t!r}")
    return t


def validate_shape(s: Any) -> Shape:
    validate(s, what="Shape")
    for leaf in flatten(s):
        if leaf < 1:
            raise StructureError(f"shape extents must be positive, got {leaf}")
    return s


def rank(t: IntTuple) -> int:
    return len(t) if is_tuple(t) else 1


def depth(t: IntTuple) -> int:
    if is_tuple(t):
        return 1 + max(depth(child) for child in t)
    return 0


def flatten(t: Any) -> Tuple[Any, ...]:
    """Leaves of t in order, as a flat tuple."""
    if is_tuple(t):
        return tuple(chain.from_iterable(flatten(child) for child in t))
    return (t,)


def product(t: IntTuple) -> int:
    if is_tuple(t):
        return checked(reduce(lambda acc, child: acc * product(child), t, 1))
    return t


def size(s: Shape) -> int:
    return product(s)


def congruent(a: IntTuple, b: IntTuple) -> bool:
    if is_tuple(a) and is_tuple(b):
        return len(a) == len(b) and all(congruent(x, y) for x, y in zip(a, b))
    return not is_tuple(a) and not is_tuple(b)


def weakly_congruent(a: IntTuple, b: IntTuple) -> bool:
    """True iff a's profile coarsens b's."""
    if not is_tuple(a):
        return True
    if not is_tuple(b):
        return False
    return len(a) == len(b) and all(weakly_congruent(x, y) for x, y in zip(a, b))


def compatible(p: Shape, s: Shape) -> bool:
    """True iff p coarsens s while preserving sizes."""
    if not is_tuple(p):
        return p == size(s)
    if not is_tuple(s):
        return False
    return len(p) == len(s) and all(compatible(x, y) for x, y in zip(p, s))


def colex_less(a: Coord, b: Coord) -> bool:
    if not congruent(a, b):
        raise StructureError(f"cannot order incongruent coordinates {a} and {b}")
    return tuple(reversed(flatten(a))) < tuple(reversed(flatten(b)))


def idx2crd(i: IntTuple, s: Shape) -> Coord:
    """Natural coordinate at colex position i; the last mode absorbs overflow.

    Tuple-valued i is mapped mode by mode, which expands partially
    integral coordinates into natural ones.
    """
    if is_tuple(i):
        if not is_tuple(s) or len(i) != len(s):
            raise StructureError(f"coordinate {i} is not weakly congruent to shape {s}")
        return tuple(idx2crd(c, m) for c, m in zip(i, s))
    if not is_tuple(s):
        return i
    result: List[Coord] = []
    for mode in s[:-1]:
        extent = size(mode)
        result.append(idx2crd(i % extent, mode))
        i //= extent
    result.append(idx2crd(i, s[-1]))
    return tuple(result)


def crd2idx(c: Coord, s: Shape) -> int:
    """Colex integral index of a coordinate weakly congruent to s."""
    if not is_tuple(c):
        return c
    if not is_tuple(s) or len(c) != len(s):
        raise StructureError(f"coordinate {c} is not weakly congruent to shape {s}")
    index, scale = 0, 1
    for child, mode in zip(c, s):
        index += crd2idx(child, mode) * scale
        scale *= size(mode)
    return checked(index)


def in_bounds(c: Coord, s: Shape) -> bool:
    if is_tuple(c):
        return is_tuple(s) and len(c) == len(s) and all(in_bounds(x, m) for x, m in zip(c, s))
    return 0 <= c < size(s)


def coordinate_map(c: Coord, source: Shape, target: Shape) -> Coord:
    """Move a coordinate between compatible shapes through its colex position."""
    if not (compatible(source, target) or compatible(target, source)):
        raise StructureError(f"shapes {source} and {target} are not compatible")
    if not in_bounds(c, source):
        raise StructureError(f"coordinate {c} out of bounds for shape {source}")
    return idx2crd(crd2idx(c, source), target)


def exclusive_prefix_product(s: Tuple[int, ...]) -> Tuple[int, ...]:
    if not is_tuple(s):
        return (1,)
    result, running = [], 1
    for extent in s:
        if is_tuple(extent):
            raise StructureError("exclusive_prefix_product expects a flat shape")
        result.append(running)
        running = checked(running * extent)
    return tuple(result)


def iter_coords(s: Shape) -> Iterator[Coord]:
    """Natural coordinates of s in colex order."""
    for i in range(size(s)):
        yield idx2crd(i, s)


def unflatten(flat: Tuple[Any, ...], profile: IntTuple) -> Any:
    """Rebuild flat leaves into the nesting of profile."""
    leaves = iter(flat)

    def build(p):
        if is_tuple(p):
            return tuple(build(child) for child in p)
        return next(leaves)

    return build(profile)


def format_tuple(t: Any, leaf=str) -> str:
    if is_tuple(t):
        return "(" + ",".join(format_tuple(child, leaf) for child in t) + ")"
    return leaf(t)
