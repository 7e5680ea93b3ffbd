"""
Layout Algebra - Reference Oracle
Brute-force function tables and independent checks of every algebra operator
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, List, Optional

from core.diagnostics import CheckOutcome, OracleDiagnostics
from core.errors import ResourceError, StructureError
from core.inttuple import exclusive_prefix_product, flatten, is_tuple
from core.layout import Layout
from core.stride import Xor, Zero, as_coordinate, sm_add, sm_scale

logger = logging.getLogger(__name__)

DEFAULT_TABLE_BOUND = 65536
DEFAULT_DISJOINTNESS_FACTOR = 4


@dataclass
class FunctionTable:
    """Values of a layout indexed by integral coordinate."""
    size: int
    values: List[Any] = field(default_factory=list)

    def __post_init__(self):
        if len(self.values) != self.size:
            raise StructureError(f"table of size {self.size} holds {len(self.values)} values")

    def __getitem__(self, i: int) -> Any:
        return self.values[i]

    def __len__(self) -> int:
        return self.size

    def is_injective(self) -> bool:
        return len(set(self.values)) == self.size


def reference_eval(L: Layout, c: Any) -> Any:
    """L at c, read directly from the colex definition.

    Integer coordinates past the size of a mode continue along its last leaf.
    """
    return _walk(L.shape, L.stride, c)


def _walk(shape: Any, stride: Any, c: Any) -> Any:
    if is_tuple(c):
        if not is_tuple(shape) or len(shape) != len(c):
            raise StructureError(f"coordinate {c} does not match shape {shape}")
        total = Zero
        for s, d, ci in zip(shape, stride, c):
            total = sm_add(total, _walk(s, d, ci))
        return total
    extents, strides = flatten(shape), flatten(stride)
    total = Zero
    for i, (s, d) in enumerate(zip(extents, strides)):
        digit = c if i == len(extents) - 1 else c % s
        c = c // s
        total = sm_add(total, sm_scale(digit, d))
    return total


def tabulate(L: Layout, bound: int = DEFAULT_TABLE_BOUND) -> FunctionTable:
    n = L.size()
    if n > bound:
        raise ResourceError(f"layout {L} has {n} elements, above the table bound {bound}")
    return FunctionTable(n, [reference_eval(L, i) for i in range(n)])


def _as_index(value: Any, target: Layout) -> Any:
    """Codomain value of one layout as a coordinate for target."""
    if isinstance(value, Xor):
        return value.mask
    if isinstance(value, int):
        return value
    coord = as_coordinate(value, target.rank)
    return coord[0] if len(coord) == 1 else coord


def _record(diagnostics: Optional[OracleDiagnostics], operation: str, ok: bool,
            inputs: str, detail: str = None) -> bool:
    if diagnostics is not None:
        outcome = CheckOutcome.AGREED if ok else CheckOutcome.DISAGREED
        diagnostics.record(operation, outcome, inputs, None if ok else detail)
    return ok


def oracle_compose(A: FunctionTable, B: FunctionTable, A_layout: Layout) -> FunctionTable:
    """values[i] = A(B(i)), reading A past its size where B reaches beyond it."""
    values = []
    for b in B.values:
        b = _as_index(b, A_layout)
        values.append(A[b] if isinstance(b, int) and 0 <= b < A.size
                      else reference_eval(A_layout, b))
    return FunctionTable(B.size, values)


def oracle_compose_check(A: Layout, B: Layout, R: Layout,
                         diagnostics: OracleDiagnostics = None,
                         bound: int = DEFAULT_TABLE_BOUND) -> bool:
    expected = oracle_compose(tabulate(A, bound), tabulate(B, bound), A)
    actual = tabulate(R, bound)
    ok = actual.values == expected.values
    return _record(diagnostics, "compose", ok, f"{A} o {B}", f"got {R}")


def _is_layout_function(values: List[int]) -> bool:
    """Whether values[k] = L(k) for some integer layout L of size len(values)."""
    n = len(values)
    if values[0] != 0:
        return False
    for extent in range(2, n + 1):
        if n % extent:
            continue
        step = values[1]
        if all(values[k] == (k % extent) * step + values[k - k % extent] for k in range(n)):
            if _is_layout_function(values[::extent]):
                return True
    return n == 1


def composition_exists(A: Layout, B: Layout, bound: int = DEFAULT_TABLE_BOUND) -> bool:
    """Whether some integer layout R, splitting each leaf of B, has R(c) = A(B(c)).

    A refused composition is conservative exactly when this holds.
    """
    target = oracle_compose(tabulate(A, bound), tabulate(B, bound), A).values
    if not all(isinstance(v, int) for v in target):
        raise StructureError(f"{A} o {B} is not integer-valued")
    extents = flatten(B.shape)
    positions = exclusive_prefix_product(extents)
    parts = [[target[k * p] for k in range(s)] for s, p in zip(extents, positions)]
    for i, value in enumerate(target):
        total, rest = 0, i
        for part, s in zip(parts, extents):
            total += part[rest % s]
            rest //= s
        if total != value:
            return False
    return all(_is_layout_function(part) for part in parts)


def oracle_refusal_check(operation: str, inputs: str, error: Exception, possible: bool,
                         diagnostics: OracleDiagnostics = None) -> bool:
    """Count a refused case: agreement when the oracle finds no result either."""
    if diagnostics is not None:
        outcome = CheckOutcome.REJECTED if possible else CheckOutcome.AGREED
        diagnostics.record(operation, outcome, inputs, f"{type(error).__name__}: {error}")
    return not possible


def oracle_coalesce_check(L: Layout, C: Layout, diagnostics: OracleDiagnostics = None,
                          bound: int = DEFAULT_TABLE_BOUND) -> bool:
    ok = C.depth <= 1 and tabulate(L, bound).values == tabulate(C, bound).values
    return _record(diagnostics, "coalesce", ok, str(L), f"got {C}")


def oracle_complement_check(L: Layout, C: Layout, M: int,
                            diagnostics: OracleDiagnostics = None,
                            bound: int = DEFAULT_TABLE_BOUND,
                            factor: int = DEFAULT_DISJOINTNESS_FACTOR) -> bool:
    """Ordered image, disjointness over C's extended domain, and reach of M.

    Reach holds when the pair counts M elements or spans offsets up to M.
    """
    image = set(tabulate(L, bound).values)
    table = tabulate(C, bound).values
    ordered = all(a < b for a, b in zip(table, table[1:]))
    disjoint = all(reference_eval(C, j) not in image for j in range(1, factor * M + 1))
    span = max(image) + max(table) + 1
    reach = L.size() * C.size() >= M or span >= M
    ok = ordered and disjoint and reach
    detail = f"ordered={ordered} disjoint={disjoint} reach={reach}"
    return _record(diagnostics, "complement", ok, f"{L} in {M}", f"{C}: {detail}")


def oracle_right_inverse_check(L: Layout, R: Layout, diagnostics: OracleDiagnostics = None,
                               bound: int = DEFAULT_TABLE_BOUND) -> bool:
    """R injective into L's domain and R(L(R(k))) = R(k) for k below size(R)."""
    table = tabulate(R, bound)
    ok = table.is_injective()
    for k in range(R.size()):
        if not ok:
            break
        r = _as_index(table[k], L)
        ok = isinstance(r, int) and 0 <= r < L.size()
        ok = ok and reference_eval(R, _as_index(reference_eval(L, r), R)) == table[k]
    return _record(diagnostics, "right_inverse", ok, str(L), f"got {R}")


def oracle_left_inverse_check(L: Layout, Li: Layout, diagnostics: OracleDiagnostics = None,
                              bound: int = DEFAULT_TABLE_BOUND) -> bool:
    """Li(L(k)) = k when L is injective, else L(Li(L(k))) = L(k)."""
    table = tabulate(L, bound)
    injective = table.is_injective()
    ok = True
    for k, value in enumerate(table.values):
        back = _as_index(reference_eval(Li, _as_index(value, Li)), L)
        ok = back == k if injective else reference_eval(L, back) == value
        if not ok:
            break
    return _record(diagnostics, "left_inverse", ok, str(L), f"got {Li}")


def oracle_divide_check(A: Layout, B: Layout, R: Layout, diagnostics: OracleDiagnostics = None,
                        bound: int = DEFAULT_TABLE_BOUND) -> bool:
    """Tile mode equals A o B and the whole result permutes A's values."""
    if not is_tuple(R.shape):
        return _record(diagnostics, "divide", False, f"{A} / {B}", f"{R} has no tile mode")
    tile = Layout(R.shape[0], R.stride[0])
    expected = oracle_compose(tabulate(A, bound), tabulate(B, bound), A)
    same_tile = tabulate(tile, bound).values == expected.values
    same_values = Counter(tabulate(R, bound).values) == Counter(tabulate(A, bound).values)
    ok = same_tile and same_values
    return _record(diagnostics, "divide", ok, f"{A} / {B}",
                   f"{R}: tile={same_tile} multiset={same_values}")


def oracle_product_check(A: Layout, B: Layout, R: Layout, diagnostics: OracleDiagnostics = None,
                         bound: int = DEFAULT_TABLE_BOUND) -> bool:
    """Mode 0 reproduces A; injective A and B give an injective product."""
    if not is_tuple(R.shape) or len(R.shape) < 2:
        return _record(diagnostics, "product", False, f"{A} x {B}", f"{R} is not rank 2")
    first = Layout(R.shape[0], R.stride[0])
    ok = tabulate(first, bound).values == tabulate(A, bound).values
    if ok and tabulate(A, bound).is_injective() and tabulate(B, bound).is_injective():
        ok = tabulate(R, bound).is_injective()
    return _record(diagnostics, "product", ok, f"{A} x {B}", f"got {R}")


__all__ = [
    "FunctionTable", "DEFAULT_TABLE_BOUND", "reference_eval", "tabulate",
    "oracle_compose", "oracle_compose_check", "composition_exists", "oracle_refusal_check",
    "oracle_coalesce_check",
    "oracle_complement_check", "oracle_right_inverse_check",
    "oracle_left_inverse_check", "oracle_divide_check", "oracle_product_check",
]
