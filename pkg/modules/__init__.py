"""
Layout Algebra - Operators
Composition, complement, inverses, divide and product, tensors and their
algorithms, layout analysis, rendering and the reference oracle.
"""

__version__ = "1.0.0"

from .algebra import (
    blocked_product, complement, compose, flat_divide, left_inverse, logical_divide,
    logical_product, raked_product, right_inverse, tiled_divide, zipped_divide
)
from .tensor import Tensor, make_tensor
from .analysis import locate_offsets, max_common_vector

__all__ = [
    'compose',
    'complement',
    'right_inverse',
    'left_inverse',
    'logical_divide',
    'zipped_divide',
    'tiled_divide',
    'flat_divide',
    'logical_product',
    'blocked_product',
    'raked_product',
    'Tensor',
    'make_tensor',
    'max_common_vector',
    'locate_offsets'
]
