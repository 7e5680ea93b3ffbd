"""
Layout Algebra - Core
Hierarchical tuples, stride semimodules, layouts, their text form and the error hierarchy.

Everything here is pure: no operator that can fail on admissibility lives in
this package, only the objects those operators consume and produce.
"""

__version__ = "1.0.0"

from .errors import LayoutError, ParseError
from .layout import Layout, coalesce, coalesce_bymode, concat, make_layout
from .parser import parse_coord, parse_inttuple, parse_layout, parse_tiler
from .diagnostics import CheckOutcome, OracleDiagnostics

__all__ = [
    'LayoutError',
    'ParseError',
    'Layout',
    'make_layout',
    'concat',
    'coalesce',
    'coalesce_bymode',
    'parse_inttuple',
    'parse_coord',
    'parse_layout',
    'parse_tiler',
    'CheckOutcome',
    'OracleDiagnostics'
]
