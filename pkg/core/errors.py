"""
Layout Algebra - Error Hierarchy
Every failure raised by the layout library derives from LayoutError
"""

from typing import Optional


class LayoutError(Exception):
    """Base class for layout library errors."""

    def __init__(self, message: str, mode: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.mode = mode

    def with_mode(self, mode: int) -> "LayoutError":
        """Return a copy of this error tagged with the failing mode index."""
        error = self.__class__.__new__(self.__class__)
        LayoutError.__init__(error, f"mode {mode}: {self.message}", mode)
        error.__dict__.update({k: v for k, v in self.__dict__.items()
                               if k not in ("message", "mode")})
        return error

    def __str__(self) -> str:
        return self.message


class StructureError(LayoutError, ValueError):
    """Malformed or incongruent hierarchical tuples."""


class SemimoduleError(LayoutError, TypeError):
    """Stride elements from different semimodules were combined."""


class KindError(SemimoduleError):
    """A composition operand has a stride kind composition cannot use."""


class UnsupportedOperation(LayoutError):
    """The operator is not defined for this stride kind or shape."""


class CompositionError(LayoutError):
    """Group composition is not admissible."""


class StrideIndivisible(CompositionError):
    def __init__(self, shape: int, stride: int, mode: Optional[int] = None):
        super().__init__(
            f"stride divisibility condition violated: mode extent {shape} and "
            f"stride {stride} do not divide one another", mode)
        self.shape = shape
        self.stride = stride


class ShapeIndivisible(CompositionError):
    def __init__(self, shape: int, rest: int, mode: Optional[int] = None):
        super().__init__(
            f"shape divisibility condition violated: {shape} elements do not "
            f"divide the remaining {rest}", mode)
        self.shape = shape
        self.rest = rest


class NonDistributive(CompositionError):
    """Composition cannot be distributed over the modes of B."""


class NotComplementable(LayoutError):
    pass


class NotLeftInvertible(LayoutError):
    pass


class AdmissibilityError(LayoutError):
    """An instruction offset is absent from the data layout's image."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class ResourceError(LayoutError):
    pass


class ContractError(LayoutError):
    """Algorithm preconditions (sizes, ranks) do not hold."""


class AccessError(LayoutError, IndexError):
    pass


class ParseError(LayoutError):
    """Text form could not be parsed; offset is the failing byte position."""

    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset
        self.text = text


class LayoutOverflowError(LayoutError, OverflowError):
    pass


class PathError(StructureError, IndexError):
    """A mode path does not exist in the shape tree."""
