"""
Layout Algebra - Text Forms
Recursive-descent parser for tuples, strides, layouts and tilers
"""

import logging
from typing import Any, Callable, List

from .errors import ParseError, StructureError
from .inttuple import IntTuple
from .layout import Layout, Tiler
from .stride import StrideElem, basis, sm_add, xor

logger = logging.getLogger(__name__)

PLACEHOLDER = "_"
OPEN_TILER = ("[", "⟨")
CLOSE_TILER = {"[": "]", "⟨": "⟩"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        offset = len(self.text[:self.pos].encode("utf-8"))
        return ParseError(message, offset, self.text)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, expected: str) -> str:
        if self.peek() != expected:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected {expected!r}, found {found}")
        self.pos += 1
        return expected

    def at_end(self) -> bool:
        return self.peek() == ""

    def finish(self):
        if not self.at_end():
            raise self.error(f"unexpected {self.peek()!r}")

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if digits in ("", "-"):
            self.pos = start
            raise self.error("expected an integer")
        return int(digits)

    def hierarchy(self, leaf: Callable[[], Any]) -> Any:
        if self.peek() != "(":
            return leaf()
        self.take("(")
        items = [self.hierarchy(leaf)]
        while self.peek() == ",":
            self.take(",")
            items.append(self.hierarchy(leaf))
        self.take(")")
        return tuple(items)

    def coord_leaf(self) -> Any:
        if self.peek() == PLACEHOLDER:
            self.pos += 1
            return None
        return self.integer()

    def basis_term(self) -> StrideElem:
        head = self.peek()
        if head == "f":
            self.pos += 1
            return xor(self.integer())
        if head == "e":
            self.pos += 1
            return basis(self.integer())
        value = self.integer()
        if self.peek() == "*":
            self.take("*")
            if self.peek() != "e":
                raise self.error("expected a basis element after '*'")
        if self.peek() == "e":
            self.pos += 1
            return basis(self.integer(), value)
        return value

    def stride_leaf(self) -> StrideElem:
        elem = self.basis_term()
        while self.peek() == "+":
            self.take("+")
            elem = sm_add(elem, self.basis_term())
        return elem

    def layout(self) -> Layout:
        shape = self.hierarchy(self.integer)
        self.take(":")
        stride = self.hierarchy(self.stride_leaf)
        try:
            return Layout(shape, stride)
        except StructureError as e:
            raise StructureError(f"invalid layout: {e}") from e

    def tiler_item(self) -> Tiler:
        if self.peek() in OPEN_TILER:
            return self.tiler()
        start = self.pos
        head = self.hierarchy(self.integer)
        if self.peek() != ":":
            return head
        self.pos = start
        return self.layout()

    def tiler(self) -> Tiler:
        opening = self.peek()
        self.take(opening)
        items: List[Tiler] = []
        if self.peek() != CLOSE_TILER[opening]:
            items.append(self.tiler_item())
            while self.peek() == ",":
                self.take(",")
                items.append(self.tiler_item())
        self.take(CLOSE_TILER[opening])
        return tuple(items)


def _run(text: str, rule: Callable[[_Parser], Any]) -> Any:
    parser = _Parser(text)
    result = rule(parser)
    parser.finish()
    return result


def parse_inttuple(text: str) -> IntTuple:
    return _run(text, lambda p: p.hierarchy(p.integer))


def parse_coord(text: str) -> Any:
    """Coordinate text; '_' leaves become None placeholders."""
    return _run(text, lambda p: p.hierarchy(p.coord_leaf))


def parse_stride(text: str) -> Any:
    return _run(text, lambda p: p.hierarchy(p.stride_leaf))


def parse_layout(text: str) -> Layout:
    layout = _run(text, _Parser.layout)
    logger.debug(f"parsed layout {layout}")
    return layout


def parse_tiler(text: str) -> Tiler:
    """A bracketed tiler, a single layout, or a shape tuple of extents."""
    return _run(text, _Parser.tiler_item)


def format_coord(c: Any) -> str:
    if isinstance(c, tuple):
        return "(" + ",".join(format_coord(x) for x in c) + ")"
    return PLACEHOLDER if c is None else str(c)


__all__ = [
    "PLACEHOLDER", "parse_inttuple", "parse_coord", "parse_stride",
    "parse_layout", "parse_tiler", "format_coord",
]
