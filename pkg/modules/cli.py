"""
Layout Algebra - Command Line
Parse layout expressions, run an operator and print the canonical result or its grid
"""

import argparse
import contextlib
import logging
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, TextIO, Tuple

from config import Config, setup_logging
from core.errors import LayoutError, StructureError
from core.inttuple import set_overflow_checking
from core.layout import Layout, coalesce, coalesce_bymode
from core.parser import parse_coord, parse_inttuple, parse_layout, parse_tiler
from core.stride import format_elem
from . import algebra, analysis
from .render import render
from .tensor import CountingAccessor, Tensor

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2

READERS: Dict[str, Callable[[str], Any]] = {
    "layout": parse_layout,
    "tiler": parse_tiler,
    "coord": parse_coord,
    "tuple": parse_inttuple,
}


@dataclass
class Command:
    """One subcommand: its positional inputs and the operator it runs."""
    name: str
    help: str
    inputs: Tuple[Tuple[str, str], ...]
    run: Callable[..., Any]
    optional: Tuple[Tuple[str, str], ...] = ()


def _eval(settings, layout: Layout, coord: Any) -> Any:
    tensor = Tensor(CountingAccessor(0), layout)
    result = tensor(coord)
    return result if isinstance(result, Tensor) else format_elem(result)


def _linear_form(settings, layout: Layout) -> str:
    form = analysis.linear_form(layout)
    return "\n".join("[" + " ".join(str(int(x)) for x in row) + "]" for row in form.matrix)


def _chain(settings, values: List[int]) -> str:
    return "\n".join(str(L) for L in analysis.function_to_chain(values))


def _relaxed(settings) -> bool:
    return settings["relaxed_complement"]


COMMANDS: List[Command] = [
    Command("eval", "evaluate a layout at a coordinate ('_' slices)",
            (("layout", "layout"), ("coord", "coord")), _eval),
    Command("slice", "slice a counting tensor with a placeholder coordinate",
            (("layout", "layout"), ("coord", "coord")),
            lambda s, layout, coord: Tensor(CountingAccessor(0), layout).slice(coord)),
    Command("print", "print a layout in canonical form",
            (("layout", "layout"),), lambda s, layout: layout),
    Command("coalesce", "coalesce a layout, optionally by mode",
            (("layout", "layout"),),
            lambda s, layout, profile=None: coalesce(layout) if profile is None
            else coalesce_bymode(layout, profile),
            optional=(("profile", "tuple"),)),
    Command("compose", "compose A with a layout or tiler B",
            (("a", "layout"), ("b", "tiler")), lambda s, a, b: algebra.compose(a, b)),
    Command("complement", "complement of a layout within an optional codomain size",
            (("layout", "layout"),),
            lambda s, layout, size=None: algebra.complement(layout, size, _relaxed(s)),
            optional=(("size", "tuple"),)),
    Command("rinv", "right inverse", (("layout", "layout"),),
            lambda s, layout: algebra.right_inverse(layout)),
    Command("linv", "left inverse", (("layout", "layout"),),
            lambda s, layout: algebra.left_inverse(layout)),
    Command("divide", "logical divide of A by a tiler",
            (("a", "layout"), ("b", "tiler")),
            lambda s, a, b: algebra.logical_divide(a, b, _relaxed(s))),
    Command("zipped-divide", "((tiles), (rests)) divide",
            (("a", "layout"), ("b", "tiler")),
            lambda s, a, b: algebra.zipped_divide(a, b, _relaxed(s))),
    Command("tiled-divide", "((tiles), rest0, rest1, ...) divide",
            (("a", "layout"), ("b", "tiler")),
            lambda s, a, b: algebra.tiled_divide(a, b, _relaxed(s))),
    Command("flat-divide", "(tile0, ..., rest0, ...) divide",
            (("a", "layout"), ("b", "tiler")),
            lambda s, a, b: algebra.flat_divide(a, b, _relaxed(s))),
    Command("product", "logical product",
            (("a", "layout"), ("b", "layout")),
            lambda s, a, b: algebra.logical_product(a, b, _relaxed(s))),
    Command("blocked-product", "blocked product of equal-rank layouts",
            (("a", "layout"), ("b", "layout")),
            lambda s, a, b: algebra.blocked_product(a, b, _relaxed(s))),
    Command("raked-product", "raked product of equal-rank layouts",
            (("a", "layout"), ("b", "layout")),
            lambda s, a, b: algebra.raked_product(a, b, _relaxed(s))),
    Command("vectorize", "width of the common contiguous vector of two layouts",
            (("a", "layout"), ("b", "layout")),
            lambda s, a, b: analysis.max_common_vector(a, b)),
    Command("locate", "logical coordinates of A holding each offset of T",
            (("a", "layout"), ("t", "layout")),
            lambda s, a, t: analysis.locate_offsets(a, t, s["locate_bound"])),
    Command("linear-form", "matrix of a layout over its natural coordinates",
            (("layout", "layout"),), _linear_form),
    Command("chain", "layout chain reproducing a function table f(0), f(1), ...",
            (), _chain, optional=(("values", "ints"),)),
]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="layout-algebra",
        description="Evaluate and transform hierarchical shape:stride layouts.")
    parser.add_argument("--relaxed-complement", dest="relaxed_complement", action="store_true",
                        default=False, help="floor non-dividing gaps instead of failing")
    parser.add_argument("--render", dest="render", action="store_true", default=False,
                        help="print the result as a row (rank 1) or grid (rank 2)")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    for command in COMMANDS:
        sub = subparsers.add_parser(command.name, help=command.help)
        for dest, _ in command.inputs:
            sub.add_argument(dest, metavar=dest.upper())
        for dest, kind in command.optional:
            if kind == "ints":
                sub.add_argument(dest, metavar=dest.upper(), type=int, nargs="+")
            else:
                sub.add_argument(dest, metavar=dest.upper(), nargs="?")
    return parser


def _read_inputs(command: Command, args: argparse.Namespace) -> Dict[str, Any]:
    inputs = {}
    for dest, kind in command.inputs + command.optional:
        text = getattr(args, dest)
        if text is None:
            continue
        inputs[dest] = text if kind == "ints" else READERS[kind](text)
    return inputs


def run_command(argv: List[str], stdout: Optional[TextIO] = None,
                stderr: Optional[TextIO] = None) -> int:
    """Run one subcommand; returns the process exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    settings = {**Config.ALGEBRA_CONFIG, **Config.RENDER_CONFIG}
    settings["relaxed_complement"] = args.relaxed_complement or settings["relaxed_complement"]
    set_overflow_checking(settings["check_overflow"])
    command = next(c for c in COMMANDS if c.name == args.command)

    try:
        inputs = _read_inputs(command, args)
    except LayoutError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_USAGE

    try:
        result = command.run(settings, **inputs)
    except LayoutError as e:
        logger.debug(f"{command.name} failed: {type(e).__name__}: {e}")
        print(f"error: {e}", file=stderr)
        return EXIT_DOMAIN

    if args.render and isinstance(result, Layout):
        try:
            text = render(result, settings["column_separator"], settings["max_cells"])
        except StructureError as e:
            print(f"error: {e}", file=stderr)
            return EXIT_USAGE
        except LayoutError as e:
            print(f"error: {e}", file=stderr)
            return EXIT_DOMAIN
    else:
        text = str(result)
    print(text, file=stdout)
    return EXIT_OK


def main():
    setup_logging(Config)
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
