"""
Console rendering for forcinglab reports.

The Renderer owns a report console (stdout) and a diagnostics console (stderr). Both are
configured without colour, markup or highlighting and with a fixed width, so a report
depends only on its inputs.
"""

import json
from typing import Any, Iterable, Literal, Optional

from rich.console import Console
from rich.table import Table
from rich import box

from forcinglab.verdict import Verdict

OutputFormat = Literal["text", "doc"]

CONSOLE_WIDTH = 120


def listing(xs: Iterable[Any]) -> str:
    return "[" + ", ".join(str(x) for x in xs) + "]"


def partition_text(partition: Iterable[Iterable[str]]) -> str:
    return " ".join("{" + ", ".join(block) + "}" for block in partition)


def pairs_text(pairs: Iterable[tuple[str, str]]) -> str:
    return listing(f"({x}, {y})" for x, y in pairs)


class Renderer:
    """Report and diagnostics output; text reports are lines and tables, docs are JSON."""

    def __init__(self, fmt: OutputFormat = "text"):
        self.format = fmt
        options = dict(
            width=CONSOLE_WIDTH,
            color_system=None,
            highlight=False,
            markup=False,
            emoji=False,
            soft_wrap=True,
        )
        self.console = Console(**options)
        self.diagnostics = Console(stderr=True, **options)

    @property
    def text(self) -> bool:
        return self.format == "text"

    def line(self, message: str = ""):
        self.console.print(message)

    def table(self, title: str, columns: list[str], rows: Iterable[Iterable[Any]]):
        table = Table(title=title, box=box.SIMPLE, show_edge=False, title_justify="left")
        for column in columns:
            table.add_column(column, no_wrap=True)
        for row in rows:
            table.add_row(*(str(cell) for cell in row))
        self.console.print(table)

    def verdict(self, v: Verdict):
        status = "pass" if v.passed else "FAIL"
        message = f"{v.check}: {status}"
        if v.counterexample is not None:
            message += f" at {listing(v.counterexample)}"
        if v.detail:
            message += f" ({v.detail})"
        self.console.print(message)

    def document(self, doc: Any):
        self.console.print(json.dumps(doc, indent=2, ensure_ascii=False))

    def error(self, message: str):
        self.diagnostics.print(f"error: {message}")

    def warn(self, message: str):
        self.diagnostics.print(f"warning: {message}")


# Global renderer instance
_renderer: Optional[Renderer] = None


def get_renderer(fmt: OutputFormat | None = None) -> Renderer:
    """Get or create the global renderer instance; a given format replaces the current one."""
    global _renderer
    if _renderer is None:
        _renderer = Renderer(fmt or "text")
    elif fmt is not None:
        _renderer.format = fmt
    return _renderer
