"""Puzzle/grid text format.

Line 1 is the order ``a``; the next a^2 lines hold a^2 whitespace
separated tokens, "." for an empty cell and the decimal value otherwise.
An optional trailing comment line carries generation metadata::

    2
    1 2 3 4
    3 4 . .
    . . . .
    4 3 2 1
    # seed=7 difficulty=easy

Serialization is canonical (single spaces, one trailing newline), so
serialize(parse(text)) is byte-identical for canonical files.  The
format stores values only: every filled cell parses back as a clue,
which makes parse(serialize(g)) the identity for clue-only grids such
as puzzle and solution files.
"""

from __future__ import annotations

import re

from ..errors import ParseError
from .grid import Grid, grid_from_rows, MIN_ORDER, MAX_ORDER

_COMMENT_RE = re.compile(r"#\s*seed=(\d+)\s+difficulty=([a-z]+)\s*$")


def dumps_grid(grid: Grid, seed: int | None = None, difficulty: str | None = None) -> str:
    lines = [str(grid.order)]
    for row in grid.values:
        lines.append(" ".join(str(v) if v else "." for v in row))
    if seed is not None and difficulty is not None:
        lines.append(f"# seed={seed} difficulty={difficulty}")
    return "\n".join(lines) + "\n"


def loads_grid(text: str) -> tuple[Grid, int | None, str | None]:
    """Parse the text format; returns (grid, seed, difficulty).

    Raises ParseError with 1-based line and column on malformed input.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or not lines[0].strip():
        raise ParseError(1, 1, "missing order line")
    order_token = lines[0].strip()
    try:
        order = int(order_token)
    except ValueError:
        raise ParseError(1, 1, f"order must be an integer, got {order_token!r}") from None
    if not (MIN_ORDER <= order <= MAX_ORDER):
        raise ParseError(1, 1, f"order {order} outside supported range {MIN_ORDER}..{MAX_ORDER}")
    n = order * order

    rows: list[list[int]] = []
    for i in range(n):
        lineno = i + 2
        if lineno - 1 >= len(lines):
            raise ParseError(lineno, 1, f"expected {n} grid lines, found {len(rows)}")
        line = lines[lineno - 1]
        row: list[int] = []
        for match in re.finditer(r"\S+", line):
            column = match.start() + 1
            token = match.group()
            if len(row) >= n:
                raise ParseError(lineno, column, f"more than {n} tokens on grid line")
            if token == ".":
                row.append(0)
                continue
            try:
                value = int(token)
            except ValueError:
                raise ParseError(lineno, column, f"bad token {token!r}") from None
            if not (1 <= value <= n):
                raise ParseError(lineno, column, f"value {value} outside 1..{n}")
            row.append(value)
        if len(row) != n:
            raise ParseError(lineno, len(line) + 1, f"expected {n} tokens, found {len(row)}")
        rows.append(row)

    seed = None
    difficulty = None
    for extra_index in range(n + 1, len(lines)):
        line = lines[extra_index]
        if not line.strip():
            continue
        m = _COMMENT_RE.match(line.strip())
        if not m:
            raise ParseError(extra_index + 1, 1, "unexpected content after grid")
        seed = int(m.group(1))
        difficulty = m.group(2)

    return grid_from_rows(order, rows), seed, difficulty
