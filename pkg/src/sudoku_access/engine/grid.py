"""Order-a Sudoku board model.

An order-a grid has a^2 rows, a^2 columns and a^2 boxes of size a x a,
for a^4 cells holding values 1..a^2.  Cells are empty, hold an immutable
clue, or hold a user entry.  Grids are frozen; every mutation returns a
new grid, so callers can treat them as values.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, NamedTuple

from ..errors import OrderRangeError, PositionRangeError, ValueRangeError

MIN_ORDER = 1
MAX_ORDER = 5


class Position(NamedTuple):
    """1-based (row, col), matching the spoken indices of the voice protocol."""

    row: int
    col: int


class EntryKind(Enum):
    EMPTY = "empty"
    CLUE = "clue"
    USER = "user"


@dataclass(frozen=True)
class Entry:
    kind: EntryKind
    value: int | None = None

    def __post_init__(self):
        if (self.kind is EntryKind.EMPTY) != (self.value is None):
            raise ValueError("empty entries carry no value, filled entries must")


EMPTY_ENTRY = Entry(EntryKind.EMPTY)


@dataclass(frozen=True)
class Grid:
    """Immutable board: cell values plus the set of clue positions.

    ``values`` is row-major, 0 meaning empty; indexing is 0-based
    internally while ``Position`` stays 1-based at the API surface.
    """

    order: int
    values: tuple[tuple[int, ...], ...]
    clues: frozenset[Position]

    @property
    def size(self) -> int:
        return self.order * self.order

    def check_position(self, pos: Position) -> None:
        if not (1 <= pos.row <= self.size and 1 <= pos.col <= self.size):
            raise PositionRangeError(f"{tuple(pos)} outside {self.size}x{self.size} grid")

    def check_value(self, value: int) -> None:
        if not (1 <= value <= self.size):
            raise ValueRangeError(f"value {value} outside 1..{self.size}")

    def value_at(self, pos: Position) -> int:
        """0 when the cell is empty."""
        self.check_position(pos)
        return self.values[pos.row - 1][pos.col - 1]

    def is_clue(self, pos: Position) -> bool:
        return pos in self.clues

    def entry_at(self, pos: Position) -> Entry:
        v = self.value_at(pos)
        if v == 0:
            return EMPTY_ENTRY
        kind = EntryKind.CLUE if pos in self.clues else EntryKind.USER
        return Entry(kind, v)

    def with_entry(self, pos: Position, entry: Entry) -> "Grid":
        """New grid with ``entry`` written at ``pos`` (no mutability checks here)."""
        self.check_position(pos)
        if entry.kind is EntryKind.EMPTY:
            value = 0
        else:
            self.check_value(entry.value)
            value = entry.value
        rows = [list(r) for r in self.values]
        rows[pos.row - 1][pos.col - 1] = value
        clues = set(self.clues)
        clues.discard(pos)
        if entry.kind is EntryKind.CLUE:
            clues.add(pos)
        return Grid(self.order, tuple(tuple(r) for r in rows), frozenset(clues))

    def positions(self) -> Iterator[Position]:
        """All positions in row-major order."""
        n = self.size
        for r in range(1, n + 1):
            for c in range(1, n + 1):
                yield Position(r, c)

    def filled_count(self) -> int:
        return sum(1 for row in self.values for v in row if v)

    def is_complete(self) -> bool:
        return all(v != 0 for row in self.values for v in row)

    def box_index(self, pos: Position) -> int:
        """0-based index of the a x a box containing ``pos``."""
        a = self.order
        return ((pos.row - 1) // a) * a + (pos.col - 1) // a


def new_grid(order: int) -> Grid:
    """All-empty grid of dimension order^2 x order^2."""
    if not isinstance(order, int) or not (MIN_ORDER <= order <= MAX_ORDER):
        raise OrderRangeError(f"order must be an integer in {MIN_ORDER}..{MAX_ORDER}, got {order!r}")
    n = order * order
    return Grid(order, tuple((0,) * n for _ in range(n)), frozenset())


def grid_from_rows(order: int, rows, clue_positions=None) -> Grid:
    """Build a grid from row-major values (0 = empty).

    When ``clue_positions`` is None every filled cell becomes a clue,
    which is the puzzle-file convention.
    """
    base = new_grid(order)
    n = base.size
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueRangeError(f"expected {n}x{n} values")
    values = tuple(tuple(int(v) for v in r) for r in rows)
    for r in values:
        for v in r:
            if v and not (1 <= v <= n):
                raise ValueRangeError(f"value {v} outside 1..{n}")
    if clue_positions is None:
        clues = frozenset(
            Position(r + 1, c + 1) for r in range(n) for c in range(n) if values[r][c]
        )
    else:
        clues = frozenset(Position(*p) for p in clue_positions)
        for p in clues:
            if values[p.row - 1][p.col - 1] == 0:
                raise ValueRangeError(f"clue position {tuple(p)} is empty")
    return Grid(order, values, clues)


@dataclass(frozen=True)
class ConflictSet:
    """Symmetric set of equal-valued peer pairs (same row, column, or box).

    Pairs are stored canonically with the row-major smaller position
    first; ``has`` accepts either order.
    """

    pairs: frozenset[tuple[Position, Position]]

    def __bool__(self) -> bool:
        return bool(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def has(self, a: Position, b: Position) -> bool:
        return _canonical_pair(a, b) in self.pairs

    def positions(self) -> frozenset[Position]:
        """Every cell that participates in at least one conflict."""
        return frozenset(p for pair in self.pairs for p in pair)

    def sorted_pairs(self) -> list[tuple[Position, Position]]:
        return sorted(self.pairs)


EMPTY_CONFLICTS = ConflictSet(frozenset())


def _canonical_pair(a: Position, b: Position) -> tuple[Position, Position]:
    return (a, b) if a <= b else (b, a)


def conflicts(grid: Grid) -> ConflictSet:
    """All pairs of filled cells that share a unit and hold the same value.

    Clue-clue, clue-user and user-user pairs are all reported; a pair
    sharing several units still appears once.
    """
    by_row: dict[tuple[int, int], list[Position]] = {}
    by_col: dict[tuple[int, int], list[Position]] = {}
    by_box: dict[tuple[int, int], list[Position]] = {}
    for pos in grid.positions():
        v = grid.values[pos.row - 1][pos.col - 1]
        if not v:
            continue
        by_row.setdefault((pos.row, v), []).append(pos)
        by_col.setdefault((pos.col, v), []).append(pos)
        by_box.setdefault((grid.box_index(pos), v), []).append(pos)
    pairs: set[tuple[Position, Position]] = set()
    for group in (by_row, by_col, by_box):
        for members in group.values():
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    pairs.add(_canonical_pair(members[i], members[j]))
    return ConflictSet(frozenset(pairs))
