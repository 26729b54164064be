"""Play state on top of a puzzle: user entries, history, undo.

States are immutable; place/erase/undo/clear return a new state.
Conflicting entries are accepted and surfaced through ``conflicts``
rather than blocked, so every input mode behaves the same.  Clue cells
are never writable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..errors import EmptyCellError, ImmutableCellError, NothingToUndoError
from .generate import Puzzle
from .grid import (
    EMPTY_ENTRY,
    ConflictSet,
    Entry,
    EntryKind,
    Grid,
    Position,
    conflicts,
)


@dataclass(frozen=True)
class MoveRecord:
    pos: Position
    before: Entry
    after: Entry


@dataclass(frozen=True)
class GameState:
    puzzle: Puzzle
    grid: Grid
    history: tuple[MoveRecord, ...] = ()

    @property
    def conflicts(self) -> ConflictSet:
        return conflicts(self.grid)

    @property
    def completed(self) -> bool:
        """Full grid with no rule violations."""
        return self.grid.is_complete() and not self.conflicts

    def place(self, pos: Position, value: int) -> "GameState":
        """Write a user entry; allowed even when it creates a conflict."""
        self.grid.check_position(pos)
        self.grid.check_value(value)
        if self.grid.is_clue(pos):
            raise ImmutableCellError(f"cell {tuple(pos)} holds a clue")
        before = self.grid.entry_at(pos)
        after = Entry(EntryKind.USER, value)
        return replace(
            self,
            grid=self.grid.with_entry(pos, after),
            history=self.history + (MoveRecord(pos, before, after),),
        )

    def erase(self, pos: Position) -> "GameState":
        """Remove a user entry (recorded in history like any move)."""
        self.grid.check_position(pos)
        before = self.grid.entry_at(pos)
        if before.kind is EntryKind.CLUE:
            raise ImmutableCellError(f"cell {tuple(pos)} holds a clue")
        if before.kind is EntryKind.EMPTY:
            raise EmptyCellError(f"cell {tuple(pos)} is already empty")
        return replace(
            self,
            grid=self.grid.with_entry(pos, EMPTY_ENTRY),
            history=self.history + (MoveRecord(pos, before, EMPTY_ENTRY),),
        )

    def undo(self) -> "GameState":
        """Pop exactly one history record and restore the prior entry."""
        if not self.history:
            raise NothingToUndoError("nothing to undo")
        last = self.history[-1]
        return replace(
            self,
            grid=self.grid.with_entry(last.pos, last.before),
            history=self.history[:-1],
        )

    def clear_user_entries(self) -> "GameState":
        """Back to the clue-only grid; history resets."""
        return replace(self, grid=self.puzzle.grid, history=())


def new_game(puzzle: Puzzle) -> GameState:
    return GameState(puzzle=puzzle, grid=puzzle.grid)


def replay_history(puzzle: Puzzle, history) -> GameState:
    """Rebuild a state by applying move records to the clue grid."""
    grid = puzzle.grid
    for record in history:
        grid = grid.with_entry(record.pos, record.after)
    return GameState(puzzle=puzzle, grid=grid, history=tuple(history))
