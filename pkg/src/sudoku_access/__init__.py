"""Accessible Sudoku: engine, scanning and voice input machines, session service, gateway."""

from .engine import (
    ConflictSet,
    Entry,
    EntryKind,
    GameState,
    Grid,
    Position,
    Puzzle,
    conflicts,
    count_solutions,
    generate,
    new_game,
    new_grid,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "ConflictSet",
    "Entry",
    "EntryKind",
    "GameState",
    "Grid",
    "Position",
    "Puzzle",
    "conflicts",
    "count_solutions",
    "generate",
    "new_game",
    "new_grid",
    "solve",
    "__version__",
]
