"""Order-a Sudoku engine: model, solving, counting, generation, play state."""

from .game import GameState, MoveRecord, new_game, replay_history
from .generate import (
    DIFFICULTIES,
    Bands,
    Puzzle,
    classify_difficulty,
    difficulty_bands,
    generate,
)
from .grid import (
    EMPTY_ENTRY,
    ConflictSet,
    Entry,
    EntryKind,
    Grid,
    Position,
    conflicts,
    grid_from_rows,
    new_grid,
)
from .rng import SplitMix64, derive_seed, mix64
from .solve import count_solutions, solve, solve_with_singles
from .textio import dumps_grid, loads_grid

__all__ = [
    "Bands",
    "ConflictSet",
    "DIFFICULTIES",
    "EMPTY_ENTRY",
    "Entry",
    "EntryKind",
    "GameState",
    "Grid",
    "MoveRecord",
    "Position",
    "Puzzle",
    "SplitMix64",
    "classify_difficulty",
    "conflicts",
    "count_solutions",
    "derive_seed",
    "difficulty_bands",
    "dumps_grid",
    "generate",
    "grid_from_rows",
    "loads_grid",
    "mix64",
    "new_game",
    "new_grid",
    "replay_history",
    "solve",
    "solve_with_singles",
]
