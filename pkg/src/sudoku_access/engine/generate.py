"""Puzzle generation.

A complete grid is filled by seeded randomized backtracking, then clues
are removed one at a time in seeded-shuffled order.  A removal is kept
only while the puzzle still has exactly one completion (checked with
``count_solutions`` capped at 2); easy puzzles additionally must stay
solvable by naked/hidden singles after every removal.  Removal stops at
the difficulty band's floor.

Clue-count bands scale with the cell count a^4 relative to the 81-cell
board: easy keeps at least round(36 * a^4 / 81) clues and stays
singles-solvable, medium floors at round(30 * a^4 / 81), hard at
round(25 * a^4 / 81).  If bounded retries cannot land in the requested
band the closest achieved puzzle is returned, labeled with the band it
actually hit; a non-unique puzzle is never returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grid import EMPTY_ENTRY, Grid, Position, new_grid
from .rng import MASK64, SplitMix64
from .solve import count_solutions, solve_with_singles

DIFFICULTIES = ("easy", "medium", "hard")

# retry budget when a removal pass misses the requested band
_MAX_ATTEMPTS = 4
# node budget per fill attempt before restarting with fresh randomness
_FILL_NODE_BUDGET = 200_000


@dataclass(frozen=True)
class Puzzle:
    """A generated puzzle: clue grid plus provenance.

    ``solution`` is the completion found during generation; it is also
    the only completion (``count_solutions(grid, 2) == 1`` holds by
    construction).
    """

    grid: Grid
    order: int
    difficulty: str
    seed: int
    clue_count: int
    solution: Grid


@dataclass(frozen=True)
class Bands:
    easy_min: int
    medium_min: int
    hard_min: int


def _round_half_up(x: float) -> int:
    return int(x + 0.5)


def difficulty_bands(order: int) -> Bands:
    cells = order ** 4
    scale = cells / 81.0
    easy_min = max(1, _round_half_up(36 * scale))
    medium_min = min(easy_min, max(0, _round_half_up(30 * scale)))
    hard_min = min(medium_min, max(0, _round_half_up(25 * scale)))
    return Bands(easy_min, medium_min, hard_min)


def classify_difficulty(order: int, clue_count: int, singles_solvable: bool) -> str:
    """Band label for an achieved clue count (floors are inclusive)."""
    bands = difficulty_bands(order)
    if clue_count >= bands.easy_min:
        return "easy" if singles_solvable else "medium"
    if clue_count >= bands.medium_min:
        return "medium"
    return "hard"


def generate(order: int, difficulty: str, seed: int) -> Puzzle:
    """Deterministic unique-solution puzzle for (order, difficulty, seed)."""
    if difficulty not in DIFFICULTIES:
        raise ValueError(f"difficulty must be one of {DIFFICULTIES}, got {difficulty!r}")
    probe = new_grid(order)  # validates the order range
    del probe
    rng = SplitMix64(seed & MASK64)
    bands = difficulty_bands(order)
    if difficulty == "easy":
        floor, band_max = bands.easy_min, order ** 4
    elif difficulty == "medium":
        floor, band_max = bands.medium_min, bands.easy_min - 1
    else:
        floor, band_max = bands.hard_min, bands.medium_min - 1

    best: tuple[Grid, Grid, int] | None = None
    for _ in range(_MAX_ATTEMPTS):
        solution = _fill_complete(order, rng)
        clue_grid, clue_count = _remove_clues(solution, rng, floor, difficulty == "easy")
        if best is None or clue_count < best[2]:
            best = (clue_grid, solution, clue_count)
        if clue_count <= band_max:
            break

    clue_grid, solution, clue_count = best
    singles_ok = solve_with_singles(clue_grid) is not None
    label = classify_difficulty(order, clue_count, singles_ok)
    return Puzzle(
        grid=clue_grid,
        order=order,
        difficulty=label,
        seed=seed & MASK64,
        clue_count=clue_count,
        solution=solution,
    )


def _fill_complete(order: int, rng: SplitMix64) -> Grid:
    """Complete valid grid via randomized backtracking (clue entries only)."""
    n = order * order
    while True:
        cells = [[0] * n for _ in range(n)]
        rows = [0] * n
        cols = [0] * n
        boxes = [0] * n
        budget = [_FILL_NODE_BUDGET]
        if _fill_search(order, cells, rows, cols, boxes, rng, budget):
            values = tuple(tuple(row) for row in cells)
            clues = frozenset(
                Position(r + 1, c + 1) for r in range(n) for c in range(n)
            )
            return Grid(order, values, clues)
        # budget exhausted on a bad start; retry with the stream's next draws


def _fill_search(order, cells, rows, cols, boxes, rng, budget) -> bool:
    n = order * order
    full = (1 << n) - 1
    # minimum-remaining-values cell, row-major tie-break
    best = None
    best_count = n + 1
    for r in range(n):
        row = cells[r]
        for c in range(n):
            if row[c]:
                continue
            b = (r // order) * order + c // order
            mask = full & ~(rows[r] | cols[c] | boxes[b])
            count = mask.bit_count()
            if count < best_count:
                if count == 0:
                    return False
                best = (r, c, b, mask)
                best_count = count
    if best is None:
        return True
    budget[0] -= 1
    if budget[0] <= 0:
        return False
    r, c, b, mask = best
    values = []
    while mask:
        low = mask & -mask
        values.append(low.bit_length())
        mask ^= low
    rng.shuffle(values)
    for v in values:
        bit = 1 << (v - 1)
        cells[r][c] = v
        rows[r] |= bit
        cols[c] |= bit
        boxes[b] |= bit
        if _fill_search(order, cells, rows, cols, boxes, rng, budget):
            return True
        cells[r][c] = 0
        rows[r] &= ~bit
        cols[c] &= ~bit
        boxes[b] &= ~bit
    return False


def _remove_clues(solution: Grid, rng: SplitMix64, floor: int, keep_singles: bool) -> tuple[Grid, int]:
    """Shuffled single pass of uniqueness-preserving removals down to ``floor``."""
    grid = solution
    count = solution.size * solution.size
    order = [Position(r, c) for r, c in grid.positions()]
    rng.shuffle(order)
    for pos in order:
        if count <= floor:
            break
        candidate = grid.with_entry(pos, EMPTY_ENTRY)
        if count_solutions(candidate, 2) != 1:
            continue
        if keep_singles and solve_with_singles(candidate) is None:
            continue
        grid = candidate
        count -= 1
    return grid, count
