"""Backtracking solver and solution counter.

Both treat every filled cell (clue or user entry) as a fixed given.
The search is deterministic: the next cell is the empty cell with the
fewest remaining candidates (row-major order breaks ties) and values
are tried in ascending order.  Candidates are tracked as bitmasks per
row, column and box, with bit v-1 set while value v is taken.
"""

from __future__ import annotations

from .grid import Grid, Position, conflicts


class _Board:
    """Mutable working copy of a grid for the search loops."""

    def __init__(self, grid: Grid):
        self.n = grid.size
        self.a = grid.order
        self.cells = [list(row) for row in grid.values]
        self.full = (1 << self.n) - 1
        self.rows = [0] * self.n
        self.cols = [0] * self.n
        self.boxes = [0] * self.n
        self.ok = True
        for r in range(self.n):
            for c in range(self.n):
                v = self.cells[r][c]
                if v:
                    bit = 1 << (v - 1)
                    b = self.box_of(r, c)
                    if (self.rows[r] | self.cols[c] | self.boxes[b]) & bit:
                        self.ok = False  # duplicate given
                    self.rows[r] |= bit
                    self.cols[c] |= bit
                    self.boxes[b] |= bit

    def box_of(self, r: int, c: int) -> int:
        return (r // self.a) * self.a + c // self.a

    def candidates(self, r: int, c: int) -> int:
        return self.full & ~(self.rows[r] | self.cols[c] | self.boxes[self.box_of(r, c)])

    def set(self, r: int, c: int, v: int) -> None:
        bit = 1 << (v - 1)
        self.cells[r][c] = v
        self.rows[r] |= bit
        self.cols[c] |= bit
        self.boxes[self.box_of(r, c)] |= bit

    def unset(self, r: int, c: int, v: int) -> None:
        bit = ~(1 << (v - 1))
        self.cells[r][c] = 0
        self.rows[r] &= bit
        self.cols[c] &= bit
        self.boxes[self.box_of(r, c)] &= bit

    def pick_cell(self) -> tuple[int, int, int] | None:
        """Empty cell with fewest candidates, row-major tie-break.

        Returns (r, c, candidate_mask) or None when the board is full.
        """
        best = None
        best_count = self.n + 1
        for r in range(self.n):
            row = self.cells[r]
            for c in range(self.n):
                if row[c]:
                    continue
                mask = self.candidates(r, c)
                count = mask.bit_count()
                if count < best_count:
                    if count == 0:
                        return (r, c, 0)
                    best = (r, c, mask)
                    best_count = count
        return best


def _iter_values(mask: int):
    """Set bits of ``mask`` as values, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


def solve(grid: Grid) -> Grid | None:
    """Complete ``grid`` or return None when it cannot be done.

    Givens that already conflict make the grid unsolvable, not an error.
    Cells filled by the solver come back as user entries; the input's
    entries (and its clue set) are preserved.
    """
    board = _Board(grid)
    if not board.ok:
        return None
    if not _search_one(board):
        return None
    values = tuple(tuple(row) for row in board.cells)
    return Grid(grid.order, values, grid.clues)


def _search_one(board: _Board) -> bool:
    pick = board.pick_cell()
    if pick is None:
        return True
    r, c, mask = pick
    for v in _iter_values(mask):
        board.set(r, c, v)
        if _search_one(board):
            return True
        board.unset(r, c, v)
    return False


def count_solutions(grid: Grid, cap: int) -> int:
    """min(cap, number of completions), by exhaustive backtracking.

    ``cap`` bounds the work: the search stops as soon as ``cap``
    completions have been found.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    board = _Board(grid)
    if not board.ok:
        return 0
    return _search_count(board, cap)


def _search_count(board: _Board, cap: int) -> int:
    pick = board.pick_cell()
    if pick is None:
        return 1
    r, c, mask = pick
    found = 0
    for v in _iter_values(mask):
        board.set(r, c, v)
        found += _search_count(board, cap - found)
        board.unset(r, c, v)
        if found >= cap:
            break
    return found


def solve_with_singles(grid: Grid) -> Grid | None:
    """Completion using naked and hidden singles only; None when stuck.

    Used for difficulty grading: a puzzle this solver finishes needs no
    guessing at all.
    """
    board = _Board(grid)
    if not board.ok:
        return None
    n = board.n
    progress = True
    remaining = sum(1 for r in range(n) for c in range(n) if not board.cells[r][c])
    while remaining and progress:
        progress = False
        # naked singles: a cell with exactly one candidate
        for r in range(n):
            for c in range(n):
                if board.cells[r][c]:
                    continue
                mask = board.candidates(r, c)
                if mask == 0:
                    return None
                if mask & (mask - 1) == 0:
                    board.set(r, c, mask.bit_length())
                    remaining -= 1
                    progress = True
        # hidden singles: a value with exactly one spot in a unit
        for unit in _units(board):
            placed = _hidden_singles_in_unit(board, unit)
            if placed is None:
                return None
            if placed:
                remaining -= placed
                progress = True
    if remaining:
        return None
    values = tuple(tuple(row) for row in board.cells)
    return Grid(grid.order, values, grid.clues)


def _units(board: _Board):
    n, a = board.n, board.a
    for r in range(n):
        yield [(r, c) for c in range(n)]
    for c in range(n):
        yield [(r, c) for r in range(n)]
    for br in range(a):
        for bc in range(a):
            yield [
                (br * a + dr, bc * a + dc) for dr in range(a) for dc in range(a)
            ]


def _hidden_singles_in_unit(board: _Board, unit) -> int | None:
    """Place hidden singles in one unit; None signals a contradiction."""
    placed = 0
    seen = 0
    for r, c in unit:
        v = board.cells[r][c]
        if v:
            seen |= 1 << (v - 1)
    missing = board.full & ~seen
    for v in _iter_values(missing):
        bit = 1 << (v - 1)
        spot = None
        count = 0
        for r, c in unit:
            if board.cells[r][c]:
                continue
            if board.candidates(r, c) & bit:
                spot = (r, c)
                count += 1
                if count > 1:
                    break
        if count == 0:
            return None
        if count == 1:
            board.set(spot[0], spot[1], v)
            placed += 1
    return placed


def is_valid_complete(grid: Grid) -> bool:
    return grid.is_complete() and not conflicts(grid)


def first_empty(grid: Grid) -> Position | None:
    for pos in grid.positions():
        if grid.value_at(pos) == 0:
            return pos
    return None
