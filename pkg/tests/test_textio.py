from __future__ import annotations

import pytest

from sudoku_access.engine import (
    Entry,
    EntryKind,
    Position,
    SplitMix64,
    dumps_grid,
    generate,
    loads_grid,
    new_grid,
)
from sudoku_access.errors import ParseError

CANONICAL = """2
1 2 3 4
3 4 . .
. . . .
4 3 2 1
# seed=7 difficulty=easy
"""


def test_parse_canonical_file():
    grid, seed, difficulty = loads_grid(CANONICAL)
    assert grid.order == 2
    assert grid.value_at(Position(1, 1)) == 1
    assert grid.value_at(Position(2, 3)) == 0
    assert grid.is_clue(Position(4, 4))
    assert seed == 7
    assert difficulty == "easy"


def test_serialize_parse_round_trip_is_identity_for_clue_grids():
    rng = SplitMix64(5150)
    for order in (1, 2, 3):
        n = order * order
        g = new_grid(order)
        for _ in range(n * 2):
            pos = Position(rng.below(n) + 1, rng.below(n) + 1)
            g = g.with_entry(pos, Entry(EntryKind.CLUE, rng.below(n) + 1))
        parsed, _, _ = loads_grid(dumps_grid(g))
        assert parsed == g


def test_parse_serialize_round_trip_is_byte_identical_on_canonical_text():
    assert dumps_grid(*_split(loads_grid(CANONICAL))) == CANONICAL


def _split(parsed):
    grid, seed, difficulty = parsed
    return grid, seed, difficulty


def test_generated_puzzle_round_trips_with_metadata():
    puzzle = generate(3, "easy", 42)
    text = dumps_grid(puzzle.grid, seed=puzzle.seed, difficulty=puzzle.difficulty)
    grid, seed, difficulty = loads_grid(text)
    assert grid == puzzle.grid
    assert seed == puzzle.seed
    assert difficulty == puzzle.difficulty


def test_user_entries_serialize_as_plain_values():
    # the text format carries values only; filled cells parse back as clues
    g = new_grid(2).with_entry(Position(1, 1), Entry(EntryKind.USER, 3))
    parsed, _, _ = loads_grid(dumps_grid(g))
    assert parsed.value_at(Position(1, 1)) == 3
    assert parsed.is_clue(Position(1, 1))


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("", 1, 1),
        ("x\n", 1, 1),
        ("9\n", 1, 1),  # order out of range
        ("2\n1 2 3\n", 2, 6),  # short row
        ("2\n1 2 3 4 4\n", 2, 9),  # long row
        ("2\n1 2 3 4\n. . . 5\n. . . .\n. . . .\n", 3, 7),  # value out of range
        ("2\n1 2 3 4\n. . . q\n. . . .\n. . . .\n", 3, 7),  # bad token
        ("2\n1 2 3 4\n", 3, 1),  # missing lines
        ("2\n1 2 3 4\n. . . .\n. . . .\n. . . .\ntrailing junk\n", 6, 1),
    ],
)
def test_parse_errors_carry_line_and_column(text, line, column):
    with pytest.raises(ParseError) as info:
        loads_grid(text)
    assert info.value.line == line
    assert info.value.column == column


def test_blank_trailing_lines_are_tolerated():
    grid, _, _ = loads_grid("1\n1\n\n")
    assert grid.value_at(Position(1, 1)) == 1
