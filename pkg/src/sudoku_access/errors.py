"""Exception types shared across the package.

Each carries a short stable ``code`` so the session layer can turn any
of them into an error event without string-matching messages.
"""

from __future__ import annotations


class SudokuError(Exception):
    code = "error"


class OrderRangeError(SudokuError):
    """Grid order outside the supported 1..5 range."""

    code = "order-range"


class ValueRangeError(SudokuError):
    """Cell value outside 1..order^2."""

    code = "value-range"


class PositionRangeError(SudokuError):
    """Row or column outside the grid."""

    code = "position-range"


class ImmutableCellError(SudokuError):
    """Attempt to write or erase a clue cell."""

    code = "immutable-cell"


class EmptyCellError(SudokuError):
    """Erase on a cell that holds nothing."""

    code = "empty-cell"


class NothingToUndoError(SudokuError):
    """Undo requested with an empty move history."""

    code = "nothing-to-undo"


class ParseError(SudokuError):
    """Malformed puzzle text; carries 1-based line and column."""

    code = "parse"

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SettingsError(SudokuError):
    """Invalid settings; ``fields`` maps field name to problem."""

    code = "settings"

    def __init__(self, fields: dict):
        super().__init__("; ".join(f"{k}: {v}" for k, v in sorted(fields.items())))
        self.fields = dict(fields)


class LoadError(SudokuError):
    """Corrupt or version-mismatched session save blob."""

    code = "load"


class ProtocolError(SudokuError):
    """Malformed gateway message."""

    code = "protocol"
