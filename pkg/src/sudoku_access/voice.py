"""Discrete voice-token interpreter.

Cell entry is a confirmed dialogue: say the row (1-9), confirm with
yes/no, say the column, confirm, then say the value, which places it.
From idle, the codes 10-15 are commands: 10 new game, 11 clear all,
12 solve, 13 undo, 14 open the settings submenu, 15 exit.  Inside the
settings submenu the tokens 1-5 pick an option: 1 difficulty, 2 the
row/column highlight color, 3 the board size, 4 a recognizer-training
advisory, 5 leaves the submenu; options 1-3 then take one digit as the
new value.

Tokens arrive as the lowercase strings "1".."15", "yes", "no".  The
interpreter is a total pure function: a token outside the active
state's vocabulary leaves the state unchanged and emits a rejected
effect, never silence.  Commands are only honored from idle, so a code
spoken mid-entry cannot fire.  Speech recognition itself happens
upstream; this module never sees audio.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

DIGITS = tuple(str(d) for d in range(1, 10))
CODES = tuple(str(c) for c in range(10, 16))
OPTIONS = tuple(str(o) for o in range(1, 6))
TOKENS = DIGITS + CODES + ("yes", "no")

IDLE_MODE = "idle"
AWAIT_ROW_CONFIRM = "await-row-confirm"
AWAIT_COL = "await-col"
AWAIT_COL_CONFIRM = "await-col-confirm"
AWAIT_VALUE = "await-value"
SETTINGS_MENU = "settings-menu"
SETTINGS_VALUE = "settings-value"

CODE_EFFECTS = {
    "10": "new-game",
    "11": "clear-all",
    "12": "solve",
    "13": "undo",
    "15": "exit",
}

# settings submenu option -> settings field (4 is a training advisory,
# 5 exits the submenu)
OPTION_FIELDS = {
    1: "difficulty",
    2: "row_col_highlight_color",
    3: "order",
}


@dataclass(frozen=True)
class VoiceState:
    mode: str = IDLE_MODE
    row: int | None = None
    col: int | None = None
    option: int | None = None


IDLE = VoiceState()


def reset(state: VoiceState) -> VoiceState:
    """Recovery hatch for the UI when recognition goes off the rails."""
    return IDLE


def _prompt(text: str) -> dict:
    return {"effect": "prompt", "text": text}


def _rejected(state: VoiceState, token: str) -> tuple[VoiceState, list[dict]]:
    return state, [{"effect": "rejected", "token": token, "reason": "out-of-vocabulary"}]


def interpret(state: VoiceState, token: str) -> tuple[VoiceState, list[dict]]:
    """One transition of the protocol; total over states and tokens."""
    mode = state.mode

    if mode == IDLE_MODE:
        if token in DIGITS:
            row = int(token)
            return VoiceState(AWAIT_ROW_CONFIRM, row=row), [_prompt("confirm-row")]
        if token in CODE_EFFECTS:
            return IDLE, [{"effect": CODE_EFFECTS[token]}]
        if token == "14":
            return VoiceState(SETTINGS_MENU), [
                {"effect": "open-settings"},
                _prompt("settings-menu"),
            ]
        return _rejected(state, token)

    if mode == AWAIT_ROW_CONFIRM:
        if token == "yes":
            return VoiceState(AWAIT_COL, row=state.row), [_prompt("choose-column")]
        if token == "no":
            return IDLE, [_prompt("choose-row")]
        return _rejected(state, token)

    if mode == AWAIT_COL:
        if token in DIGITS:
            return (
                VoiceState(AWAIT_COL_CONFIRM, row=state.row, col=int(token)),
                [_prompt("confirm-column")],
            )
        return _rejected(state, token)

    if mode == AWAIT_COL_CONFIRM:
        if token == "yes":
            return (
                VoiceState(AWAIT_VALUE, row=state.row, col=state.col),
                [_prompt("choose-value")],
            )
        if token == "no":
            # re-choose the column; the confirmed row stands
            return VoiceState(AWAIT_COL, row=state.row), [_prompt("choose-column")]
        return _rejected(state, token)

    if mode == AWAIT_VALUE:
        if token in DIGITS:
            effect = {
                "effect": "place",
                "row": state.row,
                "col": state.col,
                "value": int(token),
            }
            return IDLE, [effect]
        return _rejected(state, token)

    if mode == SETTINGS_MENU:
        if token in OPTIONS:
            option = int(token)
            if option == 5:
                return IDLE, [_prompt("settings-closed")]
            if option == 4:
                # the platform recognizer's training wizard is outside
                # this core; surface an advisory and stay in the menu
                return state, [_prompt("recognizer-training")]
            return (
                VoiceState(SETTINGS_VALUE, option=option),
                [_prompt("choose-option-value")],
            )
        return _rejected(state, token)

    if mode == SETTINGS_VALUE:
        if token in DIGITS:
            effect = {
                "effect": "set-option",
                "option": state.option,
                "field": OPTION_FIELDS[state.option],
                "value": int(token),
            }
            return VoiceState(SETTINGS_MENU), [effect]
        return _rejected(state, token)

    raise AssertionError(f"unknown voice mode {mode!r}")


def vocabulary(state: VoiceState) -> frozenset[str]:
    """Exactly the tokens interpret() accepts in this state.

    The UI feeds this to the recognizer as the active grammar so
    out-of-vocabulary words are dropped before they reach the core.
    """
    mode = state.mode
    if mode == IDLE_MODE:
        return frozenset(DIGITS + CODES)
    if mode in (AWAIT_ROW_CONFIRM, AWAIT_COL_CONFIRM):
        return frozenset(("yes", "no"))
    if mode in (AWAIT_COL, AWAIT_VALUE, SETTINGS_VALUE):
        return frozenset(DIGITS)
    if mode == SETTINGS_MENU:
        return frozenset(OPTIONS)
    raise AssertionError(f"unknown voice mode {mode!r}")
