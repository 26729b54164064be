"""One player's game session.

The session owns the game state, the settings, and the two input
machines, and turns raw input events into output events for a UI:

* input dicts: ``{"input": "switch"}``, ``{"input": "tick"}``,
  ``{"input": "voice", "token": t}``, ``{"input": "pointer", "node": id}``,
  ``{"input": "command", "action": a}``.
* output dicts: ``highlight``, ``grid`` (a diff plus current conflicts
  and completion), ``scan-stopped``, ``completed``, ``settings``,
  ``voice`` (mode/prompt/rejection status), ``error``, ``closed``.

Inputs are processed strictly one at a time.  Everything that happens
is a pure function of (settings, seed, input history): new games take
their seeds from a documented mix of the session seed and a per-session
counter, so replaying the logged inputs reproduces the logged outputs
byte for byte.  Only the device selected in the settings is listened
to; events from other devices produce an error and change nothing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from . import scanning, voice
from .engine import (
    DIFFICULTIES,
    Entry,
    EntryKind,
    GameState,
    Grid,
    MoveRecord,
    Position,
    Puzzle,
    derive_seed,
    dumps_grid,
    generate,
    loads_grid,
    new_game,
    replay_history,
    solve,
)
from .errors import LoadError, SettingsError, SudokuError
from .jsonio import canonical_json

INPUT_DEVICES = ("pointer", "switch", "space-key", "voice")
SCAN_DEVICES = ("switch", "space-key")
MENU_ACTIONS = ("new", "clear", "solve", "undo", "settings", "exit", "close-settings")

SAVE_FORMAT_VERSION = 1

# voice settings submenu: difficulty digits and color digits map through
# these tables (order digits map to the order itself)
VOICE_DIFFICULTY_VALUES = {1: "easy", 2: "medium", 3: "hard"}
VOICE_COLOR_VALUES = {i + 1: c for i, c in enumerate(scanning.SETTING_PALETTE)}


@dataclass(frozen=True)
class Settings:
    order: int = 3
    difficulty: str = "easy"
    scan_dwell_ms: int = 800
    scan_repeat_cycles: int = 2
    scan_sound: bool = True
    scan_highlight_color: str = "yellow"
    row_col_highlight_color: str = "blue"
    input_device: str = "switch"

    def validate(self) -> dict[str, str]:
        """Field-level problems; empty when the settings are usable."""
        problems: dict[str, str] = {}
        if not isinstance(self.order, int) or not (1 <= self.order <= 5):
            problems["order"] = f"must be an integer in 1..5, got {self.order!r}"
        if self.difficulty not in DIFFICULTIES:
            problems["difficulty"] = f"must be one of {DIFFICULTIES}, got {self.difficulty!r}"
        lo, hi = scanning.DWELL_MS_RANGE
        if not isinstance(self.scan_dwell_ms, int) or not (lo <= self.scan_dwell_ms <= hi):
            problems["scan_dwell_ms"] = f"must be an integer in {lo}..{hi}"
        lo, hi = scanning.REPEAT_CYCLES_RANGE
        if not isinstance(self.scan_repeat_cycles, int) or not (lo <= self.scan_repeat_cycles <= hi):
            problems["scan_repeat_cycles"] = f"must be an integer in {lo}..{hi}"
        if not isinstance(self.scan_sound, bool):
            problems["scan_sound"] = "must be a boolean"
        if not self.scan_highlight_color or not isinstance(self.scan_highlight_color, str):
            problems["scan_highlight_color"] = "must be a non-empty string"
        if not self.row_col_highlight_color or not isinstance(self.row_col_highlight_color, str):
            problems["row_col_highlight_color"] = "must be a non-empty string"
        if self.input_device not in INPUT_DEVICES:
            problems["input_device"] = f"must be one of {INPUT_DEVICES}, got {self.input_device!r}"
        elif self.input_device == "voice" and self.order != 3:
            # value tokens above 9 would collide with the command codes
            problems["input_device"] = "voice input requires order 3"
        return problems

    def check(self) -> "Settings":
        problems = self.validate()
        if problems:
            raise SettingsError(problems)
        return self

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "difficulty": self.difficulty,
            "scan_dwell_ms": self.scan_dwell_ms,
            "scan_repeat_cycles": self.scan_repeat_cycles,
            "scan_sound": self.scan_sound,
            "scan_highlight_color": self.scan_highlight_color,
            "row_col_highlight_color": self.row_col_highlight_color,
            "input_device": self.input_device,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Settings":
        unknown = set(data) - set(cls().to_dict())
        if unknown:
            raise SettingsError({k: "unknown setting" for k in sorted(unknown)})
        return cls(**{**cls().to_dict(), **data})

    def scan_config(self) -> scanning.ScanConfig:
        return scanning.ScanConfig(
            dwell_ms=self.scan_dwell_ms,
            repeat_cycles=self.scan_repeat_cycles,
            sound_enabled=self.scan_sound,
            highlight_color=self.scan_highlight_color,
        )


def dumps_settings(settings: Settings) -> str:
    return json.dumps(settings.to_dict(), indent=2, sort_keys=True) + "\n"


def loads_settings(text: str) -> Settings:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SettingsError({"file": f"not valid JSON: {exc}"}) from None
    if not isinstance(data, dict):
        raise SettingsError({"file": "expected a JSON object"})
    return Settings.from_dict(data).check()


def _error(code: str, message: str) -> dict:
    return {"event": "error", "code": code, "message": message}


def _entry_dict(entry: Entry) -> dict:
    return {"kind": entry.kind.value, "value": entry.value}


class Session:
    """Serialized event handling for one player; see the module docstring."""

    def __init__(self, settings: Settings, seed: int, _puzzle: Puzzle | None = None):
        settings.check()
        self.settings = settings
        self.seed = seed
        self.counter = 0
        puzzle = _puzzle or generate(settings.order, settings.difficulty, seed)
        self.game: GameState = new_game(puzzle)
        self.scan_tree = scanning.build_scan_tree(self.game)
        self.settings_tree = scanning.build_settings_scan_tree()
        self.scan_state = scanning.INACTIVE
        self.scan_context = "main"
        self.voice_state = voice.IDLE
        self.pointer_pending: Position | None = None
        self.closed = False
        self.log: list[dict] = []
        self._was_completed = self.game.completed

    # ------------------------------------------------------------ events

    def handle(self, event: dict) -> list[dict]:
        outputs = self._dispatch(event)
        self.log.append({"input": event, "outputs": outputs})
        return outputs

    def _dispatch(self, event: dict) -> list[dict]:
        if self.closed:
            return [_error("closed", "session is closed")]
        kind = event.get("input")
        if kind == "tick":
            return self._handle_scan_event(is_press=False)
        if kind == "switch":
            return self._handle_scan_event(is_press=True)
        if kind == "voice":
            return self._handle_voice(event.get("token", ""))
        if kind == "pointer":
            return self._handle_pointer(event.get("node", ""))
        if kind == "command":
            return self._apply_menu_action(event.get("action", ""))
        return [_error("bad-input", f"unknown input type {kind!r}")]

    # ---------------------------------------------------------- scanning

    def _active_tree(self) -> scanning.ScanTree:
        return self.settings_tree if self.scan_context == "settings" else self.scan_tree

    def _handle_scan_event(self, is_press: bool) -> list[dict]:
        if self.settings.input_device not in SCAN_DEVICES:
            return [_error("wrong-device", f"scanning input needs the input device set to one of {SCAN_DEVICES}")]
        tree = self._active_tree()
        config = self.settings.scan_config()
        step = scanning.press if is_press else scanning.tick
        self.scan_state, machine_events = step(self.scan_state, tree, config)
        outputs: list[dict] = []
        for ev in machine_events:
            name = ev["event"]
            if name == "highlight":
                outputs.append(ev)
            elif name == "ascend":
                outputs.append(
                    {"event": "highlight", "node": ev["node"], "sound": self.settings.scan_sound}
                )
            elif name == "stopped":
                outputs.append({"event": "scan-stopped"})
            elif name == "action":
                outputs.extend(self._apply_scan_action(ev["action"]))
            # noop events carry no information for the UI
        return outputs

    def _apply_scan_action(self, action: dict) -> list[dict]:
        kind = action["kind"]
        if kind == "start-scan":
            return []
        if kind == "commit-place":
            return self._place(Position(action["row"], action["col"]), action["value"])
        if kind == "commit-erase":
            return self._erase(Position(action["row"], action["col"]))
        if kind == "commit-cancel":
            return []
        if kind == "menu":
            return self._apply_menu_action(action["item"])
        if kind == "set-setting":
            merged = replace(self.settings, **{action["field"]: action["value"]})
            return self.update_settings(merged)
        return [_error("bad-action", f"unknown scan action {kind!r}")]

    # ------------------------------------------------------------- voice

    def _handle_voice(self, token: str) -> list[dict]:
        if self.settings.input_device != "voice":
            return [_error("wrong-device", "voice input needs the input device set to voice")]
        self.voice_state, effects = voice.interpret(self.voice_state, token)
        outputs: list[dict] = []
        prompt = None
        rejected = None
        for eff in effects:
            name = eff["effect"]
            if name == "place":
                outputs.extend(self._place(Position(eff["row"], eff["col"]), eff["value"]))
            elif name == "new-game":
                outputs.extend(self._apply_menu_action("new"))
            elif name == "clear-all":
                outputs.extend(self._apply_menu_action("clear"))
            elif name == "solve":
                outputs.extend(self._apply_menu_action("solve"))
            elif name == "undo":
                outputs.extend(self._apply_menu_action("undo"))
            elif name == "exit":
                outputs.extend(self._apply_menu_action("exit"))
            elif name == "open-settings":
                pass  # tracked by the voice state itself
            elif name == "set-option":
                outputs.extend(self._apply_voice_option(eff))
            elif name == "prompt":
                prompt = eff["text"]
            elif name == "rejected":
                rejected = eff["token"]
        status = {"event": "voice", "mode": self.voice_state.mode, "prompt": prompt, "rejected": rejected}
        outputs.append(status)
        return outputs

    def _apply_voice_option(self, eff: dict) -> list[dict]:
        option, value = eff["option"], eff["value"]
        if option == 1:
            if value not in VOICE_DIFFICULTY_VALUES:
                return [_error("bad-option-value", f"difficulty digit must be 1..3, got {value}")]
            merged = replace(self.settings, difficulty=VOICE_DIFFICULTY_VALUES[value])
        elif option == 2:
            if value not in VOICE_COLOR_VALUES:
                return [_error("bad-option-value", f"color digit must be 1..{len(VOICE_COLOR_VALUES)}, got {value}")]
            merged = replace(self.settings, row_col_highlight_color=VOICE_COLOR_VALUES[value])
        elif option == 3:
            merged = replace(self.settings, order=value)
        else:
            return [_error("bad-option-value", f"option {option} takes no value")]
        return self.update_settings(merged)

    # ----------------------------------------------------------- pointer

    def _handle_pointer(self, node_id: str) -> list[dict]:
        if self.settings.input_device != "pointer":
            return [_error("wrong-device", "pointer input needs the input device set to pointer")]
        node = None
        for tree in (self.scan_tree, self.settings_tree):
            if tree.has_node(node_id):
                node = tree.node(node_id)
                break
        if node is None:
            return [_error("unknown-node", f"no selectable node {node_id!r}")]
        if node.kind == "cell":
            self.pointer_pending = node.payload
            return []
        if node.kind == "keypad-key":
            if self.pointer_pending is None:
                return [_error("no-cell-selected", "select a cell before a keypad key")]
            pos = self.pointer_pending
            self.pointer_pending = None
            if node.payload == "cancel":
                return []
            if node.payload == "erase":
                return self._erase(pos)
            return self._place(pos, node.payload)
        if node.kind == "menu-item":
            return self._apply_menu_action(node.payload)
        if node.kind == "setting-value":
            field, value = node.payload
            return self.update_settings(replace(self.settings, **{field: value}))
        return []  # groups/rows/items are navigation structure, not actions

    # ------------------------------------------------------- game moves

    def _place(self, pos: Position, value: int) -> list[dict]:
        before = self.game.grid
        try:
            self.game = self.game.place(pos, value)
        except SudokuError as exc:
            return [_error(exc.code, str(exc))]
        return self._grid_outputs(before)

    def _erase(self, pos: Position) -> list[dict]:
        before = self.game.grid
        try:
            self.game = self.game.erase(pos)
        except SudokuError as exc:
            return [_error(exc.code, str(exc))]
        return self._grid_outputs(before)

    def _apply_menu_action(self, item: str) -> list[dict]:
        if item == "new":
            return self._new_game()
        if item == "clear":
            before = self.game.grid
            self.game = self.game.clear_user_entries()
            return self._grid_outputs(before)
        if item == "solve":
            return self._solve()
        if item == "undo":
            before = self.game.grid
            try:
                self.game = self.game.undo()
            except SudokuError as exc:
                return [_error(exc.code, str(exc))]
            return self._grid_outputs(before)
        if item == "settings":
            if self.settings.input_device in SCAN_DEVICES:
                self.scan_context = "settings"
                self.scan_state = scanning.start_state(self.settings_tree)
            return []  # pointer UIs open their own panel
        if item == "close-settings":
            if self.settings.input_device in SCAN_DEVICES:
                self.scan_context = "main"
                self.scan_state = scanning.start_state(self.scan_tree)
            return []
        if item == "exit":
            self.closed = True
            return [{"event": "closed"}]
        return [_error("bad-action", f"unknown menu action {item!r}")]

    def _new_game(self) -> list[dict]:
        before = self.game.grid
        self.counter += 1
        puzzle = generate(
            self.settings.order, self.settings.difficulty, derive_seed(self.seed, self.counter)
        )
        self.game = new_game(puzzle)
        self._rebuild_scan_trees()
        self.pointer_pending = None
        self._was_completed = self.game.completed
        return self._grid_outputs(before, suppress_completed=True)

    def _solve(self) -> list[dict]:
        before = self.game.grid
        solution = solve(self.game.grid)
        if solution is None:
            return [_error("unsolvable", "current entries contradict the rules")]
        game = self.game
        for pos in game.grid.positions():
            if game.grid.value_at(pos) == 0:
                game = game.place(pos, solution.value_at(pos))
        self.game = game
        return self._grid_outputs(before)

    def _grid_outputs(self, before: Grid, suppress_completed: bool = False) -> list[dict]:
        after = self.game.grid
        changes = []
        for pos in after.positions():
            old = before.entry_at(pos) if before.size == after.size else None
            new = after.entry_at(pos)
            if old != new:
                changes.append({"row": pos.row, "col": pos.col, **_entry_dict(new)})
        conflict_cells = sorted(self.game.conflicts.positions())
        event = {
            "event": "grid",
            "order": after.order,
            "changes": changes,
            "conflicts": [[p.row, p.col] for p in conflict_cells],
            "completed": self.game.completed,
        }
        outputs = [event]
        if self.game.completed and not self._was_completed and not suppress_completed:
            outputs.append({"event": "completed"})
        self._was_completed = self.game.completed
        return outputs

    def _rebuild_scan_trees(self) -> None:
        self.scan_tree = scanning.build_scan_tree(self.game)
        self.settings_tree = scanning.build_settings_scan_tree()
        if self.settings.input_device in SCAN_DEVICES:
            was_active = self.scan_state.active
            self.scan_context = "main"
            self.scan_state = (
                scanning.start_state(self.scan_tree) if was_active else scanning.INACTIVE
            )

    # ---------------------------------------------------------- settings

    def update_settings(self, new_settings: Settings | dict) -> list[dict]:
        if isinstance(new_settings, dict):
            try:
                new_settings = Settings.from_dict({**self.settings.to_dict(), **new_settings})
            except SettingsError as exc:
                return [_error(exc.code, str(exc))]
        problems = new_settings.validate()
        if problems:
            return [_error("settings", "; ".join(f"{k}: {v}" for k, v in sorted(problems.items())))]
        old = self.settings
        self.settings = new_settings
        outputs: list[dict] = []
        if new_settings.order != old.order:
            # an order change cannot preserve the board: start a new game
            outputs.extend(self._new_game())
        elif (
            new_settings.scan_highlight_color != old.scan_highlight_color
            or new_settings.row_col_highlight_color != old.row_col_highlight_color
        ):
            self._rebuild_scan_trees()
        if new_settings.input_device != old.input_device:
            self.scan_state = scanning.INACTIVE
            self.scan_context = "main"
            self.voice_state = voice.IDLE
            self.pointer_pending = None
        outputs.append({"event": "settings", "settings": self.settings.to_dict()})
        return outputs

    # ---------------------------------------------------------- snapshot

    def snapshot(self) -> dict:
        grid = self.game.grid
        cells = [
            [_entry_dict(grid.entry_at(Position(r, c))) for c in range(1, grid.size + 1)]
            for r in range(1, grid.size + 1)
        ]
        pending = self.scan_state.pending
        return {
            "closed": self.closed,
            "completed": self.game.completed,
            "conflicts": [[p.row, p.col] for p in sorted(self.game.conflicts.positions())],
            "counter": self.counter,
            "grid": {"order": grid.order, "cells": cells},
            "scan": {
                "active": self.scan_state.active,
                "context": self.scan_context,
                "node": scanning.highlighted_node_id(self.scan_state, self._active_tree()),
                "pending": [pending.row, pending.col] if pending else None,
            },
            "seed": self.seed,
            "settings": self.settings.to_dict(),
            "voice": {
                "mode": self.voice_state.mode,
                "row": self.voice_state.row,
                "col": self.voice_state.col,
                "vocabulary": sorted(voice.vocabulary(self.voice_state)),
            },
        }

    # --------------------------------------------------------- save/load

    def save(self) -> str:
        puzzle = self.game.puzzle
        data = {
            "version": SAVE_FORMAT_VERSION,
            "settings": self.settings.to_dict(),
            "seed": self.seed,
            "counter": self.counter,
            "puzzle_text": dumps_grid(puzzle.grid, seed=puzzle.seed, difficulty=puzzle.difficulty),
            "solution_text": dumps_grid(puzzle.solution),
            "history": [
                {
                    "row": rec.pos.row,
                    "col": rec.pos.col,
                    "before": _entry_dict(rec.before),
                    "after": _entry_dict(rec.after),
                }
                for rec in self.game.history
            ],
            "scan": {
                "active": self.scan_state.active,
                "path": [[node_id, idx] for node_id, idx in self.scan_state.path],
                "cycles": self.scan_state.cycles,
                "pending": list(self.scan_state.pending) if self.scan_state.pending else None,
                "context": self.scan_context,
            },
            "voice": {
                "mode": self.voice_state.mode,
                "row": self.voice_state.row,
                "col": self.voice_state.col,
                "option": self.voice_state.option,
            },
            "pointer_pending": list(self.pointer_pending) if self.pointer_pending else None,
            "closed": self.closed,
            "was_completed": self._was_completed,
        }
        return canonical_json(data)


def _entry_from_dict(data: dict) -> Entry:
    return Entry(EntryKind(data["kind"]), data["value"])


def load(blob: str) -> Session:
    """Rebuild a session from ``Session.save`` output; raises LoadError."""
    try:
        data = json.loads(blob)
    except json.JSONDecodeError as exc:
        raise LoadError(f"save blob is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or data.get("version") != SAVE_FORMAT_VERSION:
        raise LoadError(
            f"unsupported save format version {data.get('version')!r}"
            if isinstance(data, dict)
            else "save blob must be a JSON object"
        )
    try:
        settings = Settings.from_dict(data["settings"]).check()
        clue_grid, puzzle_seed, difficulty = loads_grid(data["puzzle_text"])
        solution, _, _ = loads_grid(data["solution_text"])
        puzzle = Puzzle(
            grid=clue_grid,
            order=clue_grid.order,
            difficulty=difficulty,
            seed=puzzle_seed,
            clue_count=clue_grid.filled_count(),
            solution=solution,
        )
        history = tuple(
            MoveRecord(
                Position(rec["row"], rec["col"]),
                _entry_from_dict(rec["before"]),
                _entry_from_dict(rec["after"]),
            )
            for rec in data["history"]
        )
        session = Session(settings, data["seed"], _puzzle=puzzle)
        session.counter = data["counter"]
        session.game = replay_history(puzzle, history)
        session.scan_tree = scanning.build_scan_tree(session.game)
        scan = data["scan"]
        session.scan_context = scan["context"]
        pending = scan["pending"]
        session.scan_state = scanning.ScanState(
            active=scan["active"],
            path=tuple((node_id, idx) for node_id, idx in scan["path"]),
            cycles=scan["cycles"],
            pending=Position(*pending) if pending else None,
        )
        tree = session._active_tree()
        for node_id, _ in session.scan_state.path:
            if not tree.has_node(node_id):
                raise LoadError(f"scan path references unknown node {node_id!r}")
        vs = data["voice"]
        session.voice_state = voice.VoiceState(
            mode=vs["mode"], row=vs["row"], col=vs["col"], option=vs["option"]
        )
        pp = data["pointer_pending"]
        session.pointer_pending = Position(*pp) if pp else None
        session.closed = data["closed"]
        session._was_completed = data["was_completed"]
    except LoadError:
        raise
    except (KeyError, TypeError, ValueError, SudokuError) as exc:
        raise LoadError(f"corrupt save blob: {exc}") from None
    return session


def create_session(settings: Settings, seed: int) -> Session:
    return Session(settings, seed)


def replay(settings: Settings, seed: int, inputs) -> Session:
    """Fresh session with every input re-applied; used for log replay."""
    session = Session(settings, seed)
    for event in inputs:
        session.handle(event)
    return session
