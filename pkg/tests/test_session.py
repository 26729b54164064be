from __future__ import annotations

import pytest

from sudoku_access.engine import Position, SplitMix64
from sudoku_access.errors import LoadError, SettingsError
from sudoku_access.jsonio import dumps_jsonl
from sudoku_access.session import (
    Session,
    Settings,
    create_session,
    dumps_settings,
    load,
    loads_settings,
    replay,
)

TICK = {"input": "tick"}
PRESS = {"input": "switch"}


def switch_session(seed=42, **overrides) -> Session:
    return Session(Settings(**overrides), seed)


def drive(session, events):
    outputs = []
    for e in events:
        outputs.append(session.handle(e))
    return outputs


def events_of(outputs, name):
    return [e for batch in outputs for e in batch if e["event"] == name]


# ----------------------------------------------------------- creation

def test_create_session_is_seed_deterministic():
    a = create_session(Settings(), 42)
    b = create_session(Settings(), 42)
    assert a.snapshot() == b.snapshot()


def test_easy_order3_meets_band():
    s = create_session(Settings(difficulty="easy"), 7)
    assert s.game.puzzle.clue_count >= 36


def test_voice_device_requires_order_3():
    with pytest.raises(SettingsError) as info:
        create_session(Settings(order=2, input_device="voice"), 1)
    assert "input_device" in info.value.fields


def test_settings_file_round_trip():
    s = Settings(order=2, input_device="pointer", scan_dwell_ms=500)
    assert loads_settings(dumps_settings(s)) == s
    with pytest.raises(SettingsError):
        loads_settings("{not json")
    with pytest.raises(SettingsError):
        loads_settings('{"bogus_field": 1}')


def test_default_settings_match_documentation():
    s = Settings()
    assert (s.order, s.difficulty, s.scan_dwell_ms, s.scan_repeat_cycles) == (3, "easy", 800, 2)
    assert s.scan_sound is True
    assert s.input_device == "switch"


# ------------------------------------------------------ switch driving

def test_figure_walk_places_digit_through_session():
    s = switch_session()
    # activate, then walk: group, band, row, cell, then keypad digit 1
    outputs = drive(s, [PRESS, TICK, PRESS, PRESS, PRESS, PRESS, PRESS])
    grid_events = events_of(outputs, "grid")
    assert len(grid_events) == 1
    change = grid_events[0]["changes"][0]
    assert change["kind"] == "user"
    assert change["value"] == 1
    pos = Position(change["row"], change["col"])
    assert not s.game.puzzle.grid.is_clue(pos)
    assert s.game.grid.value_at(pos) == 1


def test_scan_timeout_surfaces_scan_stopped():
    s = switch_session(scan_repeat_cycles=1)
    outputs = drive(s, [PRESS, TICK, TICK, TICK])
    assert events_of(outputs, "scan-stopped")
    assert not s.scan_state.active


def test_mode_isolation_switch_session_rejects_voice_and_pointer():
    s = switch_session()
    before = s.snapshot()
    for event in ({"input": "voice", "token": "3"}, {"input": "pointer", "node": "menu:new"}):
        (out,) = [s.handle(event)]
        assert out[0]["event"] == "error"
        assert out[0]["code"] == "wrong-device"
    after = s.snapshot()
    assert before == after


def test_mode_isolation_voice_session_rejects_switch():
    s = Session(Settings(input_device="voice"), 5)
    out = s.handle(PRESS)
    assert out[0]["code"] == "wrong-device"
    out = s.handle(TICK)
    assert out[0]["code"] == "wrong-device"


# ----------------------------------------------------------- commands

def test_undo_on_empty_history_is_an_error_event():
    s = switch_session()
    out = s.handle({"input": "command", "action": "undo"})
    assert out == [
        {"event": "error", "code": "nothing-to-undo", "message": "nothing to undo"}
    ]


def test_solve_command_completes_grid_and_fires_completed_once():
    s = switch_session()
    outputs = s.handle({"input": "command", "action": "solve"})
    kinds = [e["event"] for e in outputs]
    assert kinds == ["grid", "completed"]
    assert s.game.completed
    assert outputs[0]["completed"] is True
    assert outputs[0]["conflicts"] == []
    # solving again changes nothing and must not re-fire completed
    again = s.handle({"input": "command", "action": "solve"})
    assert [e["event"] for e in again] == ["grid"]
    assert again[0]["changes"] == []


def test_solve_fills_user_entries_so_clear_still_works():
    s = switch_session()
    s.handle({"input": "command", "action": "solve"})
    assert len(s.game.history) > 0
    out = s.handle({"input": "command", "action": "clear"})
    assert s.game.grid == s.game.puzzle.grid
    assert out[0]["completed"] is False


def test_completed_refires_after_undo_and_refill():
    s = switch_session()
    s.handle({"input": "command", "action": "solve"})
    out = s.handle({"input": "command", "action": "undo"})
    assert not s.game.completed
    assert events_of([out], "completed") == []
    out = s.handle({"input": "command", "action": "solve"})
    assert events_of([out], "completed") == [{"event": "completed"}]


def test_new_game_changes_puzzle_deterministically():
    s1 = switch_session(seed=9)
    s2 = switch_session(seed=9)
    first = s1.game.puzzle
    for s in (s1, s2):
        s.handle({"input": "command", "action": "new"})
    assert s1.game.puzzle != first
    assert s1.game.puzzle == s2.game.puzzle
    assert s1.counter == 1


def test_clue_preservation_across_events():
    s = switch_session(seed=3)
    clues = s.game.puzzle.grid.clues
    rng = SplitMix64(4)
    menu = ("solve", "undo", "clear", "undo")
    for i in range(60):
        if rng.below(3) == 0:
            s.handle({"input": "command", "action": menu[rng.below(len(menu))]})
        else:
            s.handle(PRESS if rng.below(2) else TICK)
    assert s.game.puzzle.grid.clues == clues
    for pos in clues:
        assert s.game.grid.is_clue(pos)


def test_exit_closes_session_and_further_events_error():
    s = switch_session()
    out = s.handle({"input": "command", "action": "exit"})
    assert out == [{"event": "closed"}]
    out = s.handle(TICK)
    assert out[0]["code"] == "closed"


# -------------------------------------------------------------- voice

def test_voice_entry_places_digit():
    s = Session(Settings(input_device="voice"), 11)
    target = None
    for pos in s.game.grid.positions():
        if s.game.grid.value_at(pos) == 0:
            target = pos
            break
    script = [str(target.row), "yes", str(target.col), "yes", "7"]
    outputs = drive(s, [{"input": "voice", "token": t} for t in script])
    grid_events = events_of(outputs, "grid")
    assert len(grid_events) == 1
    assert s.game.grid.value_at(target) == 7
    # every voice input also reports the dialogue status
    assert all(events_of([o], "voice") for o in outputs)


def test_voice_place_on_clue_is_error_event():
    s = Session(Settings(input_device="voice"), 11)
    clue = next(iter(sorted(s.game.puzzle.grid.clues)))
    script = [str(clue.row), "yes", str(clue.col), "yes", "1"]
    outputs = drive(s, [{"input": "voice", "token": t} for t in script])
    errors = events_of(outputs, "error")
    assert errors and errors[0]["code"] == "immutable-cell"
    assert s.game.grid == s.game.puzzle.grid


def test_voice_solve_code_completes_game():
    s = Session(Settings(input_device="voice"), 11)
    outputs = s.handle({"input": "voice", "token": "12"})
    assert events_of([outputs], "completed")
    assert s.game.completed


def test_voice_settings_difficulty_change():
    s = Session(Settings(input_device="voice"), 11)
    for token in ("14", "1", "2"):
        out = s.handle({"input": "voice", "token": token})
    settings_events = events_of([out], "settings")
    assert settings_events[0]["settings"]["difficulty"] == "medium"
    assert s.settings.difficulty == "medium"


def test_voice_cannot_switch_order_away_from_3():
    s = Session(Settings(input_device="voice"), 11)
    for token in ("14", "3", "2"):
        out = s.handle({"input": "voice", "token": token})
    errors = events_of([out], "error")
    assert errors and errors[0]["code"] == "settings"
    assert s.settings.order == 3


# ------------------------------------------------------------- pointer

def test_pointer_place_and_menu():
    s = Session(Settings(input_device="pointer"), 13)
    target = None
    for pos in s.game.grid.positions():
        if s.game.grid.value_at(pos) == 0:
            target = pos
            break
    out = s.handle({"input": "pointer", "node": f"cell:{target.row},{target.col}"})
    assert out == []
    out = s.handle({"input": "pointer", "node": "key:4"})
    assert events_of([out], "grid")
    assert s.game.grid.value_at(target) == 4
    out = s.handle({"input": "pointer", "node": "key:9"})
    assert out[0]["code"] == "no-cell-selected"
    out = s.handle({"input": "pointer", "node": "menu:undo"})
    assert s.game.grid.value_at(target) == 0
    out = s.handle({"input": "pointer", "node": "nowhere"})
    assert out[0]["code"] == "unknown-node"


def test_pointer_setting_value_updates_settings():
    s = Session(Settings(input_device="pointer"), 13)
    out = s.handle({"input": "pointer", "node": "setval:scan_dwell_ms:1200"})
    assert events_of([out], "settings")
    assert s.settings.scan_dwell_ms == 1200


# ------------------------------------------------------------ settings

def test_update_settings_dwell_change_emits_event():
    s = switch_session()
    out = s.update_settings({"scan_dwell_ms": 900})
    assert out == [{"event": "settings", "settings": s.settings.to_dict()}]
    assert s.settings.scan_dwell_ms == 900


def test_update_settings_rejects_bad_values_without_applying():
    s = switch_session()
    out = s.update_settings({"scan_dwell_ms": 50})
    assert out[0]["event"] == "error"
    assert s.settings.scan_dwell_ms == 800


def test_update_settings_order_change_starts_new_game():
    s = switch_session()
    out = s.update_settings({"order": 2})
    kinds = [e["event"] for e in out]
    assert "grid" in kinds and "settings" in kinds
    assert s.game.grid.order == 2
    grid_event = [e for e in out if e["event"] == "grid"][0]
    assert grid_event["order"] == 2


def test_device_switch_resets_machines():
    s = switch_session()
    s.handle(PRESS)
    assert s.scan_state.active
    s.update_settings({"input_device": "pointer"})
    assert not s.scan_state.active


def test_settings_scan_from_switch_mode():
    s = switch_session()
    s.handle(PRESS)  # activate
    s.handle(TICK)   # grid
    s.handle(TICK)   # menu
    s.handle(PRESS)  # descend into menu: new highlighted
    for _ in range(4):
        s.handle(TICK)  # clear, solve, undo, settings
    out = s.handle(PRESS)  # choose settings: context switches
    assert s.scan_context == "settings"
    s.handle(TICK)  # difficulty item
    s.handle(PRESS)  # open value scan
    s.handle(TICK)  # medium
    out = s.handle(PRESS)
    assert events_of([out], "settings")
    assert s.settings.difficulty == "medium"
    # leave via the done item
    while True:
        snap_node = s.snapshot()["scan"]["node"]
        if snap_node == "settings:done":
            break
        s.handle(TICK)
    s.handle(PRESS)
    assert s.scan_context == "main"


# ----------------------------------------------------- replay and save

def mixed_script(length=200) -> list[dict]:
    rng = SplitMix64(2468)
    commands = ("undo", "clear", "solve", "new", "undo", "undo")
    script = []
    for i in range(length):
        roll = rng.below(12)
        if roll < 6:
            script.append(TICK)
        elif roll < 10:
            script.append(PRESS)
        else:
            script.append({"input": "command", "action": commands[rng.below(len(commands))]})
    return script


def test_event_log_replay_reproduces_outputs_byte_for_byte():
    settings = Settings()
    s = Session(settings, 1729)
    for event in mixed_script():
        s.handle(event)
    replayed = replay(settings, 1729, [entry["input"] for entry in s.log])
    assert dumps_jsonl(replayed.log) == dumps_jsonl(s.log)
    assert replayed.snapshot() == s.snapshot()


def test_grid_diffs_apply_cleanly_to_previous_snapshot():
    s = switch_session(seed=77)
    cells = {}  # (row, col) -> (kind, value)
    snap = s.snapshot()
    for r, row in enumerate(snap["grid"]["cells"], start=1):
        for c, cell in enumerate(row, start=1):
            cells[(r, c)] = (cell["kind"], cell["value"])
    for event in mixed_script(120):
        for out in s.handle(event):
            if out["event"] != "grid":
                continue
            if out["order"] != s.game.grid.order:
                continue
            for change in out["changes"]:
                cells[(change["row"], change["col"])] = (change["kind"], change["value"])
    snap = s.snapshot()
    for r, row in enumerate(snap["grid"]["cells"], start=1):
        for c, cell in enumerate(row, start=1):
            assert cells[(r, c)] == (cell["kind"], cell["value"])


def test_save_load_round_trip_mid_game():
    s = switch_session(seed=55)
    for event in mixed_script(60):
        s.handle(event)
    blob = s.save()
    restored = load(blob)
    assert restored.snapshot() == s.snapshot()
    assert restored.game.history == s.game.history
    assert restored.save() == blob
    # both continue identically
    follow = [TICK, PRESS, TICK, {"input": "command", "action": "undo"}]
    for event in follow:
        assert restored.handle(event) == s.handle(event)


def test_load_rejects_garbage_and_bad_versions():
    with pytest.raises(LoadError):
        load("not json at all")
    with pytest.raises(LoadError):
        load('{"version": 99}')
    s = switch_session()
    blob = s.save()
    truncated = blob[: len(blob) // 2]
    with pytest.raises(LoadError):
        load(truncated)
