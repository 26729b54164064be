"""End-to-end gateway tests over a real localhost socket."""

from __future__ import annotations

import pytest

from sudoku_access.engine import new_grid
from sudoku_access.gateway import GatewayClient, GatewayServer, Message
from sudoku_access.scanning import ScanConfig, build_scan_tree, simulate


@pytest.fixture()
def server():
    srv = GatewayServer(port=0, tick_scheduling=False).start()
    yield srv
    srv.stop()


@pytest.fixture()
def client(server):
    with GatewayClient("127.0.0.1", server.port) as c:
        yield c


def test_create_then_state_get_returns_81_cells(client):
    sid, snapshot = client.create_session({"order": 3}, seed=42)
    assert sid == "s1"
    cells = snapshot["grid"]["cells"]
    assert sum(len(row) for row in cells) == 81
    fetched, _ = client.sync(sid)
    assert fetched == snapshot


def test_switch_walk_places_digit_over_the_wire(client):
    sid, _ = client.create_session({"input_device": "switch"}, seed=42)
    client.send_press(sid)  # activate
    client.send_tick(sid)   # highlight board group
    for _ in range(5):      # group, band, row, cell, key 1
        client.send_press(sid)
    snapshot, events = client.sync(sid)
    grid_events = [m for m in events if m.type == "event.grid"]
    assert len(grid_events) == 1
    change = grid_events[0].payload["changes"][0]
    assert change["kind"] == "user" and change["value"] == 1
    row, col = change["row"], change["col"]
    assert snapshot["grid"]["cells"][row - 1][col - 1]["value"] == 1


def test_malformed_message_gets_error_and_connection_survives(client):
    client.sock.sendall(b"this is not json\n")
    message = client.next_message()
    assert message.type == "event.error"
    assert message.payload["code"] == "protocol"
    sid, snapshot = client.create_session({}, seed=1)
    assert snapshot["grid"]["order"] == 3


def test_unknown_type_and_unknown_session_are_soft_errors(client):
    client.send(Message("bogus.type", None, {}))
    assert client.next_message().payload["code"] == "unknown-type"
    client.send(Message("state.get", "s99", {}))
    assert client.next_message().payload["code"] == "unknown-session"


def test_invalid_settings_rejected_with_fields(client):
    client.send(Message("session.create", None, {"settings": {"order": 9}, "seed": 0}))
    message = client.next_message()
    assert message.type == "event.error"
    assert "order" in message.payload["fields"]


def test_one_connection_can_own_multiple_sessions(client):
    sid1, snap1 = client.create_session({"order": 2}, seed=5)
    sid2, snap2 = client.create_session({"order": 3}, seed=5)
    assert sid1 != sid2
    assert snap1["grid"]["order"] == 2
    assert snap2["grid"]["order"] == 3
    snap1_again, _ = client.sync(sid1)
    assert snap1_again["grid"]["order"] == 2


def test_settings_update_and_session_close(client):
    sid, _ = client.create_session({}, seed=9)
    client.update_settings(sid, {"scan_dwell_ms": 1200})
    snapshot, events = client.sync(sid)
    assert any(m.type == "event.settings" for m in events)
    assert snapshot["settings"]["scan_dwell_ms"] == 1200
    client.close_session(sid)
    message, _ = client.messages_until(lambda m: m.type == "session.closed")
    assert message.session == sid
    # inputs after close produce errors but keep the connection alive
    client.send_press(sid)
    assert client.next_message().payload["code"] == "closed"


def test_voice_session_over_the_wire(client):
    sid, _ = client.create_session({"input_device": "voice"}, seed=11)
    snapshot, _ = client.sync(sid)
    target = None
    for r, row in enumerate(snapshot["grid"]["cells"], start=1):
        for c, cell in enumerate(row, start=1):
            if cell["kind"] == "empty":
                target = (r, c)
                break
        if target:
            break
    for token in (str(target[0]), "yes", str(target[1]), "yes", "7"):
        client.send_voice(sid, token)
    snapshot, events = client.sync(sid)
    voice_events = [m for m in events if m.type == "event.voice"]
    assert len(voice_events) == 5
    assert snapshot["grid"]["cells"][target[0] - 1][target[1] - 1]["value"] == 7


def test_tick_scheduler_matches_simulation_order():
    """Wall-clock ticks must reproduce the simulated highlight order."""
    srv = GatewayServer(port=0, tick_scheduling=True).start()
    try:
        with GatewayClient("127.0.0.1", srv.port) as client:
            sid, _ = client.create_session(
                {"scan_dwell_ms": 200, "scan_repeat_cycles": 2}, seed=3
            )
            client.send_press(sid)  # activate scanning; timer takes over
            stopped, before = client.messages_until(
                lambda m: m.type == "event.scan_stopped"
            )
            got = [m.payload["node"] for m in before if m.type == "event.highlight"]
    finally:
        srv.stop()
    tree = build_scan_tree(new_grid(3))
    config = ScanConfig(dwell_ms=200, repeat_cycles=2)
    predicted = []
    for event in simulate(config, tree, [{"event": "tick"}] * 5):
        if event["event"] == "highlight":
            predicted.append(event["node"])
    assert got == predicted
