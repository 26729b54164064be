from __future__ import annotations

from pathlib import Path

import pytest

from sudoku_access.errors import ProtocolError
from sudoku_access.gateway.protocol import (
    CLIENT_TYPES,
    SERVER_TYPES,
    Message,
    decode,
    encode,
    message_for_output,
)

GOLDEN = Path(__file__).parent / "golden" / "messages.jsonl"


def test_golden_fixtures_round_trip_byte_for_byte():
    lines = [l + "\n" for l in GOLDEN.read_text().splitlines() if l]
    seen_types = set()
    for line in lines:
        message = decode(line)
        assert encode(message) == line
        seen_types.add(message.type)
    # every documented message type appears in the fixtures
    assert seen_types == set(CLIENT_TYPES) | set(SERVER_TYPES)


def test_encode_is_canonical_regardless_of_payload_key_order():
    a = Message("state.get", "s1", {"b": 1, "a": 2})
    b = Message("state.get", "s1", {"a": 2, "b": 1})
    assert encode(a) == encode(b)


@pytest.mark.parametrize(
    "line",
    [
        "not json\n",
        "[1,2,3]\n",
        '{"payload":{}}\n',
        '{"type":"","payload":{}}\n',
        '{"type":"state.get","session":7}\n',
        '{"type":"state.get","payload":[]}\n',
    ],
)
def test_decode_rejects_malformed_lines(line):
    with pytest.raises(ProtocolError):
        decode(line)


def test_message_for_output_maps_every_session_event():
    cases = {
        "highlight": "event.highlight",
        "grid": "event.grid",
        "completed": "event.completed",
        "scan-stopped": "event.scan_stopped",
        "settings": "event.settings",
        "voice": "event.voice",
        "error": "event.error",
        "closed": "session.closed",
    }
    for event_name, msg_type in cases.items():
        message = message_for_output("s1", {"event": event_name, "extra": 1})
        assert message.type == msg_type
        assert message.session == "s1"
        assert message.payload == {"extra": 1}
    with pytest.raises(ProtocolError):
        message_for_output("s1", {"event": "mystery"})
