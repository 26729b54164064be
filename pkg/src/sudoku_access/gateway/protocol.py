"""Wire protocol: one canonical JSON object per line over a socket.

Every message is an envelope ``{"payload": {...}, "session": id|null,
"type": "..."}`` (keys always sorted, compact separators, newline
terminated), so encode/decode round-trips byte for byte.

Client to server types: session.create, input.switch, input.voice,
input.pointer, settings.update, state.get, session.close.
Server to client: state.snapshot, event.highlight, event.grid,
event.completed, event.scan_stopped, event.settings, event.voice,
event.error, session.closed.  Unknown client types are answered with
event.error and the connection stays open.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import ProtocolError

CLIENT_TYPES = (
    "session.create",
    "input.switch",
    "input.voice",
    "input.pointer",
    "settings.update",
    "state.get",
    "session.close",
)

SERVER_TYPES = (
    "state.snapshot",
    "event.highlight",
    "event.grid",
    "event.completed",
    "event.scan_stopped",
    "event.settings",
    "event.voice",
    "event.error",
    "session.closed",
)

# session output event name -> server message type
_EVENT_TYPES = {
    "highlight": "event.highlight",
    "grid": "event.grid",
    "completed": "event.completed",
    "scan-stopped": "event.scan_stopped",
    "settings": "event.settings",
    "voice": "event.voice",
    "error": "event.error",
    "closed": "session.closed",
}


@dataclass(frozen=True)
class Message:
    type: str
    session: str | None = None
    payload: dict = field(default_factory=dict)


def encode(message: Message) -> str:
    """Canonical single-line form, newline terminated."""
    obj = {"payload": message.payload, "session": message.session, "type": message.type}
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def decode(line: str) -> Message:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ProtocolError("message must be a JSON object")
    msg_type = obj.get("type")
    if not isinstance(msg_type, str) or not msg_type:
        raise ProtocolError("message needs a string 'type'")
    session = obj.get("session")
    if session is not None and not isinstance(session, str):
        raise ProtocolError("'session' must be a string or null")
    payload = obj.get("payload", {})
    if not isinstance(payload, dict):
        raise ProtocolError("'payload' must be an object")
    return Message(type=msg_type, session=session, payload=payload)


def message_for_output(session_id: str, output: dict) -> Message:
    """Wrap one session output event as a server message."""
    msg_type = _EVENT_TYPES.get(output["event"])
    if msg_type is None:
        raise ProtocolError(f"unmapped output event {output['event']!r}")
    payload = {k: v for k, v in output.items() if k != "event"}
    return Message(type=msg_type, session=session_id, payload=payload)
