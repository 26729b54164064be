"""Headless protocol client.

Used by the test suite and by scripted drivers; the browser UI speaks
the identical message stream.  Server pushes are asynchronous, so the
client reads messages as they come; ``sync`` sends a state.get and
collects everything up to its snapshot, which (messages being handled
in order per connection) fences all previously sent inputs.
"""

from __future__ import annotations

import socket

from .protocol import Message, decode, encode


class GatewayClient:
    def __init__(self, host: str, port: int, timeout: float = 10.0):
        self.sock = socket.create_connection((host, port), timeout=timeout)
        self.reader = self.sock.makefile("r", encoding="utf-8", newline="\n")

    def close(self) -> None:
        try:
            self.sock.close()
        except OSError:
            pass

    def __enter__(self) -> "GatewayClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # ------------------------------------------------------------- wire

    def send(self, message: Message) -> None:
        self.sock.sendall(encode(message).encode("utf-8"))

    def next_message(self) -> Message:
        line = self.reader.readline()
        if not line:
            raise ConnectionError("server closed the connection")
        return decode(line)

    def messages_until(self, predicate) -> tuple[Message, list[Message]]:
        """(first message matching predicate, everything received before it)."""
        before: list[Message] = []
        while True:
            message = self.next_message()
            if predicate(message):
                return message, before
            before.append(message)

    # ------------------------------------------------------------ calls

    def create_session(self, settings: dict | None = None, seed: int = 0) -> tuple[str, dict]:
        self.send(Message("session.create", None, {"settings": settings or {}, "seed": seed}))
        message, _ = self.messages_until(
            lambda m: m.type in ("state.snapshot", "event.error")
        )
        if message.type == "event.error":
            raise RuntimeError(f"session.create failed: {message.payload}")
        return message.session, message.payload

    def send_press(self, session_id: str) -> None:
        self.send(Message("input.switch", session_id, {"kind": "press"}))

    def send_tick(self, session_id: str) -> None:
        """Inject a scan tick explicitly (replay/testing path)."""
        self.send(Message("input.switch", session_id, {"kind": "tick"}))

    def send_voice(self, session_id: str, token: str) -> None:
        self.send(Message("input.voice", session_id, {"token": token}))

    def send_pointer(self, session_id: str, node: str) -> None:
        self.send(Message("input.pointer", session_id, {"node": node}))

    def update_settings(self, session_id: str, settings: dict) -> None:
        self.send(Message("settings.update", session_id, {"settings": settings}))

    def close_session(self, session_id: str) -> None:
        self.send(Message("session.close", session_id, {}))

    def sync(self, session_id: str) -> tuple[dict, list[Message]]:
        """Snapshot plus every event pushed since the last sync."""
        self.send(Message("state.get", session_id, {}))
        snapshot, before = self.messages_until(
            lambda m: m.type == "state.snapshot" and m.session == session_id
        )
        return snapshot.payload, before
