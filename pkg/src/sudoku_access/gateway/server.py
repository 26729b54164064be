"""Socket service for sessions.

One process serves many connections; each connection may own several
sessions, addressed by the server-assigned ids "s1", "s2", ...  All
events for a session are funneled through its lock, so outputs keep
generation order; pushes share the connection's write lock.

Wall-clock time lives here and only here: while a scan is active a
per-session timer delivers ``{"input": "tick"}`` every
``scan_dwell_ms``, reading the current dwell each beat and stopping as
soon as scanning deactivates.  The core below stays tick-driven and
replayable.  For deterministic replays (tests, scripted clients) the
scheduler can be disabled and ticks injected explicitly through
``input.switch`` with ``{"kind": "tick"}``.
"""

from __future__ import annotations

import socket
import threading
import time

from ..errors import ProtocolError, SettingsError
from ..session import SCAN_DEVICES, Session, Settings
from .protocol import CLIENT_TYPES, Message, decode, encode, message_for_output


class _SessionSlot:
    def __init__(self, session: Session):
        self.session = session
        self.lock = threading.Lock()
        self.timer: threading.Thread | None = None


class _Connection:
    def __init__(self, server: "GatewayServer", sock: socket.socket):
        self.server = server
        self.sock = sock
        self.write_lock = threading.Lock()
        self.slots: dict[str, _SessionSlot] = {}
        self.next_id = 1

    def send(self, message: Message) -> None:
        data = encode(message).encode("utf-8")
        try:
            with self.write_lock:
                self.sock.sendall(data)
        except OSError:
            pass  # peer went away; the reader loop will wind down

    def send_outputs(self, session_id: str, outputs) -> None:
        for output in outputs:
            self.send(message_for_output(session_id, output))

    def run(self) -> None:
        try:
            reader = self.sock.makefile("r", encoding="utf-8", newline="\n")
            for line in reader:
                if not line.strip():
                    continue
                try:
                    message = decode(line)
                except ProtocolError as exc:
                    self.send(Message("event.error", None, {"code": "protocol", "message": str(exc)}))
                    continue
                self.dispatch(message)
        except OSError:
            pass
        finally:
            self.close()

    def close(self) -> None:
        for slot in self.slots.values():
            with slot.lock:
                slot.session.closed = True
        try:
            self.sock.close()
        except OSError:
            pass

    # -------------------------------------------------------- dispatch

    def dispatch(self, message: Message) -> None:
        handler = {
            "session.create": self.on_create,
            "input.switch": self.on_switch,
            "input.voice": self.on_voice,
            "input.pointer": self.on_pointer,
            "settings.update": self.on_settings_update,
            "state.get": self.on_state_get,
            "session.close": self.on_close,
        }.get(message.type)
        if handler is None:
            known = ", ".join(CLIENT_TYPES)
            self.send(
                Message(
                    "event.error",
                    message.session,
                    {"code": "unknown-type", "message": f"unknown type {message.type!r}; expected one of {known}"},
                )
            )
            return
        handler(message)

    def slot_for(self, message: Message) -> _SessionSlot | None:
        slot = self.slots.get(message.session or "")
        if slot is None:
            self.send(
                Message(
                    "event.error",
                    message.session,
                    {"code": "unknown-session", "message": f"no session {message.session!r}"},
                )
            )
        return slot

    def on_create(self, message: Message) -> None:
        payload = message.payload
        try:
            settings = Settings.from_dict(payload.get("settings", {}))
            session = Session(settings, int(payload.get("seed", 0)))
        except SettingsError as exc:
            self.send(Message("event.error", None, {"code": "settings", "message": str(exc), "fields": exc.fields}))
            return
        except (TypeError, ValueError) as exc:
            self.send(Message("event.error", None, {"code": "bad-payload", "message": str(exc)}))
            return
        session_id = f"s{self.next_id}"
        self.next_id += 1
        self.slots[session_id] = _SessionSlot(session)
        self.send(Message("state.snapshot", session_id, session.snapshot()))

    def handle_input(self, message: Message, event: dict) -> None:
        slot = self.slot_for(message)
        if slot is None:
            return
        with slot.lock:
            outputs = slot.session.handle(event)
        self.send_outputs(message.session, outputs)
        self.server.sync_timer(self, message.session, slot)

    def on_switch(self, message: Message) -> None:
        kind = message.payload.get("kind", "press")
        if kind not in ("press", "tick"):
            self.send(
                Message(
                    "event.error",
                    message.session,
                    {"code": "bad-payload", "message": "input.switch kind must be 'press' or 'tick'"},
                )
            )
            return
        self.handle_input(message, {"input": "switch" if kind == "press" else "tick"})

    def on_voice(self, message: Message) -> None:
        self.handle_input(message, {"input": "voice", "token": str(message.payload.get("token", ""))})

    def on_pointer(self, message: Message) -> None:
        self.handle_input(message, {"input": "pointer", "node": str(message.payload.get("node", ""))})

    def on_settings_update(self, message: Message) -> None:
        slot = self.slot_for(message)
        if slot is None:
            return
        new_values = message.payload.get("settings", {})
        with slot.lock:
            outputs = slot.session.update_settings(new_values)
        self.send_outputs(message.session, outputs)
        self.server.sync_timer(self, message.session, slot)

    def on_state_get(self, message: Message) -> None:
        slot = self.slot_for(message)
        if slot is None:
            return
        with slot.lock:
            snapshot = slot.session.snapshot()
        self.send(Message("state.snapshot", message.session, snapshot))

    def on_close(self, message: Message) -> None:
        self.handle_input(message, {"input": "command", "action": "exit"})


class GatewayServer:
    """Line-delimited JSON service; see the module docstring."""

    def __init__(
        self,
        host: str = "127.0.0.1",
        port: int = 0,
        tick_scheduling: bool = True,
        sleep=time.sleep,
    ):
        self.host = host
        self.requested_port = port
        self.tick_scheduling = tick_scheduling
        self.sleep = sleep
        self.port: int | None = None
        self._listener: socket.socket | None = None
        self._threads: list[threading.Thread] = []
        self._connections: list[_Connection] = []
        self._running = False

    def start(self) -> "GatewayServer":
        listener = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        listener.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        listener.bind((self.host, self.requested_port))
        listener.listen()
        self._listener = listener
        self.port = listener.getsockname()[1]
        self._running = True
        accept_thread = threading.Thread(target=self._accept_loop, daemon=True)
        accept_thread.start()
        self._threads.append(accept_thread)
        return self

    def _accept_loop(self) -> None:
        while self._running:
            try:
                sock, _ = self._listener.accept()
            except OSError:
                return
            connection = _Connection(self, sock)
            self._connections.append(connection)
            thread = threading.Thread(target=connection.run, daemon=True)
            thread.start()
            self._threads.append(thread)

    def stop(self) -> None:
        self._running = False
        if self._listener is not None:
            try:
                self._listener.close()
            except OSError:
                pass
        for connection in self._connections:
            connection.close()

    def wait(self) -> None:
        """Block until stopped (for the CLI serve command)."""
        try:
            while self._running:
                time.sleep(0.2)
        except KeyboardInterrupt:
            self.stop()

    # ------------------------------------------------------------ timers

    def sync_timer(self, connection: _Connection, session_id: str, slot: _SessionSlot) -> None:
        """Start a dwell timer when scanning just became active."""
        if not self.tick_scheduling:
            return
        with slot.lock:
            needed = self._timer_needed(slot.session)
            if not needed or (slot.timer is not None and slot.timer.is_alive()):
                return
            timer = threading.Thread(
                target=self._timer_loop, args=(connection, session_id, slot), daemon=True
            )
            slot.timer = timer
        timer.start()

    @staticmethod
    def _timer_needed(session: Session) -> bool:
        return (
            not session.closed
            and session.settings.input_device in SCAN_DEVICES
            and session.scan_state.active
        )

    def _timer_loop(self, connection: _Connection, session_id: str, slot: _SessionSlot) -> None:
        while self._running:
            with slot.lock:
                if not self._timer_needed(slot.session):
                    return
                dwell = slot.session.settings.scan_dwell_ms
            self.sleep(dwell / 1000.0)
            with slot.lock:
                if not self._running or not self._timer_needed(slot.session):
                    return
                outputs = slot.session.handle({"input": "tick"})
            connection.send_outputs(session_id, outputs)


def serve(host: str, port: int, tick_scheduling: bool = True) -> GatewayServer:
    """Bind and start; raises OSError when the port is taken."""
    return GatewayServer(host, port, tick_scheduling=tick_scheduling).start()
