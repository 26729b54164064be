"""Process boundary: socket protocol, tick scheduling, CLI."""

from .client import GatewayClient
from .protocol import CLIENT_TYPES, SERVER_TYPES, Message, decode, encode, message_for_output
from .server import GatewayServer, serve

__all__ = [
    "CLIENT_TYPES",
    "GatewayClient",
    "GatewayServer",
    "Message",
    "SERVER_TYPES",
    "decode",
    "encode",
    "message_for_output",
    "serve",
]
