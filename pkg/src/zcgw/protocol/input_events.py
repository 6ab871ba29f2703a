"""Input event codec (client -> instance).

Packet layout (integers big-endian):

    ┌───────┬─────────┬────────┬──────┬────────────────┬─────────┐
    │ magic │ version │ seq    │ kind │ client_time_ms │ payload │
    │ ZCIN  │ u8 = 1  │ u32    │ u8   │ u64            │ bytes   │
    └───────┴─────────┴────────┴──────┴────────────────┴─────────┘

Kind-specific payloads:
    KEY   (0): keycode u16, pressed u8 (1 press / 0 release)
    TEXT  (1): utf8_len u16, utf8 bytes
    TAP   (2): x u16, y u16
    SWIPE (3): x1 u16, y1 u16, x2 u16, y2 u16, duration_ms u16

seq is strictly increasing per session; duplicates are dropped by the
receiving state machine, never here.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from enum import IntEnum

from zcgw.protocol.errors import ProtocolError

MAGIC = b"ZCIN"
VERSION = 1

_HEADER = struct.Struct(">4sBIBQ")
HEADER_SIZE = _HEADER.size  # 18

KEY_ENTER = 13
KEY_BACKSPACE = 8


class InputKind(IntEnum):
    KEY = 0
    TEXT = 1
    TAP = 2
    SWIPE = 3


@dataclass(frozen=True)
class InputEvent:
    seq: int
    kind: InputKind
    client_time_ms: int
    keycode: int = 0
    pressed: bool = True
    text: str = ""
    x: int = 0
    y: int = 0
    x2: int = 0
    y2: int = 0
    duration_ms: int = 0


def key_event(seq: int, keycode: int, pressed: bool = True, client_time_ms: int = 0) -> InputEvent:
    return InputEvent(seq, InputKind.KEY, client_time_ms, keycode=keycode, pressed=pressed)


def text_event(seq: int, text: str, client_time_ms: int = 0) -> InputEvent:
    return InputEvent(seq, InputKind.TEXT, client_time_ms, text=text)


def tap_event(seq: int, x: int, y: int, client_time_ms: int = 0) -> InputEvent:
    return InputEvent(seq, InputKind.TAP, client_time_ms, x=x, y=y)


def swipe_event(
    seq: int, x1: int, y1: int, x2: int, y2: int, duration_ms: int, client_time_ms: int = 0
) -> InputEvent:
    return InputEvent(
        seq, InputKind.SWIPE, client_time_ms, x=x1, y=y1, x2=x2, y2=y2,
        duration_ms=duration_ms,
    )


def encode_input(event: InputEvent) -> bytes:
    if event.kind == InputKind.KEY:
        payload = struct.pack(">HB", event.keycode, 1 if event.pressed else 0)
    elif event.kind == InputKind.TEXT:
        raw = event.text.encode("utf-8")
        if len(raw) > 0xFFFF:
            raise ProtocolError("OVERFLOW", "text payload exceeds u16 length")
        payload = struct.pack(">H", len(raw)) + raw
    elif event.kind == InputKind.TAP:
        payload = struct.pack(">HH", event.x, event.y)
    elif event.kind == InputKind.SWIPE:
        payload = struct.pack(
            ">HHHHH", event.x, event.y, event.x2, event.y2, event.duration_ms
        )
    else:
        raise ProtocolError("UNKNOWN_KIND", f"kind {event.kind}")
    header = _HEADER.pack(MAGIC, VERSION, event.seq, int(event.kind), event.client_time_ms)
    return header + payload


def decode_input(data: bytes) -> InputEvent:
    if len(data) < HEADER_SIZE:
        raise ProtocolError("TRUNCATED", "input packet shorter than header")
    magic, version, seq, kind, client_time_ms = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise ProtocolError("BAD_MAGIC", f"expected ZCIN, got {magic!r}")
    if version != VERSION:
        raise ProtocolError("BAD_VERSION", f"unsupported version {version}")
    body = data[HEADER_SIZE:]

    if kind == InputKind.KEY:
        if len(body) != 3:
            raise ProtocolError("TRUNCATED", f"KEY payload is {len(body)} bytes, want 3")
        keycode, pressed = struct.unpack(">HB", body)
        return InputEvent(seq, InputKind.KEY, client_time_ms, keycode=keycode,
                          pressed=bool(pressed))
    if kind == InputKind.TEXT:
        if len(body) < 2:
            raise ProtocolError("TRUNCATED", "TEXT payload missing length")
        (tlen,) = struct.unpack_from(">H", body)
        if len(body) != 2 + tlen:
            raise ProtocolError("TRUNCATED", f"TEXT body is {len(body) - 2} bytes, want {tlen}")
        try:
            text = body[2:].decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ProtocolError("CORRUPT_PAYLOAD", f"invalid utf-8: {exc}") from exc
        return InputEvent(seq, InputKind.TEXT, client_time_ms, text=text)
    if kind == InputKind.TAP:
        if len(body) != 4:
            raise ProtocolError("TRUNCATED", f"TAP payload is {len(body)} bytes, want 4")
        x, y = struct.unpack(">HH", body)
        return InputEvent(seq, InputKind.TAP, client_time_ms, x=x, y=y)
    if kind == InputKind.SWIPE:
        if len(body) != 10:
            raise ProtocolError("TRUNCATED", f"SWIPE payload is {len(body)} bytes, want 10")
        x1, y1, x2, y2, dur = struct.unpack(">HHHHH", body)
        return InputEvent(seq, InputKind.SWIPE, client_time_ms, x=x1, y=y1, x2=x2, y2=y2,
                          duration_ms=dur)
    raise ProtocolError("UNKNOWN_KIND", f"kind byte {kind}")
