"""Chat state machine for the mock app.

State is an event-sourced value: the only mutations are `ingest_message`
and `apply_input`, each of which appends one line to an NDJSON event log.
Replaying that log from `ChatState()` reproduces the exact revision and
digest, which is what makes snapshot/restore a plain file copy.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from zcgw.protocol.input_events import (
    KEY_BACKSPACE,
    KEY_ENTER,
    InputEvent,
    InputKind,
)

EXPLOIT_PREFIX = "EXPLOIT:"
MAX_BODY_BYTES = 1600


@dataclass
class ChatMessage:
    sender: str
    body: str
    received_at: int
    direction: str  # "in" | "out"
    no_preview: bool = False


@dataclass
class Conversation:
    peer: str
    messages: list[ChatMessage] = field(default_factory=list)


@dataclass
class ChatState:
    conversations: list[Conversation] = field(default_factory=list)
    active_index: int = 0
    compose_buffer: str = ""
    compromised: bool = False
    revision: int = 0
    # transport bookkeeping, deliberately outside the digest
    last_seq: dict[str, int] = field(default_factory=dict)

    def conversation_for(self, peer: str) -> Conversation:
        for conv in self.conversations:
            if conv.peer == peer:
                return conv
        conv = Conversation(peer)
        self.conversations.append(conv)
        return conv

    def active_conversation(self) -> Conversation | None:
        if not self.conversations:
            return None
        return self.conversations[self.active_index]

    def digest(self) -> str:
        doc = {
            "conversations": [
                {
                    "peer": c.peer,
                    "messages": [
                        [m.sender, m.body, m.received_at, m.direction, m.no_preview]
                        for m in c.messages
                    ],
                }
                for c in self.conversations
            ],
            "active_index": self.active_index,
            "compose_buffer": self.compose_buffer,
            "compromised": self.compromised,
            "revision": self.revision,
        }
        blob = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
        return hashlib.sha256(blob.encode()).hexdigest()


def ingest_message(state: ChatState, msg: ChatMessage) -> ChatState:
    """Append an inbound message; the exploit prefix flips the compromise flag.

    Never raises: untrusted content is stored verbatim and sanitized only
    at render time (unknown glyphs become boxes).
    """
    body = msg.body
    if len(body.encode("utf-8", "surrogatepass")) > MAX_BODY_BYTES:
        body = body.encode("utf-8", "surrogatepass")[:MAX_BODY_BYTES].decode("utf-8", "ignore")
    stored = ChatMessage(msg.sender, body, msg.received_at, "in", msg.no_preview)
    state.conversation_for(msg.sender).messages.append(stored)
    if body.startswith(EXPLOIT_PREFIX):
        state.compromised = True
    state.revision += 1
    return state


def apply_input(state: ChatState, event: InputEvent, source: str = "client") -> ChatState:
    """Apply one decoded input event; duplicate (source, seq) is a no-op."""
    if event.seq <= state.last_seq.get(source, -1):
        return state
    state.last_seq[source] = event.seq

    if event.kind == InputKind.TEXT:
        state.compose_buffer += event.text
        state.revision += 1
    elif event.kind == InputKind.KEY and event.pressed:
        if event.keycode == KEY_ENTER and state.compose_buffer:
            conv = state.active_conversation()
            if conv is not None:
                conv.messages.append(
                    ChatMessage(conv.peer, state.compose_buffer, event.client_time_ms, "out")
                )
                state.compose_buffer = ""
                state.revision += 1
        elif event.keycode == KEY_BACKSPACE and state.compose_buffer:
            state.compose_buffer = state.compose_buffer[:-1]
            state.revision += 1
    elif event.kind == InputKind.TAP:
        row = tap_row(event.y)
        if row is not None and row < len(state.conversations):
            state.active_index = row
            state.revision += 1
    # SWIPE and unhandled keys are received but change nothing
    return state


# Screen regions shared by apply_input and render: header, four
# conversation rows, message thread, compose line.
HEADER_HEIGHT = 32
LIST_TOP = 32
ROW_HEIGHT = 48
LIST_ROWS = 4
THREAD_TOP = LIST_TOP + LIST_ROWS * ROW_HEIGHT  # 224
COMPOSE_TOP = 608


def tap_row(y: int) -> int | None:
    """Conversation row index for a tap at `y`, or None outside the list."""
    if LIST_TOP <= y < THREAD_TOP:
        return (y - LIST_TOP) // ROW_HEIGHT
    return None


def message_log_entry(msg: ChatMessage) -> str:
    return json.dumps(
        {
            "t": "msg",
            "sender": msg.sender,
            "body": msg.body,
            "at": msg.received_at,
            "np": msg.no_preview,
        },
        sort_keys=True,
        separators=(",", ":"),
    )


def input_log_entry(event: InputEvent, source: str) -> str:
    return json.dumps(
        {
            "t": "in",
            "src": source,
            "seq": event.seq,
            "kind": int(event.kind),
            "time": event.client_time_ms,
            "keycode": event.keycode,
            "pressed": event.pressed,
            "text": event.text,
            "x": event.x,
            "y": event.y,
            "x2": event.x2,
            "y2": event.y2,
            "dur": event.duration_ms,
        },
        sort_keys=True,
        separators=(",", ":"),
    )


def apply_log_line(state: ChatState, line: str) -> ChatState:
    entry = json.loads(line)
    if entry["t"] == "msg":
        return ingest_message(
            state,
            ChatMessage(entry["sender"], entry["body"], entry["at"], "in", entry["np"]),
        )
    if entry["t"] == "in":
        event = InputEvent(
            seq=entry["seq"],
            kind=InputKind(entry["kind"]),
            client_time_ms=entry["time"],
            keycode=entry["keycode"],
            pressed=entry["pressed"],
            text=entry["text"],
            x=entry["x"],
            y=entry["y"],
            x2=entry["x2"],
            y2=entry["y2"],
            duration_ms=entry["dur"],
        )
        return apply_input(state, event, source=entry["src"])
    raise ValueError(f"unknown log entry type {entry['t']!r}")


def replay(lines: list[str]) -> ChatState:
    """Rebuild state from an NDJSON event log."""
    state = ChatState()
    for line in lines:
        if line.strip():
            apply_log_line(state, line)
    return state
