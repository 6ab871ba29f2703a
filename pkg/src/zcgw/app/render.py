"""Deterministic 360x640 portrait renderer for the mock app.

Every color channel byte comes from the set {0x00, 0x18, 0xE0, 0xFF}.
That set is closed under XOR up to {0x00, 0x18, 0xE0, 0xFF, 0xF8, 0xE7,
0x1F}, none of which are printable ASCII, so neither raw framebuffers
nor XOR deltas between them can ever contain a printable-ASCII
substring such as a message body. Alpha is always 0xFF.
"""

from __future__ import annotations

import numpy as np

from zcgw.app import font
from zcgw.app.chat import (
    COMPOSE_TOP,
    HEADER_HEIGHT,
    LIST_ROWS,
    LIST_TOP,
    ROW_HEIGHT,
    THREAD_TOP,
    ChatState,
)
from zcgw.kernels import blit_glyphs
from zcgw.protocol.framebuffer import DEFAULT_HEIGHT, DEFAULT_WIDTH, Framebuffer, Orientation

PALETTE_BYTES = frozenset({0x00, 0x18, 0xE0, 0xFF})

_BLACK = np.array([0x00, 0x00, 0x00, 0xFF], dtype=np.uint8)
_DARK = np.array([0x18, 0x18, 0x18, 0xFF], dtype=np.uint8)
_BLUE = np.array([0x18, 0x18, 0xE0, 0xFF], dtype=np.uint8)
_WHITE = np.array([0xFF, 0xFF, 0xFF, 0xFF], dtype=np.uint8)
_GRAY = np.array([0xE0, 0xE0, 0xE0, 0xFF], dtype=np.uint8)
_GREEN = np.array([0x18, 0xE0, 0x18, 0xFF], dtype=np.uint8)
_RED = np.array([0xE0, 0x18, 0x18, 0xFF], dtype=np.uint8)

COLS = DEFAULT_WIDTH // font.CELL_WIDTH  # 60 characters per line


def _text(canvas: np.ndarray, s: str, x: int, y: int, fg: np.ndarray) -> None:
    if s:
        blit_glyphs(canvas, font.ATLAS, font.encode_text(s), x, y, fg, _BLACK, False)


def _wrap(body: str, width: int) -> list[str]:
    lines = []
    for part in body.split("\n"):
        while len(part) > width:
            lines.append(part[:width])
            part = part[width:]
        lines.append(part)
    return lines


def render(state: ChatState, app_name: str = "chat") -> Framebuffer:
    canvas = np.zeros((DEFAULT_HEIGHT, DEFAULT_WIDTH, 4), dtype=np.uint8)
    canvas[:, :, 3] = 0xFF

    # header bar
    canvas[:HEADER_HEIGHT, :, :] = _BLUE
    canvas[:HEADER_HEIGHT, :, 3] = 0xFF
    _text_on(canvas, f"{app_name} r{state.revision}", 6, 12, _WHITE, _BLUE)
    if state.compromised:
        _text_on(canvas, "COMPROMISED", DEFAULT_WIDTH - 11 * font.CELL_WIDTH - 6, 12, _RED, _BLUE)

    # conversation list
    for row in range(LIST_ROWS):
        top = LIST_TOP + row * ROW_HEIGHT
        selected = state.conversations and row == state.active_index
        bg = _BLUE if selected else _DARK
        canvas[top : top + ROW_HEIGHT - 2, :, :] = bg
        if row < len(state.conversations):
            conv = state.conversations[row]
            _text_on(canvas, conv.peer[: COLS - 2], 6, top + 8, _WHITE, bg)
            if conv.messages:
                _text_on(canvas, conv.messages[-1].body[: COLS - 2], 6, top + 24, _GRAY, bg)
    if not state.conversations:
        _text_on(canvas, "no conversations", 6, LIST_TOP + 8, _GRAY, _DARK)

    # active thread: last lines of wrapped messages, newest at the bottom
    conv = state.active_conversation()
    if conv is not None:
        lines: list[tuple[str, bool]] = []
        for msg in conv.messages:
            marker = "<" if msg.direction == "in" else ">"
            for i, chunk in enumerate(_wrap(msg.body, COLS - 2)):
                lines.append((f"{marker} {chunk}" if i == 0 else f"  {chunk}", msg.direction == "out"))
        line_rows = (COMPOSE_TOP - THREAD_TOP) // 16  # 24 lines
        for i, (text, outbound) in enumerate(lines[-line_rows:]):
            _text(canvas, text, 6, THREAD_TOP + 4 + i * 16, _GREEN if outbound else _GRAY)

    # compose line
    canvas[COMPOSE_TOP:, :, :] = _DARK
    tail = state.compose_buffer[-(COLS - 2):]
    _text_on(canvas, f"> {tail}", 6, COMPOSE_TOP + 12, _WHITE, _DARK)

    return Framebuffer.from_array(canvas)


def _text_on(canvas: np.ndarray, s: str, x: int, y: int, fg: np.ndarray, bg: np.ndarray) -> None:
    if s:
        blit_glyphs(canvas, font.ATLAS, font.encode_text(s), x, y, fg, bg, True)
