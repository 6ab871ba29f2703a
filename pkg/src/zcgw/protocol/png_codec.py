"""Lossless PNG wrapping for framebuffers (snapshot access path)."""

from __future__ import annotations

import io

from PIL import Image

from zcgw.protocol.errors import ProtocolError
from zcgw.protocol.framebuffer import Framebuffer, Orientation


def encode_png(frame: Framebuffer) -> bytes:
    img = Image.frombytes("RGBA", (frame.width, frame.height), frame.pixels)
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def decode_png(data: bytes, orientation: Orientation = Orientation.PORTRAIT) -> Framebuffer:
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except Exception as exc:
        raise ProtocolError("CORRUPT_PAYLOAD", f"PNG decode failed: {exc}") from exc
    if img.mode != "RGBA":
        img = img.convert("RGBA")
    return Framebuffer(img.width, img.height, orientation, img.tobytes())
