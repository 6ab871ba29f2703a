"""Frame stream codec.

Packet layout (integers big-endian):

    ┌───────┬─────────┬──────────┬───────┬────────┬─────────────┬──────────┬─────────────┬─────────┐
    │ magic │ version │ frame_id │ width │ height │ orientation │ encoding │ payload_len │ payload │
    │ ZCFS  │ u8 = 1  │ u32      │ u16   │ u16    │ u8          │ u8       │ u32         │ bytes   │
    └───────┴─────────┴──────────┴───────┴────────┴─────────────┴──────────┴─────────────┴─────────┘

Encodings: 0 = RAW_RGBA8, 1 = PNG, 2 = DELTA_XOR_RLE. A delta packet can
only be applied to the immediately preceding frame (frame_id - 1), so a
raw or PNG keyframe is emitted at least every KEYFRAME_INTERVAL frames and
as the first frame after every (re)connect.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from enum import IntEnum
from typing import Optional

import numpy as np

from zcgw.protocol import png_codec
from zcgw.protocol.delta import decode_diff, encode_diff_bounded, xor_bytes
from zcgw.protocol.errors import ProtocolError
from zcgw.protocol.framebuffer import Framebuffer, Orientation

MAGIC = b"ZCFS"
VERSION = 1
KEYFRAME_INTERVAL = 30

_HEADER = struct.Struct(">4sBIHHBBI")
HEADER_SIZE = _HEADER.size  # 19

_U32_MAX = 0xFFFFFFFF


class Encoding(IntEnum):
    RAW_RGBA8 = 0
    PNG = 1
    DELTA_XOR_RLE = 2


@dataclass(frozen=True)
class FramePacket:
    frame_id: int
    width: int
    height: int
    orientation: Orientation
    encoding: Encoding
    payload: bytes

    def to_bytes(self) -> bytes:
        return (
            _HEADER.pack(
                MAGIC,
                VERSION,
                self.frame_id,
                self.width,
                self.height,
                int(self.orientation),
                int(self.encoding),
                len(self.payload),
            )
            + self.payload
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> "FramePacket":
        if len(data) < HEADER_SIZE:
            raise ProtocolError("CORRUPT_PAYLOAD", "frame packet shorter than header")
        magic, version, frame_id, width, height, orientation, encoding, plen = (
            _HEADER.unpack_from(data)
        )
        if magic != MAGIC:
            raise ProtocolError("BAD_MAGIC", f"expected ZCFS, got {magic!r}")
        if version != VERSION:
            raise ProtocolError("BAD_VERSION", f"unsupported version {version}")
        if len(data) != HEADER_SIZE + plen:
            raise ProtocolError(
                "CORRUPT_PAYLOAD",
                f"payload_len {plen} disagrees with packet size {len(data)}",
            )
        try:
            orient = Orientation(orientation)
        except ValueError:
            raise ProtocolError("CORRUPT_PAYLOAD", f"unknown orientation {orientation}")
        try:
            enc = Encoding(encoding)
        except ValueError:
            raise ProtocolError("CORRUPT_PAYLOAD", f"unknown encoding {encoding}")
        return cls(frame_id, width, height, orient, enc, data[HEADER_SIZE:])


def encode_frame(
    frame: Framebuffer,
    prev: Optional[Framebuffer],
    frame_id: int,
    png: bool = False,
    keyframe_interval: int = KEYFRAME_INTERVAL,
) -> FramePacket:
    """Encode one frame, choosing delta vs keyframe.

    A delta is produced only when a previous frame exists, frame_id does
    not land on a keyframe slot, and the delta comes out smaller than raw
    pixels; otherwise the frame goes out raw (or PNG in snapshot mode).
    """
    if not (0 <= frame_id <= _U32_MAX):
        raise ProtocolError("OVERFLOW", f"frame_id {frame_id} exceeds u32")
    raw_len = frame.width * frame.height * 4
    if raw_len > _U32_MAX:
        raise ProtocolError("OVERFLOW", "raw payload exceeds u32 length")
    if prev is not None and not frame.same_shape(prev):
        raise ProtocolError(
            "DIMENSION_MISMATCH",
            f"prev is {prev.width}x{prev.height}, frame is {frame.width}x{frame.height}",
        )

    if png:
        payload = png_codec.encode_png(frame)
        if len(payload) > _U32_MAX:
            raise ProtocolError("OVERFLOW", "PNG payload exceeds u32 length")
        encoding = Encoding.PNG
    elif prev is None or (keyframe_interval and frame_id % keyframe_interval == 0):
        payload = frame.pixels
        encoding = Encoding.RAW_RGBA8
    else:
        diff = xor_bytes(prev.pixels, frame.pixels)
        delta = encode_diff_bounded(diff, raw_len)
        if delta is None:
            payload = frame.pixels
            encoding = Encoding.RAW_RGBA8
        else:
            payload = delta
            encoding = Encoding.DELTA_XOR_RLE

    return FramePacket(
        frame_id, frame.width, frame.height, frame.orientation, encoding, payload
    )


def decode_frame(packet: FramePacket, prev: Optional[Framebuffer]) -> Framebuffer:
    """Exact inverse of encode_frame for a well-formed packet."""
    raw_len = packet.width * packet.height * 4

    if packet.encoding == Encoding.RAW_RGBA8:
        if len(packet.payload) != raw_len:
            raise ProtocolError(
                "CORRUPT_PAYLOAD",
                f"raw payload is {len(packet.payload)} bytes, expected {raw_len}",
            )
        return Framebuffer(packet.width, packet.height, packet.orientation, packet.payload)

    if packet.encoding == Encoding.PNG:
        frame = png_codec.decode_png(packet.payload, packet.orientation)
        if frame.width != packet.width or frame.height != packet.height:
            raise ProtocolError(
                "CORRUPT_PAYLOAD",
                f"PNG is {frame.width}x{frame.height}, header says "
                f"{packet.width}x{packet.height}",
            )
        return frame

    # DELTA_XOR_RLE
    if prev is None:
        raise ProtocolError("MISSING_BASE_FRAME", "delta packet without a base frame")
    if prev.width != packet.width or prev.height != packet.height:
        raise ProtocolError(
            "MISSING_BASE_FRAME",
            f"base frame is {prev.width}x{prev.height}, packet needs "
            f"{packet.width}x{packet.height}",
        )
    diff = decode_diff(packet.payload, raw_len)
    pixels = np.bitwise_xor(np.frombuffer(prev.pixels, dtype=np.uint8), diff).tobytes()
    return Framebuffer(packet.width, packet.height, packet.orientation, pixels)


class FrameDecoder:
    """Stateful receive side of a frame stream.

    Tracks the last decoded frame so deltas can be applied, refuses
    out-of-order or non-adjacent deltas, and requires the first packet
    of the stream to be a keyframe.
    """

    def __init__(self):
        self.last_frame: Optional[Framebuffer] = None
        self.last_frame_id: Optional[int] = None

    def feed(self, packet: FramePacket) -> Framebuffer:
        if self.last_frame_id is not None and packet.frame_id <= self.last_frame_id:
            raise ProtocolError(
                "CORRUPT_PAYLOAD",
                f"frame_id went backwards: {packet.frame_id} after {self.last_frame_id}",
            )
        if packet.encoding == Encoding.DELTA_XOR_RLE:
            if self.last_frame is None or self.last_frame_id != packet.frame_id - 1:
                raise ProtocolError(
                    "MISSING_BASE_FRAME",
                    f"delta {packet.frame_id} but decoder holds "
                    f"{self.last_frame_id}",
                )
            frame = decode_frame(packet, self.last_frame)
        else:
            frame = decode_frame(packet, None)
        self.last_frame = frame
        self.last_frame_id = packet.frame_id
        return frame

    def feed_bytes(self, data: bytes) -> Framebuffer:
        return self.feed(FramePacket.from_bytes(data))
