"""Frame packet encode/decode and the stateful decoder."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zcgw.protocol import (
    Encoding,
    Framebuffer,
    FrameDecoder,
    FramePacket,
    Orientation,
    ProtocolError,
    decode_frame,
    encode_frame,
)
from zcgw.protocol.frames import HEADER_SIZE, KEYFRAME_INTERVAL


def _frame(seed: int, width: int = 24, height: int = 16) -> Framebuffer:
    rng = np.random.default_rng(seed)
    arr = rng.integers(0, 256, size=(height, width, 4), dtype=np.uint8)
    return Framebuffer.from_array(arr)


def _touch(frame: Framebuffer, *positions: int) -> Framebuffer:
    """A copy of `frame` with single pixels flipped: deltas stay small."""
    buf = bytearray(frame.pixels)
    for pos in positions:
        buf[pos] ^= 0x80
    return Framebuffer(frame.width, frame.height, frame.orientation, bytes(buf))


def test_header_layout():
    frame = Framebuffer(2, 2, Orientation.PORTRAIT, bytes(16))
    packet = encode_frame(frame, None, frame_id=7)
    raw = packet.to_bytes()
    assert raw[:4] == b"ZCFS"
    assert raw[4] == 1  # version
    assert raw[5:9] == (7).to_bytes(4, "big")
    assert raw[9:11] == (2).to_bytes(2, "big")
    assert raw[11:13] == (2).to_bytes(2, "big")
    assert raw[13] == Orientation.PORTRAIT
    assert raw[14] == Encoding.RAW_RGBA8
    assert raw[15:19] == (16).to_bytes(4, "big")
    assert len(raw) == HEADER_SIZE + 16


def test_first_frame_is_raw_keyframe():
    frame = _frame(0)
    packet = encode_frame(frame, None, frame_id=0)
    assert packet.encoding == Encoding.RAW_RGBA8
    assert packet.payload == frame.pixels


def test_keyframe_interval_forces_raw():
    prev = _frame(1)
    new = _touch(prev, 0, 100)
    mid = encode_frame(new, prev, frame_id=KEYFRAME_INTERVAL - 1)
    forced = encode_frame(new, prev, frame_id=KEYFRAME_INTERVAL)
    assert mid.encoding == Encoding.DELTA_XOR_RLE
    assert forced.encoding == Encoding.RAW_RGBA8


def test_delta_only_when_smaller():
    prev = _frame(3)
    same = encode_frame(prev, prev, frame_id=5)
    assert same.encoding == Encoding.DELTA_XOR_RLE
    assert len(same.payload) == 8  # one (N, 0) record
    noise = _frame(4)  # every byte differs somewhere: delta won't be smaller
    packet = encode_frame(noise, prev, frame_id=6)
    assert packet.encoding == Encoding.RAW_RGBA8


def test_png_round_trip():
    frame = _frame(5)
    packet = encode_frame(frame, None, frame_id=9, png=True)
    assert packet.encoding == Encoding.PNG
    assert decode_frame(packet, None) == frame


def test_decode_rejects_bad_magic():
    frame = _frame(6)
    raw = bytearray(encode_frame(frame, None, frame_id=0).to_bytes())
    raw[:4] = b"XXXX"
    with pytest.raises(ProtocolError) as err:
        FramePacket.from_bytes(bytes(raw))
    assert err.value.code == "BAD_MAGIC"


def test_decode_rejects_bad_version():
    raw = bytearray(encode_frame(_frame(7), None, frame_id=0).to_bytes())
    raw[4] = 9
    with pytest.raises(ProtocolError) as err:
        FramePacket.from_bytes(bytes(raw))
    assert err.value.code == "BAD_VERSION"


def test_decode_rejects_truncation():
    raw = encode_frame(_frame(8), None, frame_id=0).to_bytes()
    for cut in (0, 3, HEADER_SIZE - 1, len(raw) - 1):
        with pytest.raises(ProtocolError) as err:
            FramePacket.from_bytes(raw[:cut])
        assert err.value.code in ("TRUNCATED", "CORRUPT_PAYLOAD")


def test_delta_without_base_fails():
    prev = _frame(9)
    packet = encode_frame(_touch(prev, 5), prev, frame_id=3)
    assert packet.encoding == Encoding.DELTA_XOR_RLE
    with pytest.raises(ProtocolError) as err:
        decode_frame(packet, None)
    assert err.value.code == "MISSING_BASE_FRAME"


def test_delta_against_wrong_size_base_fails():
    prev = _frame(11)
    packet = encode_frame(_touch(prev, 5), prev, frame_id=3)
    small = _frame(13, width=8, height=8)
    with pytest.raises(ProtocolError) as err:
        decode_frame(packet, small)
    assert err.value.code == "MISSING_BASE_FRAME"


def test_frame_id_overflow_rejected():
    with pytest.raises(ProtocolError) as err:
        encode_frame(_frame(14), None, frame_id=1 << 32)
    assert err.value.code == "OVERFLOW"


def test_decoder_replays_stream():
    decoder = FrameDecoder()
    prev = None
    frame = _frame(20)
    saw_delta = False
    for i in range(8):
        packet = encode_frame(frame, prev, frame_id=i)
        saw_delta |= packet.encoding == Encoding.DELTA_XOR_RLE
        assert decoder.feed(packet) == frame
        prev = frame
        frame = _touch(frame, i, 64 + i)
    assert saw_delta


def test_decoder_rejects_stale_frame_id():
    decoder = FrameDecoder()
    first = _frame(30)
    decoder.feed(encode_frame(first, None, frame_id=5))
    with pytest.raises(ProtocolError):
        decoder.feed(encode_frame(_frame(31), first, frame_id=5))


def test_decoder_requires_contiguous_delta():
    decoder = FrameDecoder()
    first = _frame(32)
    decoder.feed(encode_frame(first, None, frame_id=0))
    gap = encode_frame(_touch(first, 7), first, frame_id=2)
    assert gap.encoding == Encoding.DELTA_XOR_RLE
    with pytest.raises(ProtocolError) as err:
        decoder.feed(gap)
    assert err.value.code == "MISSING_BASE_FRAME"


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=0, max_value=(1 << 32) - 1),
    st.integers(min_value=1, max_value=32),
    st.integers(min_value=1, max_value=32),
    st.sampled_from([Orientation.PORTRAIT, Orientation.LANDSCAPE]),
    st.booleans(),
    st.randoms(use_true_random=False),
)
def test_packet_round_trip_property(frame_id, width, height, orientation, png, rnd):
    pixels = bytes(rnd.getrandbits(8) for _ in range(width * height * 4))
    frame = Framebuffer(width, height, orientation, pixels)
    packet = encode_frame(frame, None, frame_id=frame_id, png=png)
    parsed = FramePacket.from_bytes(packet.to_bytes())
    assert parsed == packet
    assert decode_frame(parsed, None) == frame
