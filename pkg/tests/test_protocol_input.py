"""Input event packets: fixed examples plus round-trip properties."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zcgw.protocol import (
    InputEvent,
    InputKind,
    ProtocolError,
    decode_input,
    encode_input,
    key_event,
    swipe_event,
    tap_event,
    text_event,
)


def test_tap_packet_is_22_bytes():
    raw = encode_input(tap_event(seq=1, x=100, y=200, client_time_ms=0))
    assert len(raw) == 22
    assert raw[:4] == b"ZCIN"
    assert raw[4] == 1  # version
    assert raw[5:9] == (1).to_bytes(4, "big")
    assert raw[9] == InputKind.TAP
    assert raw[10:18] == (0).to_bytes(8, "big")
    assert raw[18:20] == (100).to_bytes(2, "big")
    assert raw[20:22] == (200).to_bytes(2, "big")


def test_text_payload_is_length_prefixed_utf8():
    raw = encode_input(text_event(seq=2, text="hi", client_time_ms=5))
    assert raw[18:] == bytes.fromhex("0002" "6869")


def test_key_payload():
    raw = encode_input(key_event(seq=3, keycode=13, pressed=True, client_time_ms=0))
    assert raw[18:] == bytes.fromhex("000d" "01")


def test_swipe_payload():
    event = swipe_event(seq=4, x1=1, y1=2, x2=3, y2=4, duration_ms=250, client_time_ms=0)
    raw = encode_input(event)
    assert raw[18:] == bytes.fromhex("0001" "0002" "0003" "0004" "00fa")


def test_bad_magic_rejected():
    raw = bytearray(encode_input(tap_event(seq=1, x=0, y=0, client_time_ms=0)))
    raw[:4] = b"XXXX"
    with pytest.raises(ProtocolError) as err:
        decode_input(bytes(raw))
    assert err.value.code == "BAD_MAGIC"


def test_unknown_kind_rejected():
    raw = bytearray(encode_input(tap_event(seq=1, x=0, y=0, client_time_ms=0)))
    raw[9] = 200
    with pytest.raises(ProtocolError) as err:
        decode_input(bytes(raw))
    assert err.value.code == "UNKNOWN_KIND"


def test_truncation_rejected():
    raw = encode_input(text_event(seq=1, text="hello", client_time_ms=0))
    for cut in (3, 17, len(raw) - 1):
        with pytest.raises(ProtocolError) as err:
            decode_input(raw[:cut])
        assert err.value.code in ("TRUNCATED", "CORRUPT_PAYLOAD")


def test_invalid_utf8_rejected():
    raw = bytearray(encode_input(text_event(seq=1, text="ab", client_time_ms=0)))
    raw[20:22] = b"\xff\xfe"
    with pytest.raises(ProtocolError) as err:
        decode_input(bytes(raw))
    assert err.value.code == "CORRUPT_PAYLOAD"


_seq = st.integers(min_value=0, max_value=(1 << 32) - 1)
_time = st.integers(min_value=0, max_value=(1 << 64) - 1)
_coord = st.integers(min_value=0, max_value=65535)


@settings(max_examples=150, deadline=None)
@given(
    st.one_of(
        st.builds(key_event, seq=_seq, keycode=_coord, pressed=st.booleans(), client_time_ms=_time),
        st.builds(text_event, seq=_seq, text=st.text(max_size=80), client_time_ms=_time),
        st.builds(tap_event, seq=_seq, x=_coord, y=_coord, client_time_ms=_time),
        st.builds(
            swipe_event,
            seq=_seq,
            x1=_coord,
            y1=_coord,
            x2=_coord,
            y2=_coord,
            duration_ms=_coord,
            client_time_ms=_time,
        ),
    )
)
def test_round_trip_property(event: InputEvent):
    assert decode_input(encode_input(event)) == event
