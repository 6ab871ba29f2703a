"""Binary wire protocol: frame streaming, input events, and lag probes."""

from zcgw.protocol.errors import ProtocolError
from zcgw.protocol.framebuffer import (
    DEFAULT_HEIGHT,
    DEFAULT_WIDTH,
    Framebuffer,
    Orientation,
)
from zcgw.protocol.delta import delta_decode, delta_encode
from zcgw.protocol.frames import (
    KEYFRAME_INTERVAL,
    Encoding,
    FrameDecoder,
    FramePacket,
    decode_frame,
    encode_frame,
)
from zcgw.protocol.input_events import (
    KEY_BACKSPACE,
    KEY_ENTER,
    InputEvent,
    InputKind,
    decode_input,
    encode_input,
    key_event,
    swipe_event,
    tap_event,
    text_event,
)
from zcgw.protocol.probes import Direction, ProbePacket, decode_probe, encode_probe

__all__ = [
    "ProtocolError",
    "Framebuffer",
    "Orientation",
    "DEFAULT_WIDTH",
    "DEFAULT_HEIGHT",
    "delta_encode",
    "delta_decode",
    "Encoding",
    "FramePacket",
    "FrameDecoder",
    "KEYFRAME_INTERVAL",
    "encode_frame",
    "decode_frame",
    "InputEvent",
    "InputKind",
    "KEY_ENTER",
    "KEY_BACKSPACE",
    "encode_input",
    "decode_input",
    "key_event",
    "text_event",
    "tap_event",
    "swipe_event",
    "Direction",
    "ProbePacket",
    "encode_probe",
    "decode_probe",
]
