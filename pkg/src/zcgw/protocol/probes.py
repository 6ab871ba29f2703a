"""Round-trip lag probes.

    ┌───────┬───────────┬──────────┬────────────────┐
    │ magic │ direction │ probe_id │ client_time_ms │
    │ ZCPB  │ u8        │ u32 BE   │ u64 BE         │
    └───────┴───────────┴──────────┴────────────────┘

The ack echoes probe_id and client_time_ms verbatim, so the sender can
compute RTT on its own monotonic clock without any cross-device sync.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from enum import IntEnum

from zcgw.protocol.errors import ProtocolError

MAGIC = b"ZCPB"

_PACKET = struct.Struct(">4sBIQ")
PACKET_SIZE = _PACKET.size  # 17


class Direction(IntEnum):
    PROBE = 0
    ACK = 1


@dataclass(frozen=True)
class ProbePacket:
    direction: Direction
    probe_id: int
    client_time_ms: int

    def ack(self) -> "ProbePacket":
        """The acknowledgement for this probe: identical id and timestamp."""
        return ProbePacket(Direction.ACK, self.probe_id, self.client_time_ms)


def encode_probe(packet: ProbePacket) -> bytes:
    return _PACKET.pack(MAGIC, int(packet.direction), packet.probe_id,
                        packet.client_time_ms)


def decode_probe(data: bytes) -> ProbePacket:
    if len(data) != PACKET_SIZE:
        raise ProtocolError("TRUNCATED", f"probe packet is {len(data)} bytes, want {PACKET_SIZE}")
    magic, direction, probe_id, client_time_ms = _PACKET.unpack(data)
    if magic != MAGIC:
        raise ProtocolError("BAD_MAGIC", f"expected ZCPB, got {magic!r}")
    try:
        d = Direction(direction)
    except ValueError:
        raise ProtocolError("CORRUPT_PAYLOAD", f"unknown direction {direction}")
    return ProbePacket(d, probe_id, client_time_ms)
