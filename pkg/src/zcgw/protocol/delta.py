"""XOR + run-length delta codec between equal-length byte buffers."""

from __future__ import annotations

import numpy as np

from zcgw import kernels
from zcgw.protocol.errors import ProtocolError


def xor_bytes(a: bytes, b: bytes) -> np.ndarray:
    if len(a) != len(b):
        raise ProtocolError(
            "LENGTH_MISMATCH", f"buffers differ in length: {len(a)} vs {len(b)}"
        )
    av = np.frombuffer(a, dtype=np.uint8)
    bv = np.frombuffer(b, dtype=np.uint8)
    return np.bitwise_xor(av, bv)


def delta_encode(base: bytes, new: bytes) -> bytes:
    """RLE over XOR(base, new); delta_decode(base, result) == new."""
    diff = xor_bytes(base, new)
    out = np.empty(kernels.rle_worst_case(diff.size), dtype=np.uint8)
    n = kernels.rle_encode_into(diff, out)
    assert n >= 0, "worst-case buffer sizing violated"
    return out[:n].tobytes()


def encode_diff_bounded(diff: np.ndarray, limit: int) -> bytes | None:
    """Encode an already-XORed diff, or return None if the result would
    reach `limit` bytes (used to fall back to raw keyframes)."""
    out = np.empty(min(kernels.rle_worst_case(diff.size), max(limit, 1)), dtype=np.uint8)
    n = kernels.rle_encode_into(diff, out)
    if n < 0 or n >= limit:
        return None
    return out[:n].tobytes()


def decode_diff(delta: bytes, out_len: int) -> np.ndarray:
    """Expand RLE records back into an out_len-byte XOR diff."""
    payload = np.frombuffer(delta, dtype=np.uint8)
    out = np.empty(out_len, dtype=np.uint8)
    rc = kernels.rle_decode_into(payload, out)
    if rc != 0:
        raise ProtocolError("CORRUPT_PAYLOAD", f"malformed RLE delta (code {rc})")
    return out


def delta_decode(base: bytes, delta: bytes) -> bytes:
    diff = decode_diff(delta, len(base))
    return np.bitwise_xor(np.frombuffer(base, dtype=np.uint8), diff).tobytes()
