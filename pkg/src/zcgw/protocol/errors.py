"""Protocol error type shared by the codecs."""

from __future__ import annotations


class ProtocolError(Exception):
    """Codec failure carrying a stable machine-readable code.

    Codes: BAD_MAGIC, BAD_VERSION, UNKNOWN_KIND, TRUNCATED,
    CORRUPT_PAYLOAD, MISSING_BASE_FRAME, DIMENSION_MISMATCH,
    LENGTH_MISMATCH, OVERFLOW.
    """

    def __init__(self, code: str, message: str = ""):
        self.code = code
        super().__init__(f"[{code}] {message}" if message else code)
