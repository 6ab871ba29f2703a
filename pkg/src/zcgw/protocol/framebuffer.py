"""Rendered screen contents: the only data that ever leaves an instance."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

DEFAULT_WIDTH = 360
DEFAULT_HEIGHT = 640

_U16_MAX = 0xFFFF


class Orientation(IntEnum):
    PORTRAIT = 0
    LANDSCAPE = 1


@dataclass(frozen=True)
class Framebuffer:
    """RGBA8 screen pixels, row-major. Orientation is carried, never inferred."""

    width: int
    height: int
    orientation: Orientation
    pixels: bytes

    def __post_init__(self):
        if not (0 < self.width <= _U16_MAX) or not (0 < self.height <= _U16_MAX):
            raise ValueError(f"dimensions out of range: {self.width}x{self.height}")
        expected = self.width * self.height * 4
        if len(self.pixels) != expected:
            raise ValueError(
                f"pixel buffer is {len(self.pixels)} bytes, expected {expected}"
            )

    @classmethod
    def blank(
        cls,
        width: int = DEFAULT_WIDTH,
        height: int = DEFAULT_HEIGHT,
        orientation: Orientation = Orientation.PORTRAIT,
    ) -> "Framebuffer":
        return cls(width, height, orientation, bytes(width * height * 4))

    @classmethod
    def from_array(
        cls, arr: np.ndarray, orientation: Orientation = Orientation.PORTRAIT
    ) -> "Framebuffer":
        """Wrap an (height, width, 4) uint8 array."""
        if arr.ndim != 3 or arr.shape[2] != 4 or arr.dtype != np.uint8:
            raise ValueError("expected an (h, w, 4) uint8 array")
        return cls(arr.shape[1], arr.shape[0], orientation, arr.tobytes())

    def as_array(self) -> np.ndarray:
        """Read-only (height, width, 4) uint8 view of the pixels."""
        arr = np.frombuffer(self.pixels, dtype=np.uint8)
        return arr.reshape(self.height, self.width, 4)

    def same_shape(self, other: "Framebuffer") -> bool:
        return self.width == other.width and self.height == other.height
