"""Hot byte-level kernels: XOR-delta RLE codec and glyph blitting.

The frame streamer XOR-diffs consecutive 360x640 RGBA framebuffers
(921,600 bytes each) at 10 fps and run-length-encodes the result, and the
renderer blits thousands of 6x8 glyph cells per frame. Both loops are
compiled with numba when available.

Selection: setting ZCGW_PURE_NUMPY to a non-empty value forces the pure
numpy implementations; otherwise numba is used when importable. Both
paths are kept behind the same function names so callers never branch.

RLE record format over the XOR delta (all integers big-endian):

    ┌────────────┬─────────────┬───────────────────┐
    │ zero_run   │ literal_len │ literal bytes     │
    │ u32 BE     │ u32 BE      │ literal_len bytes │
    └────────────┴─────────────┴───────────────────┘

Records are greedy and maximal: zero_run counts the consecutive zero
bytes at the cursor, literal_len the consecutive non-zero bytes after
them. Concatenated records cover the input exactly.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_NUMPY = bool(os.environ.get("ZCGW_PURE_NUMPY"))

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

USING_NUMBA = _HAVE_NUMBA and not _FORCE_NUMPY


def rle_worst_case(n: int) -> int:
    """Output buffer size that any n-byte delta is guaranteed to fit in.

    Worst case is alternating zero/non-zero input: one 9-byte record per
    2 input bytes, plus one record of slack at either end.
    """
    return 5 * n + 32


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def _run_bounds(delta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split delta into maximal runs: returns (bounds, starts_nonzero).

    bounds[i]..bounds[i+1] is run i; runs alternate zero/non-zero.
    """
    nz = delta != 0
    changes = np.flatnonzero(nz[1:] != nz[:-1]) + 1
    bounds = np.empty(changes.size + 2, dtype=np.int64)
    bounds[0] = 0
    bounds[1:-1] = changes
    bounds[-1] = delta.size
    return bounds, bool(nz[0])


def rle_encode_numpy(delta: np.ndarray, out: np.ndarray) -> int:
    """Encode delta into out; returns encoded length or -1 if out is too small."""
    n = delta.size
    if n == 0:
        return 0
    bounds, first_nonzero = _run_bounds(delta)
    lengths = np.diff(bounds)
    n_runs = lengths.size

    # Pair runs into (zero_run, literal) records before touching out.
    if first_nonzero:
        zero_runs = [0]
        lit_lens = [int(lengths[0])]
        lit_starts = [0]
        i = 1
    else:
        zero_runs, lit_lens, lit_starts = [], [], []
        i = 0
    while i < n_runs:
        zero_runs.append(int(lengths[i]))
        if i + 1 < n_runs:
            lit_starts.append(int(bounds[i + 1]))
            lit_lens.append(int(lengths[i + 1]))
        else:
            lit_starts.append(n)
            lit_lens.append(0)
        i += 2

    total = 8 * len(zero_runs) + sum(lit_lens)
    if total > out.size:
        return -1

    pos = 0
    for z, l, s in zip(zero_runs, lit_lens, lit_starts):
        out[pos:pos + 4] = np.frombuffer(z.to_bytes(4, "big"), dtype=np.uint8)
        out[pos + 4:pos + 8] = np.frombuffer(l.to_bytes(4, "big"), dtype=np.uint8)
        pos += 8
        if l:
            out[pos:pos + l] = delta[s:s + l]
            pos += l
    return pos


def rle_decode_numpy(payload: np.ndarray, out: np.ndarray) -> int:
    """Decode payload into out; returns 0 on success, negative on corruption.

    -1 truncated record header, -2 output overrun, -3 truncated literal,
    -4 records do not cover the full output length.
    """
    pos = 0
    opos = 0
    n = payload.size
    while pos < n:
        if pos + 8 > n:
            return -1
        zero_run = int.from_bytes(payload[pos:pos + 4].tobytes(), "big")
        lit_len = int.from_bytes(payload[pos + 4:pos + 8].tobytes(), "big")
        pos += 8
        if opos + zero_run + lit_len > out.size:
            return -2
        if pos + lit_len > n:
            return -3
        out[opos:opos + zero_run] = 0
        opos += zero_run
        if lit_len:
            out[opos:opos + lit_len] = payload[pos:pos + lit_len]
            pos += lit_len
            opos += lit_len
    if opos != out.size:
        return -4
    return 0


def blit_glyphs_numpy(canvas, atlas, codes, x0, y0, fg, bg, draw_bg):
    """Blit a horizontal run of 6x8 glyph cells onto an HxWx4 canvas."""
    h, w = canvas.shape[0], canvas.shape[1]
    gh, gw = atlas.shape[1], atlas.shape[2]
    for ci in range(codes.size):
        gx = x0 + gw * ci
        if gx >= w or gx + gw <= 0 or y0 >= h or y0 + gh <= 0:
            continue
        ys, ye = max(y0, 0), min(y0 + gh, h)
        xs, xe = max(gx, 0), min(gx + gw, w)
        mask = atlas[codes[ci], ys - y0:ye - y0, xs - gx:xe - gx] != 0
        cell = canvas[ys:ye, xs:xe]
        cell[mask] = fg
        if draw_bg:
            cell[~mask] = bg


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:

    @njit(cache=True)
    def rle_encode_njit(delta, out):  # pragma: no cover - exercised via dispatch
        n = delta.size
        limit = out.size
        pos = 0
        opos = 0
        while pos < n:
            start = pos
            while pos < n and delta[pos] == 0:
                pos += 1
            zero_run = pos - start
            lit_start = pos
            while pos < n and delta[pos] != 0:
                pos += 1
            lit_len = pos - lit_start
            if opos + 8 + lit_len > limit:
                return -1
            out[opos] = (zero_run >> 24) & 0xFF
            out[opos + 1] = (zero_run >> 16) & 0xFF
            out[opos + 2] = (zero_run >> 8) & 0xFF
            out[opos + 3] = zero_run & 0xFF
            out[opos + 4] = (lit_len >> 24) & 0xFF
            out[opos + 5] = (lit_len >> 16) & 0xFF
            out[opos + 6] = (lit_len >> 8) & 0xFF
            out[opos + 7] = lit_len & 0xFF
            opos += 8
            for i in range(lit_len):
                out[opos + i] = delta[lit_start + i]
            opos += lit_len
        return opos

    @njit(cache=True)
    def rle_decode_njit(payload, out):  # pragma: no cover - exercised via dispatch
        n = payload.size
        limit = out.size
        pos = 0
        opos = 0
        while pos < n:
            if pos + 8 > n:
                return -1
            zero_run = (
                (np.int64(payload[pos]) << 24)
                | (np.int64(payload[pos + 1]) << 16)
                | (np.int64(payload[pos + 2]) << 8)
                | np.int64(payload[pos + 3])
            )
            lit_len = (
                (np.int64(payload[pos + 4]) << 24)
                | (np.int64(payload[pos + 5]) << 16)
                | (np.int64(payload[pos + 6]) << 8)
                | np.int64(payload[pos + 7])
            )
            pos += 8
            if opos + zero_run + lit_len > limit:
                return -2
            if pos + lit_len > n:
                return -3
            for i in range(zero_run):
                out[opos + i] = 0
            opos += zero_run
            for i in range(lit_len):
                out[opos + i] = payload[pos + i]
            pos += lit_len
            opos += lit_len
        if opos != limit:
            return -4
        return 0

    @njit(cache=True)
    def blit_glyphs_njit(canvas, atlas, codes, x0, y0, fg, bg, draw_bg):  # pragma: no cover
        h = canvas.shape[0]
        w = canvas.shape[1]
        gh = atlas.shape[1]
        gw = atlas.shape[2]
        for ci in range(codes.size):
            gx = x0 + gw * ci
            g = codes[ci]
            for ry in range(gh):
                y = y0 + ry
                if y < 0 or y >= h:
                    continue
                for rx in range(gw):
                    x = gx + rx
                    if x < 0 or x >= w:
                        continue
                    if atlas[g, ry, rx] != 0:
                        for c in range(4):
                            canvas[y, x, c] = fg[c]
                    elif draw_bg:
                        for c in range(4):
                            canvas[y, x, c] = bg[c]


if USING_NUMBA:
    rle_encode_into = rle_encode_njit
    rle_decode_into = rle_decode_njit
    blit_glyphs = blit_glyphs_njit
else:
    rle_encode_into = rle_encode_numpy
    rle_decode_into = rle_decode_numpy
    blit_glyphs = blit_glyphs_numpy

# Both paths, for the benchmark and the cross-check tests.
IMPLEMENTATIONS = {
    "numpy": (rle_encode_numpy, rle_decode_numpy, blit_glyphs_numpy),
}
if _HAVE_NUMBA:
    IMPLEMENTATIONS["numba"] = (rle_encode_njit, rle_decode_njit, blit_glyphs_njit)
