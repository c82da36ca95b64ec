"""Small shared helpers: deterministic RNG derivation and bit packing."""
from __future__ import annotations

import numpy as np


def derive_rng(master_seed: int, *path: int) -> np.random.Generator:
    """Return a generator keyed by a master seed plus an index path.

    Identical (master_seed, path) pairs always yield the same stream, and
    distinct paths yield independent streams, so per-trial generators can be
    handed out without coordinating callers.
    """
    return np.random.default_rng([int(master_seed), *[int(x) for x in path]])


def pack_uints(values, width: int) -> bytes:
    """Pack non-negative integers into a byte string at `width` bits each."""
    if width <= 0:
        raise ValueError("width must be positive")
    vals = np.asarray(values, dtype=np.uint64)
    if vals.size == 0:
        return b""
    bits = np.zeros(vals.size * width, dtype=np.uint8)
    for b in range(width):
        # most significant bit of each value first
        bits[b::width] = (vals >> np.uint64(width - 1 - b)) & np.uint64(1)
    return np.packbits(bits).tobytes()


def unpack_uints(blob: bytes, width: int, count: int) -> np.ndarray:
    """Inverse of pack_uints for a known element count."""
    if width <= 0:
        raise ValueError("width must be positive")
    bits = np.unpackbits(np.frombuffer(blob, dtype=np.uint8), count=count * width)
    out = np.zeros(count, dtype=np.uint64)
    for b in range(width):
        out = (out << np.uint64(1)) | bits[b::width].astype(np.uint64)
    return out.astype(np.int64)


def bitmap_to_str(mask: np.ndarray) -> str:
    """Render a boolean array as a left-to-right 0/1 string."""
    return "".join("1" if b else "0" for b in mask)


def str_to_bitmap(bits: str) -> np.ndarray:
    return np.frombuffer(bits.encode("ascii"), dtype=np.uint8) == ord("1")
