"""Deterministic derivation of independent random streams from one seed.

Every stochastic component of a run (per-chain exploration, per-pair swap
draws, the even/odd parity sequence, per-copy sampling instances) pulls from
its own counter-based stream, keyed by purpose and index.  Outputs are then a
pure function of (seed, purpose, index, draw count), so the worker count and
scheduling order cannot change results.
"""

from __future__ import annotations

import zlib

import numpy as np

__all__ = ["StreamFamily"]


def _tag_to_int(tag) -> int:
    if isinstance(tag, (int, np.integer)):
        if tag < 0:
            raise ValueError(f"stream path entries must be non-negative, got {tag}")
        return int(tag)
    if isinstance(tag, str):
        # stable across processes and platforms, unlike hash()
        return zlib.crc32(tag.encode("utf-8"))
    raise TypeError(f"unsupported stream path entry: {tag!r}")


class StreamFamily:
    """Family of independent Philox streams addressed by a (tag, index...) path."""

    def __init__(self, seed: int):
        self.seed = int(seed)

    def stream(self, *path) -> np.random.Generator:
        """Return a fresh generator for this path; same path, same stream."""
        key = tuple(_tag_to_int(p) for p in path)
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=key)
        return np.random.Generator(np.random.Philox(ss))

    def child(self, *path) -> "StreamFamily":
        """Derive a sub-family (e.g. one per independent sampling instance)."""
        key = tuple(_tag_to_int(p) for p in path)
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=key)
        return StreamFamily(int(ss.generate_state(1, dtype=np.uint64)[0]))

    def uniform_block(self, tag: str, n: int) -> np.ndarray:
        """n uniforms from the stream at (tag,); convenience for parity draws."""
        return self.stream(tag).random(n)
