"""Reproducible random streams.

Every stream is a numpy ``Generator`` driven by the counter-based Philox4x64
bit generator, keyed by a ``SeedSequence`` built from ``(seed, stream_id)``
plus an optional spawn path.  The same key always yields the same draws, and
different keys yield independent streams.

Batch samplers split their replications into fixed-size blocks; block ``i``
draws from ``rng.spawn(i)``.  Since block boundaries never depend on the
number of worker threads, results are identical for any thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

GENERATOR_NAME = f"philox4x64-10/seedsequence (numpy {np.__version__})"
BLOCK_SIZE = 4096
THREADS_ENV = "SEGPROC_THREADS"

_U64 = 1 << 64


class RngStream:
    """A named, reproducible stream of uniforms and random signs."""

    def __init__(self, seed: int, stream_id: int = 0, path: Sequence[int] = ()):
        for name, value in (("seed", seed), ("stream_id", stream_id)):
            if not 0 <= int(value) < _U64:
                raise ValueError(f"{name} must be a 64-bit unsigned integer, got {value}")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        self.path = tuple(int(p) for p in path)
        key = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id, *self.path))
        self.generator = np.random.Generator(np.random.Philox(key))

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id}, path={self.path})"

    def uniform(self, size=None):
        """Uniform draws on [0, 1)."""
        return self.generator.random(size)

    def sign(self, size=None):
        """Equiprobable draws from {-1.0, +1.0}."""
        bits = self.generator.integers(0, 2, size=size)
        return 2.0 * bits - 1.0

    def spawn(self, index: int) -> "RngStream":
        """Child stream, independent of this one and of how much it has been consumed."""
        return RngStream(self.seed, self.stream_id, self.path + (int(index),))

    def meta(self) -> dict:
        return {
            "seed": self.seed,
            "stream_id": self.stream_id,
            "path": list(self.path),
            "generator": GENERATOR_NAME,
        }


def worker_count() -> int:
    """Worker threads allowed by ``SEGPROC_THREADS`` (0 or unset means one per CPU)."""
    raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
    try:
        requested = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a nonnegative integer, got {raw!r}")
    if requested < 0:
        raise ValueError(f"{THREADS_ENV} must be a nonnegative integer, got {raw!r}")
    return requested or (os.cpu_count() or 1)


def map_blocks(fn: Callable[[int, RngStream], object], total: int, rng: RngStream,
               block_size: int = BLOCK_SIZE) -> list:
    """Run ``fn(size, rng.spawn(i))`` over fixed blocks covering ``total`` items.

    Results come back in block order regardless of the thread count.
    """
    sizes = [min(block_size, total - start) for start in range(0, total, block_size)]
    jobs = [(size, rng.spawn(i)) for i, size in enumerate(sizes)]
    workers = min(worker_count(), len(jobs))
    if workers <= 1:
        return [fn(size, stream) for size, stream in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: fn(*job), jobs))
