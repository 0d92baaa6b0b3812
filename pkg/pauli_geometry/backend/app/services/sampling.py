"""Counter-based uniform sampling of parameter boxes.

Sample i of a stream keyed by ``seed`` is built from the four 64-bit words of
Philox counter block i, so any split of the index range into batches (and any
number of worker threads) reproduces the same points.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, Tuple

import numpy as np

from app.core.config import settings

log = logging.getLogger("sampling")

WORDS_PER_SAMPLE = 4
MAX_SEED = 2**64 - 1


def uniform_block(seed: int, start: int, count: int, box: Sequence[Tuple[float, float]]) -> np.ndarray:
    """Samples start .. start+count-1 of the stream, mapped into ``box``."""
    d = len(box)
    gen = np.random.Generator(np.random.Philox(key=int(seed), counter=int(start)))
    u = gen.random((count, WORDS_PER_SAMPLE))[:, :d]
    lo = np.array([b[0] for b in box], dtype=float)
    hi = np.array([b[1] for b in box], dtype=float)
    return lo + u * (hi - lo)


def partition(n: int, batch_size: int) -> List[Tuple[int, int]]:
    return [(start, min(batch_size, n - start)) for start in range(0, n, batch_size)]


def tally(
    count_fn: Callable[[np.ndarray], np.ndarray],
    box: Sequence[Tuple[float, float]],
    n: int,
    seed: int,
    batch_size: int | None = None,
    workers: int | None = None,
) -> np.ndarray:
    """Sum integer count vectors ``count_fn(points)`` over n samples."""
    batch_size = batch_size or settings.MC_BATCH_SIZE
    workers = settings.MC_WORKERS if workers is None else workers
    blocks = partition(n, batch_size)

    def run(block: Tuple[int, int]) -> np.ndarray:
        start, count = block
        return np.asarray(count_fn(uniform_block(seed, start, count, box)), dtype=np.int64)

    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, blocks))
    else:
        parts = [run(b) for b in blocks]
    log.debug("sampled", extra={"samples": n, "batches": len(blocks), "workers": workers})
    return np.sum(parts, axis=0)
