"""Binary gradient ascent: the median-shift recurrence over k1 nearest neighbors.

Each step replaces the current iterate with the component-wise majority vote
of its k1 nearest dataset points (ties keep the current iterate's bit, which
makes fixed points stable).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .binvec import BinaryVector, DimensionMismatch, pack_bits
from .ingest import Dataset
from .knn import knn_indices

FIXED_POINT = "fixed_point"
MAX_ITERATIONS = "max_iterations"
CYCLE = "cycle"

DEFAULT_J_MAX = 50


@dataclass(frozen=True)
class BgaConfig:
    k1: int
    j_max: int = DEFAULT_J_MAX

    def __post_init__(self):
        if self.k1 < 1:
            raise ValueError("k1 must be positive")
        if self.j_max < 1:
            raise ValueError("j_max must be at least 1")


@dataclass
class AscentTrajectory:
    """The iterate sequence x_0 .. x_J of one ascent and why it stopped."""

    iterates: list[BinaryVector]
    termination: str

    @property
    def steps(self) -> int:
        return len(self.iterates) - 1

    @property
    def endpoint(self) -> BinaryVector:
        return self.iterates[-1]


def _step_bits(data: Dataset, x_bits: np.ndarray, k1: int) -> np.ndarray:
    idx = knn_indices(data, pack_bits(x_bits), k1)
    ones = data.bits[idx].sum(axis=0, dtype=np.int64)
    out = np.where(2 * ones > k1, 1, 0).astype(np.uint8)
    tied = 2 * ones == k1
    out[tied] = x_bits[tied]
    return out


def median_shift_step(data: Dataset, x: BinaryVector, k1: int) -> BinaryVector:
    """Majority vote of the k1 nearest neighbors of x, ties keeping x's bits."""
    if x.dim != data.d:
        raise DimensionMismatch(f"point dim {x.dim} != dataset dim {data.d}")
    if not 1 <= k1 <= data.n:
        raise ValueError(f"k1 must be in [1, {data.n}], got {k1}")
    return BinaryVector(_step_bits(data, x.bits, k1))


def ascend(data: Dataset, x0: BinaryVector, cfg: BgaConfig,
           _cache: dict | None = None) -> AscentTrajectory:
    """Iterate the median shift from x0 until a fixed point, a 2-cycle, or j_max.

    Always takes at least one step; j_max counts total steps including the
    first. A 2-cycle (x_{j+1} == x_{j-1}) stops with cause "cycle" rather
    than burning the iteration budget.
    """
    if x0.dim != data.d:
        raise DimensionMismatch(f"candidate dim {x0.dim} != dataset dim {data.d}")
    if cfg.k1 > data.n:
        raise ValueError(f"k1 must be in [1, {data.n}], got {cfg.k1}")
    iterates = [x0]
    cur = x0.bits
    for _ in range(cfg.j_max):
        if _cache is not None:
            key = cur.tobytes()
            nxt = _cache.get(key)
            if nxt is None:
                nxt = _step_bits(data, cur, cfg.k1)
                _cache[key] = nxt
        else:
            nxt = _step_bits(data, cur, cfg.k1)
        iterates.append(BinaryVector(nxt))
        if np.array_equal(nxt, cur):
            return AscentTrajectory(iterates, FIXED_POINT)
        if len(iterates) >= 3 and np.array_equal(nxt, iterates[-3].bits):
            return AscentTrajectory(iterates, CYCLE)
        cur = nxt
    return AscentTrajectory(iterates, MAX_ITERATIONS)


def ascend_all(data: Dataset, candidates: list[BinaryVector],
               cfg: BgaConfig, workers: int | None = None) -> list[AscentTrajectory]:
    """Independent ascent per candidate, results in input order.

    Candidates may coincide with the dataset but need not. Steps are
    memoized across candidates: the map depends only on the current iterate,
    so trajectories that merge are computed once. With workers > 1 the
    ascents run on a thread pool (a duplicated cache entry is harmless).
    """
    cache: dict = {}
    if workers and workers > 1 and len(candidates) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda x0: ascend(data, x0, cfg, _cache=cache),
                                 candidates))
    return [ascend(data, x0, cfg, _cache=cache) for x0 in candidates]
