"""k-modes baseline: dynamic-clusters minimization of the Hamming inertia."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .binvec import BinaryVector, hamming_to_rows, pack_bits
from .ingest import Dataset
from .median import majority_bits


@dataclass
class KModesResult:
    labels: np.ndarray
    prototypes: list[BinaryVector]
    total_inertia: float
    iterations: int
    seed: int
    inertia_history: list[float] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.prototypes)


def _distance_matrix(data: Dataset, proto_bits: np.ndarray) -> np.ndarray:
    pp = pack_bits(proto_bits)
    return np.stack([hamming_to_rows(data.packed, pp[j]) for j in range(len(pp))],
                    axis=1)


def kmodes_run(data: Dataset, k: int, seed: int = 0, max_iter: int = 100) -> KModesResult:
    """One k-modes run: alternate nearest-prototype assignment and majority update.

    Prototypes start from k distinct points sampled without replacement;
    assignment ties go to the lowest cluster index, vote ties keep the
    previous prototype's bit. A cluster that empties is reseeded with the
    point farthest from its prototype.
    """
    if not 1 <= k <= data.n:
        raise ValueError(f"k must be in [1, {data.n}], got {k}")
    distinct = np.unique(data.bits, axis=0)
    if k > distinct.shape[0]:
        raise ValueError(f"k = {k} exceeds the {distinct.shape[0]} distinct points")
    rng = np.random.default_rng(seed)
    proto = distinct[rng.choice(distinct.shape[0], size=k, replace=False)].copy()

    labels = np.full(data.n, -1, dtype=np.int64)
    history: list[float] = []
    iterations = 0
    for iterations in range(1, max_iter + 1):
        dist = _distance_matrix(data, proto)
        new_labels = dist.argmin(axis=1)  # argmin takes the lowest index on ties
        history.append(float(dist[np.arange(data.n), new_labels].sum()))
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for j in range(k):
            members = data.bits[labels == j]
            if members.shape[0] == 0:
                far = int(hamming_to_rows(data.packed, pack_bits(proto[j])).argmax())
                proto[j] = data.bits[far]
            else:
                proto[j] = majority_bits(members, np.ones(members.shape[0]), proto[j])

    dist = _distance_matrix(data, proto)
    total = float(dist[np.arange(data.n), labels].sum())
    return KModesResult(labels=labels,
                        prototypes=[BinaryVector(row) for row in proto],
                        total_inertia=total, iterations=iterations, seed=seed,
                        inertia_history=history)


def kmodes_repeated(data: Dataset, k: int, runs: int, base_seed: int = 0,
                    max_iter: int = 100) -> list[KModesResult]:
    """Independent restarts with seeds base_seed .. base_seed+runs-1."""
    if runs < 1:
        raise ValueError("runs must be at least 1")
    return [kmodes_run(data, k, seed=base_seed + r, max_iter=max_iter)
            for r in range(runs)]
