"""Clustering quality indices (NMI, adjusted Rand) and the quantization error."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ingest import Dataset

NMI_NORMALIZATIONS = ("geometric", "arithmetic", "max")


@dataclass
class Contingency:
    """Cross-tabulation of two labelings over the same points."""

    table: np.ndarray
    n: int

    @property
    def row_marginals(self) -> np.ndarray:
        return self.table.sum(axis=1)

    @property
    def col_marginals(self) -> np.ndarray:
        return self.table.sum(axis=0)


def contingency(truth, pred) -> Contingency:
    truth, pred = list(truth), list(pred)
    if len(truth) != len(pred):
        raise ValueError(f"label lengths differ: {len(truth)} vs {len(pred)}")
    if not truth:
        raise ValueError("labelings must be nonempty")
    rows = {u: i for i, u in enumerate(dict.fromkeys(truth))}
    cols = {v: j for j, v in enumerate(dict.fromkeys(pred))}
    table = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for u, v in zip(truth, pred):
        table[rows[u], cols[v]] += 1
    return Contingency(table, len(truth))


def _entropy(counts: np.ndarray, n: int) -> float:
    p = counts[counts > 0] / n
    return float(-(p * np.log(p)).sum())


def nmi(truth, pred, normalization: str = "geometric") -> float:
    """Normalized mutual information between two labelings.

    Default normalization is the geometric mean of the entropies; arithmetic
    and max are available. A degenerate pair where either partition carries
    zero entropy scores 1.0 only when both are single-cluster, else 0.0.
    """
    if normalization not in NMI_NORMALIZATIONS:
        raise ValueError(f"unknown normalization {normalization!r}")
    ct = contingency(truth, pred)
    hu = _entropy(ct.row_marginals, ct.n)
    hv = _entropy(ct.col_marginals, ct.n)
    if hu == 0.0 or hv == 0.0:
        return 1.0 if hu == hv == 0.0 else 0.0
    nz = ct.table[ct.table > 0]
    pij = nz / ct.n
    outer = np.outer(ct.row_marginals, ct.col_marginals)[ct.table > 0] / (ct.n ** 2)
    mi = float((pij * np.log(pij / outer)).sum())
    if normalization == "geometric":
        denom = np.sqrt(hu * hv)
    elif normalization == "arithmetic":
        denom = 0.5 * (hu + hv)
    else:
        denom = max(hu, hv)
    return min(1.0, max(0.0, mi / denom))


def arand(truth, pred) -> float:
    """Hubert-Arabie adjusted Rand index; 1 for identical partitions,
    about 0 for independent ones, negative for systematic disagreement."""
    ct = contingency(truth, pred)

    def comb2(x):
        return x * (x - 1) / 2.0

    sum_ij = comb2(ct.table.astype(float)).sum()
    sum_a = comb2(ct.row_marginals.astype(float)).sum()
    sum_b = comb2(ct.col_marginals.astype(float)).sum()
    pairs = comb2(float(ct.n))
    expected = sum_a * sum_b / pairs if pairs else 0.0
    max_index = 0.5 * (sum_a + sum_b)
    if max_index == expected:
        # both all-singletons or both one cluster: partitions are identical
        return 1.0
    return float((sum_ij - expected) / (max_index - expected))


def quantization_error(data: Dataset, result) -> float:
    """Mean Hamming distance from each point to its cluster's prototype.

    `result` is anything with `labels` and `prototypes` (a ClusterLabeling
    or a KModesResult).
    """
    labels = np.asarray(result.labels)
    protos = result.prototypes
    if labels.shape[0] != data.n:
        raise ValueError("one label per data point required")
    if labels.max() >= len(protos):
        raise ValueError(f"missing prototype for cluster {int(labels.max())}")
    proto_bits = np.stack([p.bits for p in protos])
    mism = (data.bits != proto_bits[labels]).sum(axis=1)
    return float(mism.mean())
