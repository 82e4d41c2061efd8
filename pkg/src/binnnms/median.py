"""Median center (majority vote) and inertia under the Hamming distance."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .binvec import BinaryVector, DimensionMismatch


@dataclass
class WeightedSample:
    """A nonempty set of equal-width binary vectors with positive weights."""

    points: list[BinaryVector]
    weights: np.ndarray | None = None

    def __post_init__(self):
        if not self.points:
            raise ValueError("sample must be nonempty")
        d = self.points[0].dim
        if any(p.dim != d for p in self.points):
            raise DimensionMismatch("all sample points must share one dimension")
        if self.weights is None:
            self.weights = np.ones(len(self.points))
        else:
            self.weights = np.asarray(self.weights, dtype=float)
            if self.weights.shape != (len(self.points),):
                raise ValueError("one weight per point required")
            if not (self.weights > 0).all():
                raise ValueError("weights must be positive")

    @property
    def dim(self) -> int:
        return self.points[0].dim

    def bit_matrix(self) -> np.ndarray:
        return np.stack([p.bits for p in self.points])


def majority_bits(bits: np.ndarray, weights: np.ndarray,
                  tie_bits: np.ndarray | None = None) -> np.ndarray:
    """Component-wise weighted majority over the rows of a 0/1 matrix.

    Exact ties take the corresponding bit of `tie_bits` when given, else 0.
    """
    ones = weights @ bits
    total = weights.sum()
    out = (2.0 * ones > total).astype(np.uint8)
    tied = np.isclose(2.0 * ones, total)
    if tie_bits is not None:
        out[tied] = tie_bits[tied]
    else:
        out[tied] = 0
    return out


def median_center(s: WeightedSample, tie_breaker: BinaryVector | None = None) -> BinaryVector:
    """The binary vector minimizing the weighted Hamming inertia of the sample.

    Equals the component-wise weighted majority vote; ties follow
    `tie_breaker`'s bit when supplied, else 0.
    """
    if tie_breaker is not None and tie_breaker.dim != s.dim:
        raise DimensionMismatch("tie_breaker dimension must match the sample")
    tie = tie_breaker.bits if tie_breaker is not None else None
    return BinaryVector(majority_bits(s.bit_matrix(), s.weights, tie))


def inertia(s: WeightedSample, x: BinaryVector) -> float:
    """Weighted sum of Hamming distances from the sample points to x."""
    if x.dim != s.dim:
        raise DimensionMismatch("x dimension must match the sample")
    mism = (s.bit_matrix() != x.bits).sum(axis=1)
    return float(s.weights @ mism)
