import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from binnnms.binvec import BinaryVector, DimensionMismatch
from binnnms.median import WeightedSample, inertia, median_center
from oracles import best_center_ref, inertia_ref, majority_ref


def bv(s):
    return BinaryVector.from_string(s)


def sample(strings, weights=None):
    return WeightedSample([bv(s) for s in strings], weights)


class TestWeightedSample:
    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            WeightedSample([])

    def test_mixed_dims_rejected(self):
        with pytest.raises(DimensionMismatch):
            sample(["01", "011"])

    def test_nonpositive_weight_rejected(self):
        with pytest.raises(ValueError):
            sample(["01", "11"], [1.0, 0.0])


class TestMedianCenter:
    def test_singleton(self):
        assert median_center(sample(["1011"])) == bv("1011")

    def test_majority(self):
        assert median_center(sample(["10", "11", "01"])) == bv("11")

    def test_tie_defaults_to_zero(self):
        assert median_center(sample(["00", "11"])) == bv("00")

    def test_tie_follows_tie_breaker(self):
        assert median_center(sample(["00", "11"]), tie_breaker=bv("10")) == bv("10")

    def test_weighted_majority(self):
        # weight 3 on "01" outvotes two copies of "10"
        s = sample(["01", "10", "10"], [3.0, 1.0, 1.0])
        assert median_center(s) == bv("01")


class TestInertia:
    def test_zero_at_own_point(self):
        assert inertia(sample(["0110"]), bv("0110")) == 0.0

    def test_small_case(self):
        assert inertia(sample(["10", "11", "01"]), bv("11")) == 2.0

    def test_weighted(self):
        assert inertia(sample(["0", "1"], [2.0, 1.0]), bv("0")) == 1.0

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatch):
            inertia(sample(["01"]), bv("011"))


vector_sets = st.integers(1, 6).flatmap(
    lambda d: st.lists(st.lists(st.integers(0, 1), min_size=d, max_size=d),
                       min_size=1, max_size=10))


class TestProperties:
    @given(vector_sets, st.data())
    @settings(max_examples=150)
    def test_exhaustive_optimality(self, rows, data):
        weights = data.draw(st.lists(
            st.floats(0.1, 10.0, allow_nan=False), min_size=len(rows),
            max_size=len(rows)))
        s = WeightedSample([BinaryVector(r) for r in rows], np.array(weights))
        center = median_center(s)
        _, best_val = best_center_ref(rows, weights)
        assert inertia(s, center) <= best_val + 1e-9

    @given(vector_sets)
    def test_unit_weight_reduction(self, rows):
        s = WeightedSample([BinaryVector(r) for r in rows])
        assert median_center(s) == BinaryVector(majority_ref(rows))

    @given(vector_sets, st.data())
    def test_inertia_matches_reference(self, rows, data):
        weights = data.draw(st.lists(
            st.floats(0.1, 10.0), min_size=len(rows), max_size=len(rows)))
        x = data.draw(st.lists(st.integers(0, 1), min_size=len(rows[0]),
                               max_size=len(rows[0])))
        s = WeightedSample([BinaryVector(r) for r in rows], np.array(weights))
        assert inertia(s, BinaryVector(x)) == pytest.approx(
            inertia_ref(rows, weights, x))
