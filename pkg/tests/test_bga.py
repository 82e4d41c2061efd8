import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from binnnms.bga import (
    CYCLE,
    FIXED_POINT,
    MAX_ITERATIONS,
    AscentTrajectory,
    BgaConfig,
    ascend,
    ascend_all,
    median_shift_step,
)
from binnnms.binvec import BinaryVector
from binnnms.ingest import Dataset
from oracles import step_ref


def dataset(strings):
    return Dataset(np.array([[int(c) for c in s] for s in strings]))


def bv(s):
    return BinaryVector.from_string(s)


class TestMedianShiftStep:
    def test_tie_keeps_current_bit(self):
        # neighbors of 000 at k1=2 are {000, 001}: third component ties
        ds = dataset(["000", "001", "011", "111"])
        assert median_shift_step(ds, bv("000"), 2) == bv("000")

    def test_full_majority(self):
        ds = dataset(["111", "110", "101", "011"])
        assert median_shift_step(ds, bv("000"), 4) == bv("111")

    def test_k1_one_is_nearest_point(self):
        ds = dataset(["010", "111"])
        assert median_shift_step(ds, bv("110"), 1) == bv("010")

    def test_bad_k1(self):
        ds = dataset(["00", "01"])
        with pytest.raises(ValueError):
            median_shift_step(ds, bv("00"), 3)


class TestAscend:
    def test_immediate_fixed_point(self):
        ds = dataset(["000", "001", "011", "111"])
        t = ascend(ds, bv("000"), BgaConfig(k1=2))
        assert [x.to01() for x in t.iterates] == ["000", "000"]
        assert t.termination == FIXED_POINT
        assert t.steps == 1

    def test_two_step_convergence(self):
        ds = dataset(["111", "110", "101", "011"])
        t = ascend(ds, bv("000"), BgaConfig(k1=4))
        assert [x.to01() for x in t.iterates] == ["000", "111", "111"]
        assert t.termination == FIXED_POINT

    def test_jmax_cap(self):
        ds = dataset(["111", "110", "101", "011"])
        t = ascend(ds, bv("000"), BgaConfig(k1=4, j_max=1))
        assert t.steps == 1
        assert t.termination == MAX_ITERATIONS

    def test_invalid_config(self):
        with pytest.raises(ValueError):
            BgaConfig(k1=0)
        with pytest.raises(ValueError):
            BgaConfig(k1=1, j_max=0)

    def test_fixed_point_stability(self):
        ds = dataset(["0011", "0010", "1100", "1101", "0111"])
        t = ascend(ds, bv("0000"), BgaConfig(k1=3))
        if t.termination == FIXED_POINT:
            again = ascend(ds, t.endpoint, BgaConfig(k1=3))
            assert again.termination == FIXED_POINT
            assert again.steps == 1
            assert again.endpoint == t.endpoint


class TestAscendAll:
    def test_order_and_values(self):
        ds = dataset(["111", "110", "101", "011"])
        trajs = ascend_all(ds, [bv("000"), bv("111")], BgaConfig(k1=4))
        assert [t.endpoint.to01() for t in trajs] == ["111", "111"]

    def test_empty_candidates(self):
        ds = dataset(["01"])
        assert ascend_all(ds, [], BgaConfig(k1=1)) == []

    def test_identical_points_all_fixed(self):
        ds = dataset(["0101"] * 5)
        trajs = ascend_all(ds, ds.points(), BgaConfig(k1=3))
        for t in trajs:
            assert t.termination == FIXED_POINT
            assert [x.to01() for x in t.iterates] == ["0101", "0101"]

    def test_threaded_matches_sequential(self):
        rng = np.random.default_rng(7)
        ds = Dataset(rng.integers(0, 2, size=(40, 12)))
        cands = ds.points()
        seq = ascend_all(ds, cands, BgaConfig(k1=5))
        par = ascend_all(ds, cands, BgaConfig(k1=5), workers=4)
        assert [t.endpoint for t in seq] == [t.endpoint for t in par]


instances = st.integers(2, 12).flatmap(
    lambda d: st.tuples(
        st.lists(st.lists(st.integers(0, 1), min_size=d, max_size=d),
                 min_size=1, max_size=25),
        st.lists(st.integers(0, 1), min_size=d, max_size=d)))


class TestProperties:
    @given(instances, st.data())
    @settings(max_examples=200)
    def test_step_matches_brute_force(self, inst, data):
        rows, x = inst
        k1 = data.draw(st.integers(1, len(rows)))
        ds = Dataset(np.array(rows))
        got = median_shift_step(ds, BinaryVector(x), k1)
        assert got == BinaryVector(step_ref(rows, x, k1))

    @given(instances, st.data())
    @settings(max_examples=60)
    def test_trajectory_consistency(self, inst, data):
        rows, x = inst
        k1 = data.draw(st.integers(1, len(rows)))
        ds = Dataset(np.array(rows))
        t = ascend(ds, BinaryVector(x), BgaConfig(k1=k1, j_max=20))
        # every consecutive pair obeys the recurrence, iterates stay binary
        for a, b in zip(t.iterates, t.iterates[1:]):
            assert b == median_shift_step(ds, a, k1)
            assert set(np.unique(b.bits)) <= {0, 1}
        if t.termination == FIXED_POINT:
            assert t.iterates[-1] == t.iterates[-2]
        if t.termination == CYCLE:
            assert t.iterates[-1] == t.iterates[-3]
