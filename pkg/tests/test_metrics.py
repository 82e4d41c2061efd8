import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from binnnms.binvec import BinaryVector
from binnnms.ingest import Dataset
from binnnms.labeling import ClusterLabeling
from binnnms.metrics import arand, contingency, nmi, quantization_error
from oracles import all_vectors, arand_ref, hamming_ref, nmi_ref


class TestContingency:
    def test_counts_and_marginals(self):
        ct = contingency([0, 0, 1, 1], [0, 0, 1, 2])
        assert ct.n == 4
        assert ct.table.sum() == 4
        assert list(ct.row_marginals) == [2, 2]
        assert list(ct.col_marginals) == [2, 1, 1]

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            contingency([0, 1], [0])

    def test_empty(self):
        with pytest.raises(ValueError):
            contingency([], [])


class TestNmi:
    def test_identical(self):
        assert nmi([0, 0, 1, 1], [0, 0, 1, 1]) == pytest.approx(1.0)

    def test_identical_up_to_relabeling(self):
        assert nmi([0, 0, 1, 1], [5, 5, 2, 2]) == pytest.approx(1.0)

    def test_independent(self):
        assert nmi([0, 0, 1, 1], [0, 1, 0, 1]) == pytest.approx(0.0, abs=1e-12)

    def test_derived_oracle_value(self):
        # frozen from the contingency oracle on the 2x3 table
        assert nmi([0, 0, 1, 1], [0, 0, 1, 2]) == pytest.approx(
            0.816496580927726, abs=1e-12)

    def test_degenerate_single_cluster(self):
        assert nmi([0, 0, 0], [1, 1, 1]) == 1.0
        assert nmi([0, 0, 1], [1, 1, 1]) == 0.0

    def test_normalization_options(self):
        t, p = [0, 0, 1, 1], [0, 0, 1, 2]
        for mode in ("geometric", "arithmetic", "max"):
            assert 0.0 <= nmi(t, p, mode) <= 1.0
        with pytest.raises(ValueError):
            nmi(t, p, "bogus")


class TestArand:
    def test_identical(self):
        assert arand([0, 0, 1, 1], [1, 1, 0, 0]) == pytest.approx(1.0)

    def test_single_cluster_pred(self):
        assert arand([0, 0, 1, 1], [0, 0, 0, 0]) == pytest.approx(0.0)

    def test_derived_oracle_value(self):
        # frozen from pair counting over all 6 pairs
        assert arand([0, 0, 1, 1], [0, 1, 1, 1]) == pytest.approx(0.0, abs=1e-12)

    def test_can_be_negative(self):
        assert arand([0, 0, 1, 1], [0, 1, 0, 1]) < 0.0


labelings = st.integers(2, 50).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(0, 5), min_size=n, max_size=n),
        st.lists(st.integers(0, 5), min_size=n, max_size=n)))


class TestOracleAgreement:
    @given(labelings)
    @settings(max_examples=300)
    def test_nmi_matches_reference(self, pair):
        t, p = pair
        assert nmi(t, p) == pytest.approx(nmi_ref(t, p), abs=1e-12)

    @given(labelings)
    @settings(max_examples=300)
    def test_arand_matches_reference(self, pair):
        t, p = pair
        assert arand(t, p) == pytest.approx(arand_ref(t, p), abs=1e-12)

    @given(labelings, st.data())
    @settings(max_examples=100)
    def test_relabeling_invariance(self, pair, data):
        t, p = pair
        perm = data.draw(st.permutations(range(6)))
        relabeled = [perm[x] for x in p]
        assert nmi(t, p) == nmi(t, relabeled)
        assert arand(t, p) == arand(t, relabeled)
        # argument symmetry holds to rounding (summation order differs)
        assert nmi(t, p) == pytest.approx(nmi(p, t), abs=1e-12)


def _labeling(labels, protos):
    return ClusterLabeling(np.array(labels),
                           [BinaryVector.from_string(s) for s in protos])


class TestQuantizationError:
    def test_zero_when_points_equal_prototypes(self):
        ds = Dataset(np.array([[0, 0], [1, 1]]))
        assert quantization_error(ds, _labeling([0, 1], ["00", "11"])) == 0.0

    def test_single_cluster(self):
        ds = Dataset(np.array([[0, 0], [1, 1]]))
        assert quantization_error(ds, _labeling([0, 0], ["00"])) == 1.0

    def test_missing_prototype(self):
        ds = Dataset(np.array([[0, 0], [1, 1]]))
        with pytest.raises(ValueError):
            quantization_error(ds, _labeling([0, 1], ["00"]))

    @given(st.integers(0, 1000))
    @settings(max_examples=40)
    def test_median_prototypes_are_optimal(self, seed):
        from binnnms.median import WeightedSample, median_center

        rng = np.random.default_rng(seed)
        n, d = int(rng.integers(2, 10)), int(rng.integers(1, 6))
        ds = Dataset(rng.integers(0, 2, size=(n, d)))
        labels = rng.integers(0, 2, size=n)
        if len(set(labels)) < 2:
            labels[0] = 1 - labels[0]
        protos = [median_center(WeightedSample(
            [ds.point(i) for i in np.flatnonzero(labels == j)]))
            for j in range(2)]
        best = quantization_error(ds, ClusterLabeling(labels, protos))
        for alt0 in all_vectors(d):
            for alt1 in all_vectors(d):
                alt = ClusterLabeling(labels, [BinaryVector(alt0),
                                               BinaryVector(alt1)])
                assert best <= quantization_error(ds, alt) + 1e-12
