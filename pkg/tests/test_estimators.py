import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rodian import (
    RodianConfig,
    alpha_trimmed_mean,
    fixed_histogram_median,
    lmeds,
    median,
    rodian,
)
from rodian.datagen import ScenarioSpec, generate

from oracles import naive_lmeds, reference_rodian

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)
samples = st.lists(finite, min_size=1, max_size=60)


class TestRodian:
    def test_constant(self):
        out = rodian([4.25] * 9)
        assert out.estimate == 4.25
        assert out.degenerate_range
        assert out.chosen_b is None and not out.fell_back_to_median

    def test_single_value(self):
        out = rodian([-3.5])
        assert out.estimate == -3.5 and out.degenerate_range

    @pytest.mark.parametrize("pair", [(0.0, 1.0), (-7.0, 3.0), (1e-9, 2e-9)])
    def test_two_points_fall_back_to_midpoint(self, pair):
        out = rodian(pair)
        assert out.fell_back_to_median
        assert out.estimate == (pair[0] + pair[1]) / 2
        assert out.chosen_b is None and out.chosen_bin_bounds is None

    def test_empty(self):
        with pytest.raises(ValueError, match="empty"):
            rodian([])

    def test_nan_rejected(self):
        with pytest.raises(ValueError, match="NaN"):
            rodian([1.0, float("nan"), 2.0])

    def test_sparse_cluster(self):
        # 20 inliers around 70, 80 uniform outliers
        data, mu = generate(ScenarioSpec(n=100, inlier_mean=70, inlier_sigma=5,
                                         outlier_ratio=0.8, seed=9))
        out = rodian(data)
        assert abs(out.estimate - 70) < 5
        assert abs(median(data) - 70) > 10
        ref, ref_b, _ = reference_rodian(data)
        assert out.estimate == float(ref) and out.chosen_b == ref_b

    def test_sparse_cluster_most_seeds(self):
        hits = 0
        for seed in range(200):
            data, _ = generate(ScenarioSpec(n=100, inlier_mean=70, inlier_sigma=5,
                                            outlier_ratio=0.8, seed=seed))
            hits += abs(rodian(data).estimate - 70) < 5
        assert hits >= 180

    def test_bin_bounds_contain_estimate(self):
        data, _ = generate(ScenarioSpec(n=300, inlier_mean=20, inlier_sigma=2,
                                        outlier_ratio=0.6, seed=4))
        out = rodian(data)
        lo, hi = out.chosen_bin_bounds
        assert lo <= out.estimate <= hi
        assert out.chosen_b in RodianConfig().bin_counts

    def test_custom_bin_counts(self):
        out = rodian([0, 1, 1, 1, 2, 9, 10], RodianConfig(bin_counts=(2, 5)))
        ref, ref_b, _ = reference_rodian([0, 1, 1, 1, 2, 9, 10], (2, 5))
        assert out.estimate == float(ref) and out.chosen_b == ref_b

    @pytest.mark.parametrize("counts", [(), (1, 2), (3, 2), (2, 2)])
    def test_config_validation(self, counts):
        with pytest.raises(ValueError):
            RodianConfig(bin_counts=counts)

    def test_matches_reference_on_irregular_grid(self):
        grid = (0, 0.5, 1.25, 3, 7.75)
        for n in range(1, 10):
            for combo in itertools.combinations_with_replacement(grid, n):
                ref, ref_b, ref_fb = reference_rodian(combo)
                out = rodian(combo)
                assert (out.estimate, out.chosen_b, out.fell_back_to_median) == \
                    (float(ref), ref_b, ref_fb), combo

    def test_matches_reference_on_random_floats(self):
        rng = np.random.default_rng(21)
        for _ in range(300):
            n = int(rng.integers(2, 40))
            x = np.concatenate([rng.normal(rng.uniform(0, 10), 0.3, n),
                                rng.uniform(0, 10, int(rng.integers(0, 40)))])
            ref, ref_b, _ = reference_rodian(x)
            out = rodian(x)
            assert out.estimate == float(ref) and out.chosen_b == ref_b

    @given(samples, st.randoms(use_true_random=False))
    def test_permutation_invariant(self, data, rnd):
        shuffled = list(data)
        rnd.shuffle(shuffled)
        assert rodian(data) == rodian(shuffled)

    def test_positive_affine_equivariance(self):
        rng = np.random.default_rng(8)
        for _ in range(300):
            x = np.concatenate([rng.normal(rng.uniform(-50, 50), 1, 30),
                                rng.uniform(-100, 100, 40)])
            a = float(rng.choice([1e-3, 0.7, 3.0, 250.0]))
            c = float(rng.uniform(-1e3, 1e3))
            base, moved = rodian(x), rodian(a * x + c)
            assert moved.chosen_b == base.chosen_b
            assert moved.estimate == pytest.approx(a * base.estimate + c, rel=1e-9)


class TestMedian:
    @pytest.mark.parametrize("data,expected", [([3, 1, 2], 2), ([1, 2, 3, 4], 2.5), ([5], 5)])
    def test_examples(self, data, expected):
        assert median(data) == expected

    def test_empty(self):
        with pytest.raises(ValueError):
            median([])

    def test_huge_values_do_not_overflow(self):
        assert median([1.5e308, 1.7e308]) == pytest.approx(1.6e308)


class TestLmeds:
    @pytest.mark.parametrize("data,expected", [([0, 0, 0, 100], 0), ([1, 2, 3], 2),
                                               ([4.5, 4.5], 4.5), ([9.0], 9.0)])
    def test_examples(self, data, expected):
        assert lmeds(data) == expected

    def test_tie_goes_to_smallest(self):
        # both clusters score 100
        assert lmeds([0, 0, 0, 10, 10, 10]) == 0
        assert naive_lmeds([0, 0, 0, 10, 10, 10]) == 0
        assert lmeds([3.0, 8.0]) == 3.0

    def test_self_distance_excluded(self):
        # others of 5 are all 25 away; others of 0 are 0, 25, 100, 100 away
        assert lmeds([0, 0, 5, 10, 10]) == 5

    def test_matches_naive(self):
        rng = np.random.default_rng(3)
        for _ in range(40):
            n = int(rng.integers(2, 201))
            x = np.round(rng.uniform(0, 100, n), int(rng.integers(0, 3)))
            assert lmeds(x) == naive_lmeds(x.tolist())

    def test_chunking_does_not_change_result(self):
        x = np.random.default_rng(0).normal(0, 1, 333)
        assert lmeds(x, chunk_size=1000) == lmeds(x)

    def test_extreme_magnitudes(self):
        assert lmeds([-1e308, 1e308, 1e308]) == 1e308


class TestFixedHistogram:
    def test_one_bin_is_median(self):
        x = [5, 1, 9, 2, 7, 3]
        assert fixed_histogram_median(x, 1) == median(x)

    def test_two_bins(self):
        assert fixed_histogram_median([0, 0.1, 0.2, 0.9, 1.0], 2) == 0.1

    def test_constant(self):
        assert fixed_histogram_median([2.5] * 4, 7) == 2.5

    def test_tie_goes_to_lowest_bin(self):
        assert fixed_histogram_median([0, 1, 9, 10], 2) == 0.5

    @pytest.mark.parametrize("b", [0, -2])
    def test_invalid_bins(self, b):
        with pytest.raises(ValueError):
            fixed_histogram_median([1, 2], b)

    def test_matches_direct_count(self):
        rng = np.random.default_rng(9)
        for b in (5, 10, 20, 30, 50):
            x = rng.uniform(-5, 5, 200)
            lo, hi = x.min(), x.max()
            idx = np.minimum(np.floor((x - lo) / (hi - lo) * b), b - 1)
            counts = np.bincount(idx.astype(int), minlength=b)
            expected = np.median(x[idx == np.argmax(counts)])
            assert fixed_histogram_median(x, b) == expected


class TestAlphaTrimmed:
    def test_zero_alpha_is_mean(self):
        assert alpha_trimmed_mean([1, 2, 3, 10], 0) == 4.0

    def test_trims_each_end(self):
        assert alpha_trimmed_mean([1, 2, 3, 4, 100], 0.4) == 3.0

    def test_constant(self):
        assert alpha_trimmed_mean([0.1] * 7, 0.5) == 0.1

    @pytest.mark.parametrize("alpha", [-0.1, 1.0, 1.5])
    def test_alpha_range(self, alpha):
        with pytest.raises(ValueError):
            alpha_trimmed_mean([1, 2, 3], alpha)

    def test_never_trims_everything(self):
        # floor(alpha * n / 2) < n / 2 for any alpha < 1
        for n in range(1, 40):
            x = list(range(n))
            assert alpha_trimmed_mean(x, 0.999) == median(x)


ALL_ESTIMATORS = [
    lambda x: rodian(x).estimate,
    median,
    lambda x: fixed_histogram_median(x, 20),
    lambda x: alpha_trimmed_mean(x, 0.2),
]


@settings(max_examples=300)
@given(samples)
def test_range_containment(data):
    lo, hi = min(data), max(data)
    for est in ALL_ESTIMATORS:
        assert lo <= est(data) <= hi
    if len(data) <= 30:
        assert lo <= lmeds(data) <= hi


def test_range_containment_fuzz():
    rng = np.random.default_rng(2024)
    for _ in range(10_000):
        n = int(rng.integers(1, 40))
        kind = rng.integers(3)
        if kind == 0:
            x = rng.normal(0, 10 ** rng.uniform(-6, 6), n)
        elif kind == 1:
            x = rng.integers(-3, 4, n).astype(float)
        else:
            x = np.concatenate([rng.normal(5, 0.1, n), rng.uniform(-100, 100, n)])
        lo, hi = x.min(), x.max()
        for est in ALL_ESTIMATORS:
            assert lo <= est(x) <= hi
        if len(x) <= 25:
            assert lo <= lmeds(x) <= hi
