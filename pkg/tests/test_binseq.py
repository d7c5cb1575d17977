import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threshrank import (
    UNIFORM,
    BetaParams,
    BinSequence,
    bin_size_stats,
    brute_force_msf,
    ground_truth_partition,
    msf,
    msf_of_bin,
    predict_eb2,
    refine,
    sample_instance,
)

from conftest import make_instance

bin_sequences = st.lists(
    st.integers(min_value=1, max_value=6), min_size=1, max_size=6
).map(
    lambda sizes: BinSequence(
        range(sum(sizes[:k]), sum(sizes[: k + 1])) for k in range(len(sizes))
    )
)


class TestBinSequence:
    def test_rejects_empty_bin(self):
        with pytest.raises(ValueError):
            BinSequence([{0, 1}, set()])

    def test_rejects_overlap(self):
        with pytest.raises(ValueError):
            BinSequence([{0, 1}, {1, 2}])

    def test_render(self):
        assert BinSequence([{1, 0}, {2}]).render() == "{0,1} | {2}"

    def test_equality_and_sizes(self):
        seq = BinSequence([[0, 1], [2]])
        assert seq == BinSequence([{1, 0}, {2}])
        assert seq.sizes == (2, 1)
        assert seq.n_items == 3


class TestGroundTruthPartition:
    def test_single_separating_threshold(self):
        inst = make_instance([0.3, 0.7], [0.5])
        assert ground_truth_partition(inst, [0]) == BinSequence([{0}, {1}])

    def test_no_users_single_bin(self):
        inst = make_instance([0.3, 0.7, 0.1], [0.5])
        assert ground_truth_partition(inst, []) == BinSequence([{0, 1, 2}])

    def test_empty_interval_dropped(self):
        inst = make_instance([0.1, 0.2, 0.9], [0.5, 0.6])
        assert ground_truth_partition(inst) == BinSequence([{0, 1}, {2}])

    def test_rejects_bad_user_id(self):
        inst = make_instance([0.5], [0.4])
        with pytest.raises(ValueError):
            ground_truth_partition(inst, [3])

    def test_order_invariant(self):
        # Definition-1 check: scores strictly increase across bins.
        for seed in range(20):
            inst = sample_instance(30, 10, BetaParams(2, 3), UNIFORM, seed)
            seq = ground_truth_partition(inst)
            prev_max = -1.0
            for b in seq:
                lo = min(inst.scores[i] for i in b)
                assert lo > prev_max
                prev_max = max(inst.scores[i] for i in b)

    def test_subset_refinement(self):
        # The partition from more users refines the one from fewer users.
        inst = sample_instance(40, 20, UNIFORM, BetaParams(2, 2), seed=9)
        rng = np.random.default_rng(1)
        for _ in range(20):
            u2 = {u for u in range(inst.m) if rng.random() < 0.6}
            u1 = {u for u in u2 if rng.random() < 0.5}
            coarse = ground_truth_partition(inst, u1)
            fine = list(ground_truth_partition(inst, u2))
            for bin_coarse in coarse:
                merged = set()
                while merged != bin_coarse:
                    merged |= fine.pop(0)
                    assert merged <= bin_coarse


class TestMsfClosedForms:
    @pytest.mark.parametrize(
        "size,expected", [(0, 0), (1, 0), (2, 2), (3, 4), (4, 8), (5, 12), (7, 24)]
    )
    def test_msf_of_bin(self, size, expected):
        assert msf_of_bin(size) == expected

    def test_msf_of_bin_is_even(self):
        for size in range(30):
            assert msf_of_bin(size) % 2 == 0

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            msf_of_bin(-1)

    def test_msf_sums_bins(self):
        assert msf(BinSequence([{0, 1}, {2, 3, 4}])) == 6
        assert msf(BinSequence([{i} for i in range(8)])) == 0
        assert msf(BinSequence([{0, 1, 2, 3}])) == 8


class TestBruteForceMsf:
    def test_single_bin_of_three(self):
        assert brute_force_msf(BinSequence([{0, 1, 2}])) == 4

    def test_singletons(self):
        assert brute_force_msf(BinSequence([{0}, {1}, {2}])) == 0

    def test_single_bin_of_two(self):
        assert brute_force_msf(BinSequence([{0, 1}])) == 2

    def test_budget_error(self):
        with pytest.raises(ValueError):
            brute_force_msf(BinSequence([range(8)]))

    @settings(max_examples=150, deadline=None)
    @given(bin_sequences)
    def test_matches_closed_form(self, seq):
        assert brute_force_msf(seq) == msf(seq)


class TestRefine:
    def test_direct_substitution(self):
        seq = BinSequence([{0, 1, 2}])
        assert refine(seq, 0, {0}, {1, 2}) == BinSequence([{0}, {1, 2}])

    def test_empty_part_unchanged(self):
        seq = BinSequence([{0, 1}])
        assert refine(seq, 0, set(), {0, 1}) == seq

    def test_middle_bin(self):
        seq = BinSequence([{0}, {1, 2}])
        assert refine(seq, 1, {1}, {2}) == BinSequence([{0}, {1}, {2}])

    def test_rejects_non_partition(self):
        seq = BinSequence([{0, 1, 2}])
        with pytest.raises(ValueError):
            refine(seq, 0, {0}, {1})
        with pytest.raises(ValueError):
            refine(seq, 0, {0, 1}, {1, 2})

    @settings(max_examples=100, deadline=None)
    @given(bin_sequences, st.randoms(use_true_random=False))
    def test_msf_non_increasing(self, seq, rnd):
        k = rnd.randrange(len(seq))
        items = sorted(seq[k])
        cut = rnd.randrange(1, len(items) + 1)
        refined = refine(seq, k, items[:cut], items[cut:])
        assert msf(refined) <= msf(seq)


class TestBinSizeStats:
    def test_two_bins(self):
        assert bin_size_stats(BinSequence([{0, 1}, {2, 3, 4}]), m=1) == (6.5, 0.5)

    def test_empty_intervals_counted(self):
        assert bin_size_stats(BinSequence([{0, 1, 2, 3}]), m=2) == (16 / 3, 0.0)

    def test_accepts_raw_size_vector(self):
        assert bin_size_stats([0, 0, 4], m=2) == (16 / 3, 0.0)

    def test_rejects_too_many_bins(self):
        with pytest.raises(ValueError):
            bin_size_stats(BinSequence([{0}, {1}]), m=0)

    def test_monte_carlo_matches_leading_terms(self):
        # Reduced-size version of the acceptance check (n=10, m=1000).
        n, m, reps = 10, 1000, 1500
        values = []
        for seed in range(reps):
            inst = sample_instance(n, m, UNIFORM, UNIFORM, seed)
            eb2, _ = bin_size_stats(ground_truth_partition(inst), m)
            values.append(eb2)
        mean = float(np.mean(values))
        se = float(np.std(values, ddof=1) / np.sqrt(reps))
        assert abs(mean - predict_eb2(n, m, 1.0)) < 3 * se
