import numpy as np
import pytest

from semicut.exceptions import (
    InstanceTooLargeForOracleError,
    InvalidParameterError,
    WeightedCalledOnUnweightedError,
)
from semicut.services.cut_service import (
    Cut,
    EnumerationStats,
    EnumerationStatus,
    PartialAssignment,
    Side,
    brute_count_k_cuts,
    brute_k_cuts,
    cut_value,
    cut_weight,
    enumerate_k_cuts,
    iter_k_cuts,
    max_flow_value,
    min_completion_cut,
)
from semicut.services.digraph import (
    gen_noisy_transitive,
    gen_random_semicomplete,
    gen_random_tournament,
    gen_transitive,
)
from semicut.services.oracle_service import brute_cutwidth
from semicut.services.partition_service import (
    cap_cutwidth,
    cap_fas,
    sum_partition_numbers,
    transitive_cut_count,
)
from semicut.utils.bitset_utils import mask_of

UNBOUNDED = 10**9


class TestCutValues:
    def test_transitive_cut(self):
        T = gen_transitive(3)
        assert cut_value(T, Cut.of(3, [2])) == 2
        assert cut_value(T, Cut.of(3, [0])) == 0

    def test_source_and_sink_are_free(self, triangle):
        assert cut_value(triangle, Cut.source(3)) == 0
        assert cut_value(triangle, Cut.sink(3)) == 0

    def test_weighted_cut(self, half_weight_triangle):
        assert cut_weight(half_weight_triangle, Cut.of(3, [0])) == 1.5

    def test_weighted_cut_needs_weights(self, triangle):
        with pytest.raises(WeightedCalledOnUnweightedError):
            cut_weight(triangle, Cut.of(3, [0]))

    def test_cut_mask_range(self):
        with pytest.raises(InvalidParameterError):
            Cut(0b1000, 3)


class TestMaxFlow:
    def test_transitive_prefix_has_no_flow(self):
        T = gen_transitive(6)
        assert max_flow_value(T, mask_of([4, 5]), mask_of([0, 1])) == 0

    def test_reverse_direction_saturates(self):
        T = gen_transitive(6)
        assert max_flow_value(T, mask_of([0, 1]), mask_of([4, 5])) == 8

    def test_limit_stops_early(self):
        T = gen_transitive(8)
        assert max_flow_value(T, mask_of([0]), mask_of([7]), limit=2) == 3

    def test_overlapping_sets_rejected(self, triangle):
        with pytest.raises(InvalidParameterError):
            max_flow_value(triangle, 0b011, 0b010)

    @pytest.mark.parametrize("seed", range(10))
    def test_min_completion_matches_brute_force(self, seed):
        T = gen_random_semicomplete(7, 0.2, seed)
        rng = np.random.default_rng(seed)
        sides = tuple(Side.X if b else Side.Y for b in rng.integers(0, 2, size=4))
        partial = PartialAssignment(7, sides)
        best = min(
            cut_value(T, Cut(partial.x_mask | free, 7))
            for free in range(0, 1 << 7, 1 << 4)
        )
        assert min_completion_cut(T, partial) == best

    @pytest.mark.parametrize("seed", range(10))
    def test_min_completion_never_decreases_when_extended(self, seed):
        n = 8
        T = gen_random_semicomplete(n, 0.3, seed) if seed % 2 else gen_random_tournament(n, seed)
        rng = np.random.default_rng(seed)
        partial = PartialAssignment(n)
        previous = min_completion_cut(T, partial)
        for bit in rng.integers(0, 2, size=n):
            partial = partial.extend(Side.X if bit else Side.Y)
            current = min_completion_cut(T, partial)
            assert current >= previous
            previous = current
        assert previous == cut_value(T, partial.to_cut())

    def test_complete_assignment_equals_cut_value(self, triangle):
        partial = PartialAssignment(3, (Side.X, Side.Y, Side.Y))
        assert partial.is_complete
        assert min_completion_cut(triangle, partial) == cut_value(triangle, partial.to_cut())


class TestEnumeration:
    def test_triangle_counts(self, triangle):
        assert brute_count_k_cuts(triangle, 0) == 2
        assert brute_count_k_cuts(triangle, 1) == 8
        assert enumerate_k_cuts(triangle, 0, UNBOUNDED).cuts_emitted == 2

    def test_first_cut_is_all_x(self, triangle):
        first = next(iter_k_cuts(triangle, 1))
        assert first == Cut.sink(3)

    @pytest.mark.parametrize("n,k,expected", [(4, 1, 8), (6, 0, 7)])
    def test_transitive_counts(self, n, k, expected):
        result = enumerate_k_cuts(gen_transitive(n), k, UNBOUNDED)
        assert result.status == EnumerationStatus.COMPLETE
        assert result.cuts_emitted == expected

    def test_cap_exceeded(self):
        result = enumerate_k_cuts(gen_transitive(4), 1, 5)
        assert result.status == EnumerationStatus.CAP_EXCEEDED
        assert result.cuts_emitted == 6
        assert not result.is_complete

    def test_negative_budget(self, triangle):
        with pytest.raises(InvalidParameterError):
            list(iter_k_cuts(triangle, -1))

    def test_empty_instance(self):
        result = enumerate_k_cuts(gen_transitive(0), 0, UNBOUNDED)
        assert result.cuts == [Cut(0, 0)]

    @pytest.mark.parametrize("seed", range(50))
    def test_matches_brute_force(self, seed):
        n = 4 + seed % 7
        T = gen_random_tournament(n, seed) if seed % 2 else gen_random_semicomplete(n, 0.25, seed)
        for k in range(5):
            result = enumerate_k_cuts(T, k, UNBOUNDED)
            assert result.is_complete
            assert len(set(result.cuts)) == len(result.cuts)
            assert sorted(result.cuts) == brute_k_cuts(T, k)

    def test_every_expanded_node_leads_to_output(self):
        T = gen_noisy_transitive(20, 4, seed=1)
        stats = EnumerationStats()
        cuts = list(iter_k_cuts(T, 3, stats))
        # a branch node is only pushed when some completion is a k-cut
        assert stats.nodes_expanded <= (T.n + 1) * len(cuts)

    def test_brute_force_guard(self):
        with pytest.raises(InstanceTooLargeForOracleError):
            brute_count_k_cuts(gen_transitive(25), 0)


class TestCaps:
    @pytest.mark.parametrize("n", range(13))
    def test_transitive_count_identity(self, n):
        T = gen_transitive(n)
        for k in range(7):
            count = brute_count_k_cuts(T, k)
            assert count == transitive_cut_count(n, k)
            assert count <= (n + 1) * sum_partition_numbers(k)

    @pytest.mark.parametrize("n", range(2, 13))
    def test_noisy_counts_within_fas_cap(self, n):
        for k in range(5):
            flips = min(k, n * (n - 1) // 2)
            for seed in range(3):
                T = gen_noisy_transitive(n, flips, seed)
                result = enumerate_k_cuts(T, k, cap_fas(n, k))
                assert result.is_complete

    @pytest.mark.parametrize("seed", range(12))
    def test_small_cutwidth_counts_within_cap(self, seed):
        n = 5 + seed % 4
        T = gen_random_semicomplete(n, 0.2, seed) if seed % 2 else gen_random_tournament(n, seed)
        width = brute_cutwidth(T)
        for k in range(width, width + 3):
            assert brute_count_k_cuts(T, k) <= cap_cutwidth(n, k)

