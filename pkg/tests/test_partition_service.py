import math

import pytest

from semicut.exceptions import InvalidParameterError
from semicut.services.cut_service import brute_k_cuts
from semicut.services.digraph import gen_noisy_transitive, gen_random_tournament
from semicut.services.oracle_service import brute_solve
from semicut.services.solver_service import Problem
from semicut.services.partition_service import (
    C_CONSTANT,
    analytic_cap_cutwidth,
    analytic_cap_fas,
    analytic_cap_ola,
    bad_pair_bound,
    cap_cutwidth,
    cap_fas,
    cap_ola,
    count_bad_pairs,
    count_bounded_partitions,
    cutwidth_transfer_threshold,
    fas_exponent_constant,
    hr_bound,
    integer_cube_root,
    max_straddling_bad_pairs,
    ola_width_budget,
    partition_numbers,
    reference_cut_value,
    sum_partition_numbers,
    transitive_cut_count,
)


def _brute_partitions(m: int, largest: int | None = None) -> int:
    """Count partitions of m into parts no larger than `largest`."""
    largest = m if largest is None else largest
    if m == 0:
        return 1
    return sum(_brute_partitions(m - part, part) for part in range(1, min(m, largest) + 1))


def _coin_change_table(m: int) -> list[int]:
    ways = [1] + [0] * m
    for part in range(1, m + 1):
        for s in range(part, m + 1):
            ways[s] += ways[s - part]
    return ways


class TestPartitionNumbers:
    def test_small_values_match_enumeration(self):
        table = partition_numbers(20)
        assert [table[j] for j in range(21)] == [_brute_partitions(j) for j in range(21)]
        assert table[5] == 7
        assert table[10] == 42

    def test_recurrence_matches_independent_table(self):
        assert list(partition_numbers(600).values) == _coin_change_table(600)

    def test_large_values_exact(self):
        table = partition_numbers(2000)
        assert table[100] == 190569292
        assert table[1000] == 24061467864032622473692149727991
        assert table[2000] > 10**45
        # p is strictly increasing from 1 on
        assert all(table[j] < table[j + 1] for j in range(1, 2000))

    def test_prefix_sums(self):
        assert sum_partition_numbers(0) == 1
        assert sum_partition_numbers(4) == 1 + 1 + 2 + 3 + 5

    def test_negative_rejected(self):
        with pytest.raises(InvalidParameterError):
            partition_numbers(-1)


class TestTransitiveCounts:
    def test_bounded_partitions(self):
        assert count_bounded_partitions(3, 2, 2) == 5
        assert count_bounded_partitions(0, 0, 0) == 1
        assert count_bounded_partitions(4, 0, 5) == 1

    def test_unbounded_limit_is_prefix_sum(self):
        assert count_bounded_partitions(8, 8, 8) == sum_partition_numbers(8)

    @pytest.mark.parametrize("n,k,expected", [(4, 1, 8), (6, 0, 7), (0, 3, 1)])
    def test_transitive_cut_count(self, n, k, expected):
        assert transitive_cut_count(n, k) == expected


class TestCaps:
    def test_fas_cap(self):
        assert cap_fas(30, 5) == 31 * sum_partition_numbers(10)
        assert cap_fas(4, 0) == 5

    def test_cutwidth_threshold(self):
        assert cutwidth_transfer_threshold(0) == 0
        assert cutwidth_transfer_threshold(1) == math.floor(2 * (1 + math.log(2)))
        assert cutwidth_transfer_threshold(8) == 60
        assert cap_cutwidth(5, 1) == 6 * sum_partition_numbers(3)

    @pytest.mark.parametrize("m", [0, 1, 7, 8, 9, 26, 27, 28, 10**18, 10**18 - 1, 3**40])
    def test_integer_cube_root(self, m):
        r = integer_cube_root(m)
        assert r ** 3 <= m < (r + 1) ** 3

    def test_ola_budget(self):
        assert ola_width_budget(0) == 0
        assert ola_width_budget(1) == 2  # 16^(1/3) = 2.52
        assert ola_width_budget(2) == 4  # 64^(1/3) = 4
        assert ola_width_budget(16) == 16  # 4096^(1/3) = 16
        assert cap_ola(6, 2) == cap_cutwidth(6, 4)

    @pytest.mark.parametrize("k", range(0, 500, 7))
    def test_ola_budget_is_floor_cube_root(self, k):
        b = ola_width_budget(k)
        assert b**3 <= (4 * k) ** 2 < (b + 1) ** 3


class TestAnalyticBounds:
    @pytest.mark.parametrize("k", [1, 4, 9, 100])
    def test_exponent_constant(self, k):
        lhs = math.exp(C_CONSTANT * math.sqrt(2 * k))
        rhs = 2 ** (fas_exponent_constant() * math.sqrt(k))
        assert abs(lhs - rhs) / lhs <= 1e-12

    def test_constant_below_bound(self):
        assert fas_exponent_constant() <= 5.24

    def test_partition_bound_holds(self):
        table = partition_numbers(200)
        assert all(table[k] <= hr_bound(k, a=1.0) for k in range(1, 201))

    def test_analytic_caps_grow(self):
        assert analytic_cap_fas(10, 2) < analytic_cap_fas(10, 3)
        assert analytic_cap_cutwidth(10, 0) == pytest.approx(analytic_cap_ola(10, 0))
        assert math.isinf(analytic_cap_fas(10, 10**12))


class TestBadPairs:
    def test_counts(self):
        order = [0, 1, 2, 3]
        x = 0b0101  # X = {0, 2}, Y = {1, 3}
        assert count_bad_pairs(x, order) == 1
        assert max_straddling_bad_pairs(x, order) == 1
        assert reference_cut_value(order, x) == 1

    def test_all_y_before_x(self):
        order = [3, 2, 1, 0]
        x = 0b0011
        assert count_bad_pairs(x, order) == 4
        assert max_straddling_bad_pairs(x, order) == 4

    def test_bound_values(self):
        assert bad_pair_bound(0) == 0.0
        assert bad_pair_bound(1) == 1.0

    @pytest.mark.parametrize("n", range(1, 11))
    def test_total_bounded_by_straddling_maximum(self, n):
        order = list(range(n))
        for x in range(1 << n):
            k = max_straddling_bad_pairs(x, order)
            assert count_bad_pairs(x, order) <= bad_pair_bound(k) + 1e-9


class TestReferenceOrderTransfer:
    @pytest.mark.parametrize("seed", range(12))
    def test_cuts_of_small_width_instances(self, seed):
        T = gen_random_tournament(7, seed)
        width, sigma = brute_solve(Problem.CUTWIDTH, T)
        for k in (width, width + 1):
            threshold = cutwidth_transfer_threshold(k)
            for cut in brute_k_cuts(T, k):
                assert reference_cut_value(sigma.perm, cut.x) <= threshold

    @pytest.mark.parametrize("n,flips,seed", [(n, f, s) for n in (6, 8, 10) for f in range(4) for s in range(2)])
    def test_cuts_of_noisy_instances(self, n, flips, seed):
        T = gen_noisy_transitive(n, flips, seed)
        natural = list(range(n))
        for k in range(flips, flips + 2):
            for cut in brute_k_cuts(T, k):
                assert reference_cut_value(natural, cut.x) <= 2 * k
