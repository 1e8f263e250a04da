"""
Partition Service

Integer partition numbers and the exact cut-count caps derived from them.

A transitive tournament has, for every size a = |X|, exactly as many k-cuts
as there are partitions of some k' <= k into at most n - a parts, each part
at most a. Summing p(j) over j <= k therefore bounds the k-cuts of each size
class, and the caps below are (n + 1) times such a sum, evaluated at the
budget the transfer arguments give for each problem:

    feedback arc set <= k   ->  k-cuts are 2k-cuts of a transitive tournament
    width <= k              ->  k-cuts are floor(2k(1 + ln 2k))-cuts
    cost <= k               ->  width <= floor((4k)^(2/3))

All integer quantities use arbitrary precision; only the analytic bounds
(diagnostics) are floats.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from semicut.config import get_settings
from semicut.exceptions import InvalidParameterError

logger = logging.getLogger(__name__)

# Exponent constant of the partition-number growth: p(k) <= A/(k+1) * exp(C*sqrt(k))
C_CONSTANT = math.pi * math.sqrt(2.0 / 3.0)


def fas_exponent_constant() -> float:
    """c such that exp(C*sqrt(2k)) = 2^(c*sqrt(k)), i.e. 2*pi/(sqrt(3)*ln 2)."""
    return 2.0 * math.pi / (math.sqrt(3.0) * math.log(2.0))


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _check_non_negative(**values: int) -> None:
    for name, value in values.items():
        if value < 0:
            raise InvalidParameterError(f"{name} must be non-negative, got {value}")


# =============================================================================
# Partition numbers
# =============================================================================

@dataclass(frozen=True)
class PartitionTable:
    """values[j] = p(j) for j = 0..m."""
    values: tuple[int, ...]

    def __getitem__(self, j: int) -> int:
        return self.values[j]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def m(self) -> int:
        return len(self.values) - 1

    def prefix_sum(self, t: int) -> int:
        """p(0) + ... + p(t)."""
        return sum(self.values[: t + 1])


def _generalized_pentagonals(limit: int) -> list[tuple[int, int]]:
    """(pentagonal number, sign) pairs up to limit, in increasing order."""
    out = []
    i = 1
    while True:
        sign = 1 if i % 2 else -1
        first = i * (3 * i - 1) // 2
        if first > limit:
            break
        out.append((first, sign))
        second = i * (3 * i + 1) // 2
        if second <= limit:
            out.append((second, sign))
        i += 1
    return out


@lru_cache(maxsize=32)
def partition_numbers(m: int) -> PartitionTable:
    """
    p(0..m) by Euler's pentagonal-number recurrence.

    p(j) = sum over i >= 1 of (-1)^(i+1) * (p(j - i(3i-1)/2) + p(j - i(3i+1)/2))
    """
    _check_non_negative(m=m)
    pentagonals = _generalized_pentagonals(m)
    p = [1] + [0] * m
    for j in range(1, m + 1):
        total = 0
        for g, sign in pentagonals:
            if g > j:
                break
            total += sign * p[j - g]
        p[j] = total
    return PartitionTable(tuple(p))


def sum_partition_numbers(t: int) -> int:
    _check_non_negative(t=t)
    return partition_numbers(t).prefix_sum(t)


def count_bounded_partitions(k: int, max_part: int, max_parts: int) -> int:
    """
    Number of partitions of the values 0..k with every part <= max_part and
    at most max_parts parts.

    This is the exact number of k-cuts (X, Y) of a transitive tournament with
    |X| = max_part and |Y| = max_parts.
    """
    _check_non_negative(k=k, max_part=max_part, max_parts=max_parts)
    parts_cap = min(max_parts, k)
    # ways[c][s]: partitions into exactly c parts summing to s, sizes seen so far
    ways = [[0] * (k + 1) for _ in range(parts_cap + 1)]
    ways[0][0] = 1
    for size in range(1, min(max_part, k) + 1):
        for c in range(1, parts_cap + 1):
            row, prev = ways[c], ways[c - 1]
            for s in range(size, k + 1):
                row[s] += prev[s - size]
    return sum(sum(row) for row in ways)


def transitive_cut_count(n: int, k: int) -> int:
    """Exact number of k-cuts of the transitive tournament on n vertices."""
    _check_non_negative(n=n, k=k)
    return sum(count_bounded_partitions(k, a, n - a) for a in range(n + 1))


# =============================================================================
# Budgets and caps
# =============================================================================

def cap_fas(n: int, k: int) -> int:
    """Cut-count cap for instances with a feedback arc set of size <= k."""
    _check_non_negative(n=n, k=k)
    return (n + 1) * sum_partition_numbers(2 * k)


def cutwidth_transfer_threshold(k: int) -> int:
    """floor(2k(1 + ln 2k)), and 0 for k = 0."""
    _check_non_negative(k=k)
    if k == 0:
        return 0
    return math.floor(2 * k * (1.0 + math.log(2 * k)))


def cap_cutwidth(n: int, k: int) -> int:
    """Cut-count cap for instances of cutwidth <= k."""
    _check_non_negative(n=n, k=k)
    return (n + 1) * sum_partition_numbers(cutwidth_transfer_threshold(k))


def integer_cube_root(m: int) -> int:
    """Largest r with r^3 <= m."""
    _check_non_negative(m=m)
    if m < 2:
        return m
    r = 1 << ((m.bit_length() + 2) // 3)  # r^3 >= m
    while True:
        nxt = (2 * r + m // (r * r)) // 3
        if nxt >= r:
            break
        r = nxt
    while r ** 3 > m:
        r -= 1
    while (r + 1) ** 3 <= m:
        r += 1
    return r


def ola_width_budget(k: int) -> int:
    """floor((4k)^(2/3)), computed exactly as the integer cube root of (4k)^2."""
    _check_non_negative(k=k)
    return integer_cube_root((4 * k) ** 2)


def cap_ola(n: int, k: int) -> int:
    """Cap on the number of b(k)-cuts of instances with an ordering of cost <= k."""
    _check_non_negative(n=n, k=k)
    return cap_cutwidth(n, ola_width_budget(k))


# =============================================================================
# Analytic bounds (diagnostics only; solvers use the exact caps)
# =============================================================================

def hr_bound(k: int, a: Optional[float] = None) -> float:
    """A/(k+1) * exp(C*sqrt(k)), the analytic upper bound on p(k)."""
    _check_non_negative(k=k)
    a = get_settings().hr_constant_a if a is None else a
    return a / (k + 1) * _safe_exp(C_CONSTANT * math.sqrt(k))


def analytic_cap_fas(n: int, k: int, a: Optional[float] = None) -> float:
    _check_non_negative(n=n, k=k)
    a = get_settings().hr_constant_a if a is None else a
    return a * _safe_exp(C_CONSTANT * math.sqrt(2 * k)) * (n + 1)


def analytic_cap_cutwidth(n: int, k: int, a: Optional[float] = None) -> float:
    _check_non_negative(n=n, k=k)
    a = get_settings().hr_constant_a if a is None else a
    if k == 0:
        return a * (n + 1)
    return a * _safe_exp(2 * C_CONSTANT * math.sqrt(k * (1.0 + math.log(2 * k)))) * (n + 1)


def analytic_cap_ola(n: int, k: int, a: Optional[float] = None) -> float:
    _check_non_negative(n=n, k=k)
    a = get_settings().hr_constant_a if a is None else a
    if k == 0:
        return a * (n + 1)
    width = (4 * k) ** (2.0 / 3.0)
    exponent = 2 * C_CONSTANT * (4 * k) ** (1.0 / 3.0) * math.sqrt(1.0 + math.log(2 * width))
    return a * _safe_exp(exponent) * (n + 1)


# =============================================================================
# Bad pairs of a bipartition against a reference ordering
# =============================================================================

def _positions(x: int, order: Sequence[int]) -> list[bool]:
    """in_x[i] is True iff the vertex at position i belongs to X."""
    return [bool(x >> v & 1) for v in order]


def count_bad_pairs(x: int, order: Sequence[int]) -> int:
    """Pairs (a, b) with a before b in order, a in Y and b in X."""
    bad = 0
    seen_y = 0
    for in_x in _positions(x, order):
        if in_x:
            bad += seen_y
        else:
            seen_y += 1
    return bad


def max_straddling_bad_pairs(x: int, order: Sequence[int]) -> int:
    """Maximum over t of the bad pairs (a, b) with a at a position <= t < position of b."""
    flags = _positions(x, order)
    total_x = sum(flags)
    best = 0
    y_before = 0
    x_before = 0
    for in_x in flags:
        if in_x:
            x_before += 1
        else:
            y_before += 1
        best = max(best, y_before * (total_x - x_before))
    return best


def bad_pair_bound(k: int) -> float:
    """k(1 + ln k): total bad pairs when at most k straddle any position."""
    _check_non_negative(k=k)
    if k == 0:
        return 0.0
    return k * (1.0 + math.log(k))


def reference_cut_value(order: Sequence[int], x: int) -> int:
    """Cut value of X in the transitive tournament that follows `order`."""
    return count_bad_pairs(x, order)
