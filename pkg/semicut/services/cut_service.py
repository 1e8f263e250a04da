"""
Cut Service

k-cuts of semi-complete digraphs: a partition (X, Y) of the vertices with at
most k arcs directed from Y to X.

Features:
- Exact cut values (unweighted and weighted)
- Unit-capacity max-flow used as the pruning bound of partial assignments
- Polynomial-delay enumeration of all k-cuts with a hard cap
- Brute-force counting over all 2^n partitions (testing oracle)
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional

from semicut.config import get_settings
from semicut.exceptions import (
    InstanceTooLargeForOracleError,
    InvalidParameterError,
    WeightedCalledOnUnweightedError,
)
from semicut.services.digraph import SemiCompleteDigraph, Weight
from semicut.utils.bitset_utils import full_mask, iter_bits, lowest_bit, mask_of, popcount

logger = logging.getLogger(__name__)


# =============================================================================
# Domain Types
# =============================================================================

@dataclass(frozen=True, order=True)
class Cut:
    """Bipartition (X, Y) of {0..n-1}; X is stored as a bit-set, Y is its complement."""
    x: int
    n: int

    def __post_init__(self) -> None:
        if self.x < 0 or self.x >> self.n:
            raise InvalidParameterError(f"cut mask {self.x:#x} is not a subset of {self.n} vertices")

    @classmethod
    def of(cls, n: int, x_vertices: list[int] | tuple[int, ...] | set[int]) -> "Cut":
        return cls(mask_of(x_vertices), n)

    @classmethod
    def source(cls, n: int) -> "Cut":
        """(∅, V)"""
        return cls(0, n)

    @classmethod
    def sink(cls, n: int) -> "Cut":
        """(V, ∅)"""
        return cls(full_mask(n), n)

    @property
    def y(self) -> int:
        return full_mask(self.n) ^ self.x

    @property
    def size(self) -> int:
        """|X|, the level of the cut in the cut graph."""
        return popcount(self.x)

    def x_vertices(self) -> list[int]:
        return list(iter_bits(self.x))

    def y_vertices(self) -> list[int]:
        return list(iter_bits(self.y))


class Side(str, Enum):
    X = "x"
    Y = "y"


@dataclass(frozen=True)
class PartialAssignment:
    """Sides of the first t vertices in index order; the rest are free."""
    n: int
    sides: tuple[Side, ...] = ()

    def __post_init__(self) -> None:
        if len(self.sides) > self.n:
            raise InvalidParameterError(f"{len(self.sides)} sides assigned for {self.n} vertices")

    @property
    def assigned_prefix_length(self) -> int:
        return len(self.sides)

    @property
    def x_mask(self) -> int:
        return mask_of(v for v, s in enumerate(self.sides) if s == Side.X)

    @property
    def y_mask(self) -> int:
        return mask_of(v for v, s in enumerate(self.sides) if s == Side.Y)

    @property
    def is_complete(self) -> bool:
        return len(self.sides) == self.n

    def extend(self, side: Side) -> "PartialAssignment":
        return PartialAssignment(self.n, self.sides + (side,))

    def to_cut(self) -> Cut:
        if not self.is_complete:
            raise InvalidParameterError("only a complete assignment defines a cut")
        return Cut(self.x_mask, self.n)


class EnumerationStatus(str, Enum):
    COMPLETE = "complete"
    CAP_EXCEEDED = "cap-exceeded"


@dataclass
class EnumerationStats:
    """Counters of one enumeration run."""
    nodes_expanded: int = 0
    flow_calls: int = 0


@dataclass
class CutEnumeration:
    """
    Outcome of a bounded enumeration.

    COMPLETE: `cuts` is the full duplicate-free list of k-cuts.
    CAP_EXCEEDED: cap + 1 distinct k-cuts were witnessed (kept in `cuts`).
    """
    status: EnumerationStatus
    k: int
    cap: int
    cuts: list[Cut] = field(default_factory=list)
    stats: EnumerationStats = field(default_factory=EnumerationStats)

    @property
    def is_complete(self) -> bool:
        return self.status == EnumerationStatus.COMPLETE

    @property
    def cuts_emitted(self) -> int:
        return len(self.cuts)


# =============================================================================
# Cut values
# =============================================================================

def cut_value(T: SemiCompleteDigraph, cut: Cut) -> int:
    """Number of arcs directed from Y to X."""
    y = cut.y
    return sum(popcount(T.in_masks[v] & y) for v in iter_bits(cut.x))


def cut_weight(T: SemiCompleteDigraph, cut: Cut) -> Weight:
    """Total weight of the arcs directed from Y to X."""
    if T.weights is None:
        raise WeightedCalledOnUnweightedError("cut_weight")
    y = cut.y
    total: Weight = 0
    for v in iter_bits(cut.x):
        for u in iter_bits(T.in_masks[v] & y):
            total += T.weights[(u, v)]
    return total


# =============================================================================
# Max-flow
# =============================================================================

def _augmenting_path(
    out_masks: tuple[int, ...],
    flow_out: list[int],
    flow_in: list[int],
    sources: int,
    sinks: int,
) -> Optional[list[int]]:
    """Shortest residual path from any source vertex to any sink vertex."""
    parent: dict[int, int] = {}
    visited = sources
    queue = list(iter_bits(sources))
    for u in queue:
        # residual arcs: unused arcs of T plus reversed flow-carrying arcs
        reach = ((out_masks[u] & ~flow_out[u]) | flow_in[u]) & ~visited
        if not reach:
            continue
        hit = reach & sinks
        if hit:
            path = [lowest_bit(hit), u]
            while u in parent:
                u = parent[u]
                path.append(u)
            path.reverse()
            return path
        visited |= reach
        for w in iter_bits(reach):
            parent[w] = u
            queue.append(w)
    return None


def max_flow_value(
    T: SemiCompleteDigraph,
    sources: int,
    sinks: int,
    limit: Optional[int] = None,
) -> int:
    """
    Maximum number of arc-disjoint paths from the source set to the sink set.

    Equivalent to max-flow with a super-source feeding every source vertex,
    a super-sink fed by every sink vertex, unbounded attachments and unit
    capacity on the arcs of T. With a limit, augmentation stops as soon as
    the value reaches limit + 1.
    """
    if sources & sinks:
        raise InvalidParameterError("source and sink sets must be disjoint")
    if not sources or not sinks:
        return 0

    flow_out = [0] * T.n
    flow_in = [0] * T.n
    value = 0
    while limit is None or value <= limit:
        path = _augmenting_path(T.out_masks, flow_out, flow_in, sources, sinks)
        if path is None:
            break
        for u, v in zip(path, path[1:]):
            if flow_in[u] >> v & 1:
                # cancel flow on (v, u)
                flow_in[u] &= ~(1 << v)
                flow_out[v] &= ~(1 << u)
            else:
                flow_out[u] |= 1 << v
                flow_in[v] |= 1 << u
        value += 1
    return value


def min_completion_cut(T: SemiCompleteDigraph, partial: PartialAssignment) -> int:
    """
    Minimum cut value over all completions of a partial assignment.

    By max-flow/min-cut this is the max-flow from the Y-assigned vertices to
    the X-assigned vertices; at a full assignment it equals cut_value.
    """
    if partial.n != T.n:
        raise InvalidParameterError(f"assignment covers {partial.n} vertices, instance has {T.n}")
    return max_flow_value(T, partial.y_mask, partial.x_mask)


# =============================================================================
# Enumeration
# =============================================================================

def _within_budget(
    T: SemiCompleteDigraph,
    x: int,
    y: int,
    direct: int,
    free_to_x: int,
    free_to_y: int,
    k: int,
    stats: EnumerationStats,
) -> bool:
    """
    Exact test min_completion_cut <= k for the assignment (x, y).

    Arcs from Y to X already count in every completion, and sending all free
    vertices to one side is one particular completion; max-flow only runs
    when neither bound decides.
    """
    if direct > k:
        return False
    if free_to_x <= k or free_to_y <= k:
        return True
    stats.flow_calls += 1
    return max_flow_value(T, y, x, limit=k) <= k


def iter_k_cuts(
    T: SemiCompleteDigraph,
    k: int,
    stats: Optional[EnumerationStats] = None,
) -> Iterator[Cut]:
    """
    Yield every k-cut exactly once, with polynomial delay.

    Depth-first branching over vertices in index order, X before Y. A branch
    is kept only while some completion of it is a k-cut, so every expanded
    node leads to an output. The first cut yielded is (V, ∅).
    """
    if k < 0:
        raise InvalidParameterError(f"k must be non-negative, got {k}")
    stats = stats if stats is not None else EnumerationStats()
    n = T.n
    out_masks = T.out_masks
    in_masks = T.in_masks
    everything = full_mask(n)

    # (t, x, y, arcs Y->X, value with free->X, value with free->Y)
    stack: list[tuple[int, int, int, int, int, int]] = [(0, 0, 0, 0, 0, 0)]
    while stack:
        t, x, y, direct, free_to_x, free_to_y = stack.pop()
        stats.nodes_expanded += 1
        if t == n:
            yield Cut(x, n)
            continue

        bit = 1 << t
        out_t = out_masks[t]
        in_t = in_masks[t]

        y_child = y | bit
        y_direct = direct + popcount(out_t & x)
        y_free_to_x = free_to_x + popcount(out_t & (everything ^ y_child)) - popcount(in_t & y)

        x_child = x | bit
        x_direct = direct + popcount(in_t & y)
        x_free_to_y = free_to_y + popcount(in_t & (everything ^ x_child)) - popcount(out_t & x)

        if _within_budget(T, x, y_child, y_direct, y_free_to_x, free_to_y, k, stats):
            stack.append((t + 1, x, y_child, y_direct, y_free_to_x, free_to_y))
        if _within_budget(T, x_child, y, x_direct, free_to_x, x_free_to_y, k, stats):
            stack.append((t + 1, x_child, y, x_direct, free_to_x, x_free_to_y))


def enumerate_k_cuts(T: SemiCompleteDigraph, k: int, cap: int) -> CutEnumeration:
    """
    Enumerate all k-cuts, stopping as soon as cut number cap + 1 is emitted.

    Args:
        T: the instance (weights, if any, are ignored)
        k: cut budget
        cap: maximum number of cuts to accept

    Returns:
        CutEnumeration, COMPLETE with every k-cut or CAP_EXCEEDED
    """
    if cap < 0:
        raise InvalidParameterError(f"cap must be non-negative, got {cap}")
    stats = EnumerationStats()
    cuts: list[Cut] = []
    for cut in iter_k_cuts(T, k, stats):
        cuts.append(cut)
        if len(cuts) > cap:
            logger.info(f"Cut cap exceeded: more than {cap} {k}-cuts on n={T.n}")
            return CutEnumeration(EnumerationStatus.CAP_EXCEEDED, k, cap, cuts, stats)

    logger.debug(
        f"Enumerated {len(cuts)} {k}-cuts on n={T.n} "
        f"({stats.nodes_expanded} nodes, {stats.flow_calls} max-flow calls)"
    )
    return CutEnumeration(EnumerationStatus.COMPLETE, k, cap, cuts, stats)


# =============================================================================
# Brute force (testing oracle)
# =============================================================================

def _check_brute_size(T: SemiCompleteDigraph) -> None:
    limit = get_settings().brute_count_max_n
    if T.n > limit:
        raise InstanceTooLargeForOracleError(T.n, limit)


def brute_k_cuts(T: SemiCompleteDigraph, k: int) -> list[Cut]:
    """All k-cuts by checking every one of the 2^n partitions, in mask order."""
    _check_brute_size(T)
    cuts = []
    for x in range(1 << T.n):
        cut = Cut(x, T.n)
        if cut_value(T, cut) <= k:
            cuts.append(cut)
    return cuts


def brute_count_k_cuts(T: SemiCompleteDigraph, k: int) -> int:
    return len(brute_k_cuts(T, k))
