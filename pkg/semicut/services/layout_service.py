"""
Layout Service

Dynamic programming over the cut digraph D: vertices are the enumerated
k-cuts, and there is an arc from (X1, Y1) to (X2, Y2) whenever
X2 = X1 ∪ {v} for a single v ∉ X1. Source-to-sink paths from (∅, V) to
(V, ∅) are exactly the orderings whose prefix cuts are all k-cuts; the arc
weights turn path length into the objective:

    fas:  |E({v}, X1)|   -> number of backward arcs of the ordering
    ola:  |E(Y1, X1)|    -> cost of the ordering (sum of prefix cut sizes)

Arcs are generated on demand from the bit-set index, so memory stays
linear in the number of cuts.
"""

import heapq
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

from semicut.config import get_settings
from semicut.exceptions import InvalidParameterError, SourceOrSinkMissingError
from semicut.services.cut_service import Cut, CutEnumeration, cut_value, cut_weight
from semicut.services.digraph import (
    FeedbackArcSet,
    Ordering,
    SemiCompleteDigraph,
    Weight,
    backward_arcs,
)
from semicut.utils.bitset_utils import full_mask, iter_bits, popcount

logger = logging.getLogger(__name__)


# =============================================================================
# Domain Types
# =============================================================================

class WeightMode(str, Enum):
    REACHABILITY = "unit-reachability"
    FAS = "fas"
    OLA = "ola"
    FAS_WEIGHTED = "fas-weighted"
    OLA_WEIGHTED = "ola-weighted"

    @property
    def is_weighted(self) -> bool:
        return self in (WeightMode.FAS_WEIGHTED, WeightMode.OLA_WEIGHTED)


@dataclass(frozen=True)
class CutGraphPath:
    """A source-to-sink path; consecutive cuts differ by one added vertex."""
    cuts: tuple[Cut, ...]
    cut_ids: tuple[int, ...]
    total_weight: Weight = 0

    def __len__(self) -> int:
        """Number of arcs on the path (n for a full path)."""
        return max(len(self.cuts) - 1, 0)


@dataclass
class CutGraph:
    """
    The cut digraph over a family of cuts of one instance.

    cuts are sorted by level (|X|) then by mask; index maps an X bit-set to
    its cut id. Immutable after construction apart from the value cache.
    """
    digraph: SemiCompleteDigraph
    weight_mode: WeightMode
    cuts: tuple[Cut, ...]
    index: dict[int, int]
    levels: tuple[tuple[int, ...], ...]
    _values: dict[int, Weight] = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.digraph.n

    @property
    def size(self) -> int:
        return len(self.cuts)

    @property
    def source_id(self) -> Optional[int]:
        return self.index.get(0)

    @property
    def sink_id(self) -> Optional[int]:
        return self.index.get(full_mask(self.n))

    def successors(self, cut_id: int) -> Iterator[tuple[int, int]]:
        """(successor id, added vertex) pairs, in ascending vertex order."""
        x = self.cuts[cut_id].x
        for v in iter_bits(full_mask(self.n) ^ x):
            succ = self.index.get(x | 1 << v)
            if succ is not None:
                yield succ, v

    def out_degree(self, cut_id: int) -> int:
        return sum(1 for _ in self.successors(cut_id))

    def cut_value(self, cut_id: int) -> Weight:
        """|E(Y, X)| of a member cut (total weight in weighted modes), cached."""
        value = self._values.get(cut_id)
        if value is None:
            cut = self.cuts[cut_id]
            value = cut_weight(self.digraph, cut) if self.weight_mode.is_weighted else cut_value(self.digraph, cut)
            self._values[cut_id] = value
        return value

    def arc_weight(self, cut_id: int, v: int) -> Weight:
        """Weight of the arc leaving cut_id by adding v, under the graph's mode."""
        cut = self.cuts[cut_id]
        mode = self.weight_mode
        if mode == WeightMode.FAS:
            return arc_weight_fas(self.digraph, cut, v)
        if mode == WeightMode.FAS_WEIGHTED:
            return arc_weight_fas(self.digraph, cut, v, weighted=True)
        if mode in (WeightMode.OLA, WeightMode.OLA_WEIGHTED):
            return self.cut_value(cut_id)
        return 0


# =============================================================================
# Relations and weights
# =============================================================================

def extends(c1: Cut, c2: Cut) -> bool:
    """True iff X2 = X1 ∪ {v} for exactly one vertex v ∉ X1."""
    if c1.n != c2.n:
        return False
    added = c2.x ^ c1.x
    return c2.x & c1.x == c1.x and popcount(added) == 1


def extension_vertex(c1: Cut, c2: Cut) -> Optional[int]:
    """The vertex moved from Y to X between c1 and c2, or None if c2 does not extend c1."""
    if not extends(c1, c2):
        return None
    return (c2.x ^ c1.x).bit_length() - 1


def arc_weight_fas(T: SemiCompleteDigraph, c1: Cut, v: int, weighted: bool = False) -> Weight:
    """|E({v}, X1)|: arcs that stop pointing from Y to X once v joins X."""
    if c1.x >> v & 1:
        raise InvalidParameterError(f"vertex {v} already belongs to X")
    heads = T.out_masks[v] & c1.x
    if not weighted:
        return popcount(heads)
    return sum((T.arc_weight(v, u) for u in iter_bits(heads)), 0)


def arc_weight_ola(T: SemiCompleteDigraph, c1: Cut, weighted: bool = False) -> Weight:
    """|E(Y1, X1)|: every arc currently crossing backwards grows by one position."""
    return cut_weight(T, c1) if weighted else cut_value(T, c1)


# =============================================================================
# Construction
# =============================================================================

def build_cut_graph(
    T: SemiCompleteDigraph,
    cuts: Union[CutEnumeration, Iterable[Cut]],
    weight_mode: WeightMode = WeightMode.REACHABILITY,
) -> CutGraph:
    """
    Index a family of cuts as a cut digraph.

    Raises:
        SourceOrSinkMissingError: when handed an enumeration that hit its cap
    """
    if isinstance(cuts, CutEnumeration):
        if not cuts.is_complete:
            raise SourceOrSinkMissingError("cannot build a cut graph from a cap-exceeded enumeration")
        cuts = cuts.cuts

    ordered = sorted(set(cuts), key=lambda c: (c.size, c.x))
    for cut in ordered:
        if cut.n != T.n:
            raise InvalidParameterError(f"cut over {cut.n} vertices in a graph over {T.n}")

    index = {cut.x: i for i, cut in enumerate(ordered)}
    levels: list[list[int]] = [[] for _ in range(T.n + 1)]
    for i, cut in enumerate(ordered):
        levels[cut.size].append(i)

    return CutGraph(
        digraph=T,
        weight_mode=weight_mode,
        cuts=tuple(ordered),
        index=index,
        levels=tuple(tuple(level) for level in levels),
    )


def _require_endpoints(graph: CutGraph) -> tuple[int, int]:
    source, sink = graph.source_id, graph.sink_id
    if source is None or sink is None:
        raise SourceOrSinkMissingError()
    return source, sink


def _make_path(graph: CutGraph, ids: list[int], weight: Weight) -> CutGraphPath:
    return CutGraphPath(
        cuts=tuple(graph.cuts[i] for i in ids),
        cut_ids=tuple(ids),
        total_weight=weight,
    )


# =============================================================================
# Searches
# =============================================================================

def solve_reachability(graph: CutGraph) -> Optional[CutGraphPath]:
    """
    Depth-first search from (∅, V) to (V, ∅).

    Returns any source-to-sink path (the one found by trying added vertices
    in ascending order), or None when the sink is unreachable.
    """
    source, sink = _require_endpoints(graph)
    parent: dict[int, int] = {source: source}
    stack = [source]
    while stack:
        node = stack.pop()
        if node == sink:
            ids = [sink]
            while ids[-1] != source:
                ids.append(parent[ids[-1]])
            ids.reverse()
            return _make_path(graph, ids, 0)
        # reversed so the smallest added vertex is explored first
        for succ, _ in reversed(list(graph.successors(node))):
            if succ not in parent:
                parent[succ] = node
                stack.append(succ)
    return None


def _has_float(value: Weight) -> bool:
    return isinstance(value, float)


def solve_min_path(graph: CutGraph, budget: Weight) -> Optional[CutGraphPath]:
    """
    Minimum-weight path from (∅, V) to (V, ∅), if its weight is within budget.

    Dijkstra's algorithm on the non-negative arc weights of the graph's mode.
    Frontier ties are broken by level, then by the X bit-set as an integer, so
    the returned path is reproducible. Floating weights are compared against
    the budget with the configured tolerance.
    """
    if graph.weight_mode == WeightMode.REACHABILITY:
        raise InvalidParameterError("use solve_reachability for unit-reachability cut graphs")
    if budget < 0:
        return None
    source, sink = _require_endpoints(graph)
    tolerance = get_settings().float_tolerance

    def within(weight: Weight) -> bool:
        if _has_float(weight) or _has_float(budget):
            return weight <= budget + tolerance
        return weight <= budget

    dist: dict[int, Weight] = {source: 0}
    parent: dict[int, int] = {}
    done: set[int] = set()
    heap: list[tuple[Weight, int, int, int]] = [(0, 0, 0, source)]

    while heap:
        d, _, _, node = heapq.heappop(heap)
        if node in done:
            continue
        done.add(node)
        if node == sink:
            ids = [sink]
            while ids[-1] != source:
                ids.append(parent[ids[-1]])
            ids.reverse()
            return _make_path(graph, ids, d)
        for succ, v in graph.successors(node):
            if succ in done:
                continue
            nd = d + graph.arc_weight(node, v)
            if not within(nd):
                continue
            if succ not in dist or nd < dist[succ]:
                dist[succ] = nd
                parent[succ] = node
                cut = graph.cuts[succ]
                heapq.heappush(heap, (nd, cut.size, cut.x, succ))

    logger.debug(f"No path within budget {budget} in cut graph of {graph.size} cuts")
    return None


# =============================================================================
# Reconstruction
# =============================================================================

def path_to_ordering(path: CutGraphPath) -> Ordering:
    """Vertices in the order they join X along the path."""
    order = []
    for c1, c2 in zip(path.cuts, path.cuts[1:]):
        v = extension_vertex(c1, c2)
        if v is None:
            raise InvalidParameterError("consecutive cuts on the path do not extend each other")
        order.append(v)
    return Ordering(tuple(order))


def path_to_fas(T: SemiCompleteDigraph, path: CutGraphPath) -> FeedbackArcSet:
    return backward_arcs(T, path_to_ordering(path))


def exact_weight(value: Weight) -> Weight:
    """Collapse integral Fractions to int for reporting."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value
