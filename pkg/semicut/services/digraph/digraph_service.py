"""
Digraph Service

Semi-complete digraph representation, validation, and evaluation of vertex
orderings (width, cost, backward arcs).

Vertices are the integers 0..n-1. Alongside the boolean arc matrix every
instance keeps per-vertex out/in neighbourhoods as bit-sets, which is what
the cut machinery works with.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

import networkx as nx
import numpy as np

from semicut.exceptions import (
    InvalidParameterError,
    LoopPresentError,
    MalformedSolutionError,
    MatrixShapeError,
    MissingArcPairError,
    WeightBelowOneError,
    WeightedCalledOnUnweightedError,
    WeightOnMissingArcError,
)
from semicut.utils.bitset_utils import full_mask, iter_bits, popcount

logger = logging.getLogger(__name__)

Weight = Union[int, float, Fraction]
Arc = tuple[int, int]


# =============================================================================
# Domain Types
# =============================================================================

@dataclass(frozen=True, eq=False)
class SemiCompleteDigraph:
    """
    A validated semi-complete digraph.

    Build instances through validate() (or the generators); the constructor
    itself does not check the invariants. The arc matrix is read-only.
    """
    n: int
    arcs: np.ndarray
    weights: Optional[Mapping[Arc, Weight]] = None
    out_masks: tuple[int, ...] = field(default=(), repr=False)
    in_masks: tuple[int, ...] = field(default=(), repr=False)

    @property
    def is_weighted(self) -> bool:
        return self.weights is not None

    @property
    def vertex_mask(self) -> int:
        return full_mask(self.n)

    @property
    def arc_count(self) -> int:
        return int(self.arcs.sum())

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    def arc_weight(self, u: int, v: int) -> Weight:
        """Weight of arc (u, v); 1 on unweighted instances."""
        if self.weights is None:
            return 1
        return self.weights[(u, v)]

    def iter_arcs(self) -> Iterator[Arc]:
        """All arcs in lexicographic order."""
        for u in range(self.n):
            for v in iter_bits(self.out_masks[u]):
                yield (u, v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SemiCompleteDigraph):
            return NotImplemented
        if self.n != other.n or not np.array_equal(self.arcs, other.arcs):
            return False
        if self.weights is None or other.weights is None:
            return self.weights is None and other.weights is None
        return dict(self.weights) == dict(other.weights)

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Ordering:
    """A permutation of the vertices; perm[i] sits at position i+1."""
    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(len(self.perm))):
            raise MalformedSolutionError(f"not a permutation of 0..{len(self.perm) - 1}: {self.perm}")

    @classmethod
    def natural(cls, n: int) -> "Ordering":
        return cls(tuple(range(n)))

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "Ordering":
        return cls(tuple(int(v) for v in vertices))

    def positions(self) -> list[int]:
        """positions()[v] = 0-based position of v."""
        pos = [0] * len(self.perm)
        for i, v in enumerate(self.perm):
            pos[v] = i
        return pos

    def __len__(self) -> int:
        return len(self.perm)

    def __iter__(self) -> Iterator[int]:
        return iter(self.perm)


@dataclass(frozen=True)
class FeedbackArcSet:
    arcs: frozenset[Arc]

    @classmethod
    def of(cls, arcs: Iterable[Arc]) -> "FeedbackArcSet":
        return cls(frozenset((int(u), int(v)) for u, v in arcs))

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def __len__(self) -> int:
        return len(self.arcs)

    def __iter__(self) -> Iterator[Arc]:
        return iter(self.sorted_arcs())


# =============================================================================
# Validation
# =============================================================================

def _as_matrix(matrix: object) -> np.ndarray:
    arr = np.asarray(matrix)
    if arr.size == 0:
        return np.zeros((0, 0), dtype=bool)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise MatrixShapeError(f"expected a square matrix, got shape {arr.shape}")
    if arr.dtype != bool:
        if not np.isin(arr, (0, 1)).all():
            raise MatrixShapeError("matrix entries must be boolean (0/1)")
        arr = arr.astype(bool)
    return arr


def _check_weight(u: int, v: int, w: object) -> Weight:
    if isinstance(w, bool) or not isinstance(w, (int, float, Fraction)):
        raise InvalidParameterError(f"weight of arc ({u},{v}) is not a number: {w!r}")
    if w != w or w < 1:  # NaN or below one
        raise WeightBelowOneError(u, v, w)
    return w


def validate(
    matrix: object,
    weights: Optional[Mapping[Arc, Weight]] = None,
) -> SemiCompleteDigraph:
    """
    Validate an arc matrix (and optional arc weights) as a semi-complete digraph.

    Args:
        matrix: square array-like of booleans; matrix[u][v] true iff arc (u,v)
        weights: optional map (u, v) -> weight >= 1, defined exactly on arcs

    Returns:
        The immutable SemiCompleteDigraph

    Raises:
        MatrixShapeError, LoopPresentError, MissingArcPairError,
        WeightBelowOneError, WeightOnMissingArcError
    """
    arr = _as_matrix(matrix)
    n = arr.shape[0]

    diagonal = np.flatnonzero(np.diagonal(arr))
    if diagonal.size:
        raise LoopPresentError(int(diagonal[0]))

    # Semi-completeness: every off-diagonal pair has an arc in some direction
    covered = arr | arr.T
    np.fill_diagonal(covered, True)
    missing = np.argwhere(~covered)
    if missing.size:
        u, v = (int(x) for x in missing[0])
        raise MissingArcPairError(min(u, v), max(u, v))

    checked: Optional[dict[Arc, Weight]] = None
    if weights is not None:
        checked = {}
        for (u, v), w in sorted(weights.items()):
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n) or not arr[u, v]:
                raise WeightOnMissingArcError(u, v)
            checked[(u, v)] = _check_weight(u, v, w)
        for u, v in zip(*np.nonzero(arr)):
            if (int(u), int(v)) not in checked:
                raise InvalidParameterError(f"arc ({u},{v}) has no weight")

    frozen = arr.copy()
    frozen.flags.writeable = False

    out_masks = tuple(
        sum(1 << int(v) for v in np.flatnonzero(frozen[u])) for u in range(n)
    )
    in_masks = tuple(
        sum(1 << int(u) for u in np.flatnonzero(frozen[:, v])) for v in range(n)
    )

    return SemiCompleteDigraph(
        n=n,
        arcs=frozen,
        weights=MappingProxyType(checked) if checked is not None else None,
        out_masks=out_masks,
        in_masks=in_masks,
    )


def with_weights(T: SemiCompleteDigraph, weights: Mapping[Arc, Weight]) -> SemiCompleteDigraph:
    """Return a copy of T carrying the given arc weights (revalidated)."""
    return validate(T.arcs, weights)


def without_weights(T: SemiCompleteDigraph) -> SemiCompleteDigraph:
    if not T.is_weighted:
        return T
    return validate(T.arcs)


def relabel(T: SemiCompleteDigraph, perm: Sequence[int]) -> SemiCompleteDigraph:
    """Rename vertex v to perm[v]."""
    ordering = Ordering.of(perm)
    if len(ordering) != T.n:
        raise InvalidParameterError(f"relabelling needs {T.n} entries, got {len(ordering)}")
    idx = np.asarray(ordering.perm, dtype=int)
    arr = np.zeros_like(T.arcs)
    arr[np.ix_(idx, idx)] = T.arcs
    weights = None
    if T.weights is not None:
        weights = {(ordering.perm[u], ordering.perm[v]): w for (u, v), w in T.weights.items()}
    return validate(arr, weights)


def is_tournament(T: SemiCompleteDigraph) -> bool:
    """True iff no pair of vertices is joined by arcs in both directions."""
    return not bool((T.arcs & T.arcs.T).any())


def to_networkx(T: SemiCompleteDigraph) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(T.n))
    for u, v in T.iter_arcs():
        graph.add_edge(u, v, weight=T.arc_weight(u, v))
    return graph


# =============================================================================
# Ordering evaluation
# =============================================================================

def _require_ordering(T: SemiCompleteDigraph, sigma: Ordering) -> None:
    if len(sigma) != T.n:
        raise MalformedSolutionError(f"ordering has {len(sigma)} vertices, instance has {T.n}")


def cut_profile(T: SemiCompleteDigraph, sigma: Ordering) -> list[int]:
    """
    Sizes of the n-1 prefix cuts of an ordering.

    Entry t-1 is the number of arcs directed from {v_{t+1},...,v_n} to
    {v_1,...,v_t}.
    """
    _require_ordering(T, sigma)
    everything = T.vertex_mask
    prefix = 0
    value = 0
    profile: list[int] = []
    for v in sigma.perm[:-1]:
        # v leaves the suffix: its arcs into the prefix stop counting,
        # arcs from the rest of the suffix into v start counting
        value -= popcount(T.out_masks[v] & prefix)
        prefix |= 1 << v
        value += popcount(T.in_masks[v] & (everything ^ prefix))
        profile.append(value)
    return profile


def ordering_width(T: SemiCompleteDigraph, sigma: Ordering) -> int:
    return max(cut_profile(T, sigma), default=0)


def ordering_cost(T: SemiCompleteDigraph, sigma: Ordering) -> int:
    """Sum of lengths of the backward arcs of sigma."""
    _require_ordering(T, sigma)
    if T.n == 0:
        return 0
    pos = np.asarray(sigma.positions(), dtype=np.int64)
    lengths = pos[:, None] - pos[None, :]
    return int(np.where(T.arcs & (lengths > 0), lengths, 0).sum())


def ordering_cost_weighted(T: SemiCompleteDigraph, sigma: Ordering) -> Weight:
    """Sum of weight * length over the backward arcs of sigma."""
    if not T.is_weighted:
        raise WeightedCalledOnUnweightedError("ordering_cost_weighted")
    _require_ordering(T, sigma)
    pos = sigma.positions()
    total: Weight = 0
    for (u, v), w in T.weights.items():
        if pos[u] > pos[v]:
            total += w * (pos[u] - pos[v])
    return total


def ordering_cost_by_cuts(T: SemiCompleteDigraph, sigma: Ordering) -> int:
    return sum(cut_profile(T, sigma))


def backward_arcs(T: SemiCompleteDigraph, sigma: Ordering) -> FeedbackArcSet:
    """Arcs (v_i, v_j) of T with i > j."""
    _require_ordering(T, sigma)
    earlier = 0
    arcs: list[Arc] = []
    for v in sigma.perm:
        arcs.extend((v, u) for u in iter_bits(T.out_masks[v] & earlier))
        earlier |= 1 << v
    return FeedbackArcSet.of(arcs)


def fas_weight(T: SemiCompleteDigraph, fas: FeedbackArcSet) -> Weight:
    if T.weights is None:
        return len(fas)
    return sum((T.weights[a] for a in fas.arcs), 0)


def _remaining_graph(T: SemiCompleteDigraph, fas: FeedbackArcSet) -> nx.DiGraph:
    for u, v in fas.arcs:
        if not (0 <= u < T.n and 0 <= v < T.n) or not T.has_arc(u, v):
            raise MalformedSolutionError(f"({u},{v}) is not an arc of the instance")
    graph = nx.DiGraph()
    graph.add_nodes_from(range(T.n))
    graph.add_edges_from(a for a in T.iter_arcs() if a not in fas.arcs)
    return graph


def is_feedback_arc_set(T: SemiCompleteDigraph, fas: FeedbackArcSet) -> bool:
    """True iff every member is an arc of T and T minus the set is acyclic."""
    try:
        graph = _remaining_graph(T, fas)
    except MalformedSolutionError:
        return False
    return nx.is_directed_acyclic_graph(graph)


def ordering_from_fas(T: SemiCompleteDigraph, fas: FeedbackArcSet) -> Ordering:
    """Smallest topological ordering (lexicographically) of T minus the arc set."""
    graph = _remaining_graph(T, fas)
    try:
        return Ordering.of(nx.lexicographical_topological_sort(graph))
    except nx.NetworkXUnfeasible as e:
        raise MalformedSolutionError("arc set leaves a cycle") from e
