"""
Oracle Service

Brute-force reference values for tests and `solve --engine brute`: every
ordering of the vertices is visited in lexicographic order and the three
objectives are evaluated exactly, with no pruning. The walk shares work
between orderings with a common prefix but still reaches all n! leaves.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Union

from semicut.config import get_settings
from semicut.exceptions import (
    InstanceTooLargeForOracleError,
    InvalidParameterError,
    WeightedCalledOnUnweightedError,
)
from semicut.services.digraph import Ordering, SemiCompleteDigraph, Weight
from semicut.services.layout_service import exact_weight
from semicut.services.solver_service import Problem
from semicut.utils.bitset_utils import iter_bits, popcount

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleOptima:
    fas: Weight
    cutwidth: int
    ola: Weight


class _Leaf(NamedTuple):
    perm: tuple[int, ...]
    fas: Weight
    width: int
    cost: Weight


def _check_size(T: SemiCompleteDigraph) -> None:
    limit = get_settings().oracle_max_n
    if T.n > limit:
        raise InstanceTooLargeForOracleError(T.n, limit)


def _weight_rows(T: SemiCompleteDigraph) -> list[list[Weight]]:
    rows: list[list[Weight]] = [[0] * T.n for _ in range(T.n)]
    for u, v in T.iter_arcs():
        rows[u][v] = T.arc_weight(u, v)
    return rows


def _iter_orderings(T: SemiCompleteDigraph, weighted: bool) -> Iterator[_Leaf]:
    """
    All orderings in lexicographic order with their objectives.

    A prefix step appending v adds the arcs from v back into the prefix to
    the backward arcs, and the running prefix cut changes by the arcs of v
    into the prefix (no longer crossing) and from the remaining suffix into v.
    Width is the max of the n-1 proper prefix cuts (arc counts, weights
    ignored) and cost their sum.
    """
    if weighted and not T.is_weighted:
        raise WeightedCalledOnUnweightedError("brute force with weights")
    n = T.n
    if n == 0:
        yield _Leaf((), 0, 0, 0)
        return

    out_masks, in_masks = T.out_masks, T.in_masks
    rows = _weight_rows(T) if weighted else None
    everything = T.vertex_mask

    # (perm, prefix mask, fas, width, cost, prefix cut, weighted prefix cut)
    stack: list[tuple[tuple[int, ...], int, Weight, int, Weight, int, Weight]] = [((), 0, 0, 0, 0, 0, 0)]
    while stack:
        perm, prefix, fas, width, cost, cut, wcut = stack.pop()
        if len(perm) == n:
            yield _Leaf(perm, fas, width, cost)
            continue
        proper = len(perm) < n - 1
        for v in reversed(list(iter_bits(everything ^ prefix))):
            grown = prefix | 1 << v
            back = out_masks[v] & prefix
            incoming = in_masks[v] & (everything ^ grown)
            new_cut = cut - popcount(back) + popcount(incoming)
            if rows is None:
                added, new_wcut = popcount(back), new_cut
            else:
                added = sum((rows[v][u] for u in iter_bits(back)), 0)
                new_wcut = wcut - added + sum((rows[u][v] for u in iter_bits(incoming)), 0)
            if proper:
                stack.append((perm + (v,), grown, fas + added, max(width, new_cut), cost + new_wcut, new_cut, new_wcut))
            else:
                # the full prefix is not a proper cut
                stack.append((perm + (v,), grown, fas + added, width, cost, 0, 0))


# =============================================================================
# Public oracle
# =============================================================================

def brute_optima(T: SemiCompleteDigraph, weighted: bool = False) -> OracleOptima:
    """Exact (FAS, cutwidth, OLA) optima in one pass over all orderings."""
    _check_size(T)
    best_fas: Optional[Weight] = None
    best_width: Optional[int] = None
    best_cost: Optional[Weight] = None
    for leaf in _iter_orderings(T, weighted):
        if best_fas is None or leaf.fas < best_fas:
            best_fas = leaf.fas
        if best_width is None or leaf.width < best_width:
            best_width = leaf.width
        if best_cost is None or leaf.cost < best_cost:
            best_cost = leaf.cost
    return OracleOptima(exact_weight(best_fas), best_width, exact_weight(best_cost))


def brute_min_fas(T: SemiCompleteDigraph, weighted: bool = False) -> Weight:
    return brute_optima(T, weighted).fas


def brute_cutwidth(T: SemiCompleteDigraph) -> int:
    return brute_optima(T).cutwidth


def brute_ola(T: SemiCompleteDigraph, weighted: bool = False) -> Weight:
    return brute_optima(T, weighted).ola


def brute_min_fas_weighted(T: SemiCompleteDigraph) -> Weight:
    return brute_min_fas(T, weighted=True)


def brute_ola_weighted(T: SemiCompleteDigraph) -> Weight:
    return brute_ola(T, weighted=True)


def brute_solve(
    problem: Union[Problem, str],
    T: SemiCompleteDigraph,
    weighted: bool = False,
) -> tuple[Weight, Ordering]:
    """Optimum of one problem and the lexicographically first ordering attaining it."""
    problem = Problem(problem)
    if weighted and problem == Problem.CUTWIDTH:
        raise InvalidParameterError("cutwidth has no weighted variant")
    _check_size(T)
    field_of = {Problem.FAS: 1, Problem.CUTWIDTH: 2, Problem.OLA: 3}[problem]

    best_value: Optional[Weight] = None
    best_perm: tuple[int, ...] = ()
    for leaf in _iter_orderings(T, weighted):
        value = leaf[field_of]
        if best_value is None or value < best_value:
            best_value, best_perm = value, leaf.perm

    logger.debug(f"Brute-force {problem.value} on n={T.n}: {best_value}")
    return exact_weight(best_value), Ordering(best_perm)
