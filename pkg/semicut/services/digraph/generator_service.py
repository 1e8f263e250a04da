"""
Instance Generators

Deterministic generators for tournaments and semi-complete digraphs. Every
random generator takes an explicit seed and draws from its own numpy
Generator, so there is no shared global state.
"""

import logging

import numpy as np

from semicut.exceptions import InvalidParameterError
from semicut.services.digraph.digraph_service import SemiCompleteDigraph, validate

logger = logging.getLogger(__name__)


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise InvalidParameterError(f"n must be a non-negative integer, got {n!r}")


def _upper_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All pairs i < j, in lexicographic order."""
    return np.triu_indices(n, k=1)


def gen_transitive(n: int) -> SemiCompleteDigraph:
    """Transitive tournament: arc (i, j) iff i < j."""
    _check_n(n)
    return validate(np.triu(np.ones((n, n), dtype=bool), k=1))


def gen_random_tournament(n: int, seed: int) -> SemiCompleteDigraph:
    """Orient every pair independently with probability 1/2."""
    _check_n(n)
    rng = np.random.default_rng(seed)
    rows, cols = _upper_pairs(n)
    forward = rng.random(rows.size) < 0.5
    arr = np.zeros((n, n), dtype=bool)
    arr[rows[forward], cols[forward]] = True
    arr[cols[~forward], rows[~forward]] = True
    return validate(arr)


def gen_noisy_transitive(n: int, r: int, seed: int) -> SemiCompleteDigraph:
    """
    Transitive tournament with r uniformly chosen arcs reversed.

    The reversed arcs are the backward arcs of the natural ordering, so the
    instance has a feedback arc set of size at most r.
    """
    _check_n(n)
    rows, cols = _upper_pairs(n)
    if not 0 <= r <= rows.size:
        raise InvalidParameterError(f"r must lie in [0, {rows.size}], got {r}")
    rng = np.random.default_rng(seed)
    flipped = rng.choice(rows.size, size=r, replace=False) if r else np.empty(0, dtype=np.intp)
    arr = np.triu(np.ones((n, n), dtype=bool), k=1)
    arr[rows[flipped], cols[flipped]] = False
    arr[cols[flipped], rows[flipped]] = True
    logger.debug(f"Generated noisy transitive tournament n={n} with {r} reversed arcs")
    return validate(arr)


def gen_random_semicomplete(n: int, p_double: float, seed: int) -> SemiCompleteDigraph:
    """Random tournament where each pair additionally gets both arcs with probability p_double."""
    _check_n(n)
    if not 0.0 <= p_double <= 1.0:
        raise InvalidParameterError(f"p_double must lie in [0, 1], got {p_double}")
    rng = np.random.default_rng(seed)
    rows, cols = _upper_pairs(n)
    forward = rng.random(rows.size) < 0.5
    double = rng.random(rows.size) < p_double
    arr = np.zeros((n, n), dtype=bool)
    arr[rows[forward | double], cols[forward | double]] = True
    arr[cols[~forward | double], rows[~forward | double]] = True
    return validate(arr)


def gen_weighted(T: SemiCompleteDigraph, max_weight: int, seed: int) -> SemiCompleteDigraph:
    """Attach integer weights drawn uniformly from 1..max_weight to every arc."""
    if max_weight < 1:
        raise InvalidParameterError(f"max_weight must be at least 1, got {max_weight}")
    rng = np.random.default_rng(seed)
    arcs = list(T.iter_arcs())
    drawn = rng.integers(1, max_weight + 1, size=len(arcs))
    return validate(T.arcs, {a: int(w) for a, w in zip(arcs, drawn)})
