"""
Solver Service

Decision procedures for feedback arc set, cutwidth and optimal linear
arrangement on semi-complete digraphs, built from the same pipeline:

1. Pick the cut budget and the cap for the problem and target k
2. Enumerate the budget-cuts, aborting as soon as the cap is exceeded
   (a certified No)
3. Index the cuts as a cut graph and search it (reachability for
   cutwidth, budgeted Dijkstra for the others)
4. Rebuild the certificate from the path and re-check it independently

Features:
- Unweighted and weighted FAS / OLA (weights >= 1), unweighted cutwidth
- Minimisation by doubling + binary search, or a linear scan
- Certificate verification through the digraph evaluators
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from semicut.config import get_settings
from semicut.exceptions import (
    InvalidParameterError,
    MalformedSolutionError,
    SolverInvariantError,
    WeightedCalledOnUnweightedError,
)
from semicut.services.cut_service import enumerate_k_cuts
from semicut.services.digraph import (
    FeedbackArcSet,
    Ordering,
    SemiCompleteDigraph,
    Weight,
    backward_arcs,
    fas_weight,
    is_feedback_arc_set,
    ordering_cost,
    ordering_cost_weighted,
    ordering_width,
)
from semicut.services.layout_service import (
    WeightMode,
    build_cut_graph,
    exact_weight,
    path_to_ordering,
    solve_min_path,
    solve_reachability,
)
from semicut.services.partition_service import cap_cutwidth, cap_fas, cap_ola, ola_width_budget
from semicut.utils.timing_utils import Stopwatch

logger = logging.getLogger(__name__)


# =============================================================================
# Domain Types
# =============================================================================

class Problem(str, Enum):
    FAS = "fas"
    CUTWIDTH = "cutwidth"
    OLA = "ola"


class Answer(str, Enum):
    YES = "yes"
    NO = "no"


class NoReason(str, Enum):
    CAP_EXCEEDED = "cap-exceeded"
    SEARCH_EXHAUSTED = "search-exhausted"


Solution = Union[Ordering, FeedbackArcSet]


@dataclass
class SolveStats:
    cut_budget: int = 0
    cap: int = 0
    cuts_enumerated: int = 0
    cut_graph_size: int = 0
    nodes_expanded: int = 0
    flow_calls: int = 0
    elapsed_ms: float = 0.0


@dataclass
class SolveOutcome:
    """
    Answer of one decision run.

    A Yes carries the ordering read off the cut-graph path, the backward arcs
    of that ordering for FAS, and the objective recomputed from scratch.
    """
    problem: Problem
    k: Weight
    weighted: bool
    answer: Answer
    reason: Optional[NoReason] = None
    ordering: Optional[Ordering] = None
    fas: Optional[FeedbackArcSet] = None
    objective: Optional[Weight] = None
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def is_yes(self) -> bool:
        return self.answer == Answer.YES

    @property
    def solution(self) -> Optional[Solution]:
        return self.fas if self.problem == Problem.FAS else self.ordering


@dataclass
class MinimizeResult:
    k_star: int
    outcome: SolveOutcome
    decisions: int = 0


# =============================================================================
# Objectives and verification
# =============================================================================

def within_budget(value: Weight, k: Weight) -> bool:
    """value <= k, with the configured tolerance when either side is a float."""
    if isinstance(value, float) or isinstance(k, float):
        return value <= k + get_settings().float_tolerance
    return value <= k


def objective_of(
    problem: Problem,
    T: SemiCompleteDigraph,
    sigma: Ordering,
    weighted: bool = False,
) -> Weight:
    """Objective value of an ordering, recomputed from the instance."""
    if problem == Problem.CUTWIDTH:
        return ordering_width(T, sigma)
    if problem == Problem.FAS:
        fas = backward_arcs(T, sigma)
        return exact_weight(fas_weight(T, fas)) if weighted else len(fas)
    return exact_weight(ordering_cost_weighted(T, sigma)) if weighted else ordering_cost(T, sigma)


def verify(
    problem: Problem,
    T: SemiCompleteDigraph,
    solution: Solution,
    k: Weight,
    weighted: bool = False,
) -> bool:
    """
    Check a certificate against the budget from scratch.

    FAS accepts an arc set (which must leave T acyclic) or an ordering (whose
    backward arcs are used). Cutwidth and OLA accept an ordering.

    Raises:
        MalformedSolutionError: wrong certificate type or size, or an arc set
            that is not a feedback arc set of T
    """
    problem = Problem(problem)
    if weighted and not T.is_weighted:
        raise WeightedCalledOnUnweightedError(f"verify({problem.value}, weighted)")

    if problem == Problem.FAS and isinstance(solution, FeedbackArcSet):
        if not is_feedback_arc_set(T, solution):
            raise MalformedSolutionError("arc set is not a feedback arc set of the instance")
        value = fas_weight(T, solution) if weighted else len(solution)
        return within_budget(value, k)

    if not isinstance(solution, Ordering):
        raise MalformedSolutionError(f"{problem.value} expects an ordering, got {type(solution).__name__}")
    return within_budget(objective_of(problem, T, solution, weighted), k)


# =============================================================================
# Decision procedures
# =============================================================================

def _check_k(k: Weight, weighted: bool) -> None:
    if isinstance(k, bool) or not isinstance(k, (int, float, Fraction)):
        raise InvalidParameterError(f"k must be a number, got {k!r}")
    if not weighted and not isinstance(k, int):
        raise InvalidParameterError(f"k must be an integer for unweighted problems, got {k!r}")
    if isinstance(k, float) and not math.isfinite(k):
        raise InvalidParameterError(f"k must be finite, got {k!r}")
    if k < 0:
        raise InvalidParameterError(f"k must be non-negative, got {k}")


def _plan(problem: Problem, n: int, k: Weight) -> tuple[int, int]:
    """(cut budget, cap). Weights are >= 1, so floor(k) bounds the unweighted objective."""
    base = math.floor(k)
    if problem == Problem.FAS:
        return base, cap_fas(n, base)
    if problem == Problem.CUTWIDTH:
        return base, cap_cutwidth(n, base)
    return ola_width_budget(base), cap_ola(n, base)


_MODES = {
    (Problem.FAS, False): WeightMode.FAS,
    (Problem.FAS, True): WeightMode.FAS_WEIGHTED,
    (Problem.OLA, False): WeightMode.OLA,
    (Problem.OLA, True): WeightMode.OLA_WEIGHTED,
    (Problem.CUTWIDTH, False): WeightMode.REACHABILITY,
}


def decide(
    problem: Union[Problem, str],
    T: SemiCompleteDigraph,
    k: Weight,
    weighted: bool = False,
) -> SolveOutcome:
    """
    Decide whether T has a solution of objective at most k.

    Args:
        problem: fas, cutwidth or ola
        T: the instance
        k: target; may be fractional for weighted problems
        weighted: use arc weights (FAS and OLA only)

    Returns:
        SolveOutcome with a verified certificate on Yes
    """
    problem = Problem(problem)
    _check_k(k, weighted)
    if weighted:
        if problem == Problem.CUTWIDTH:
            raise InvalidParameterError("cutwidth has no weighted variant")
        if not T.is_weighted:
            raise WeightedCalledOnUnweightedError(f"{problem.value}_decide_weighted")

    watch = Stopwatch()
    cut_budget, cap = _plan(problem, T.n, k)
    stats = SolveStats(cut_budget=cut_budget, cap=cap)
    logger.info(f"Deciding {problem.value} <= {k} on n={T.n} (weighted={weighted}, budget={cut_budget}, cap={cap})")

    def finish(outcome: SolveOutcome) -> SolveOutcome:
        stats.elapsed_ms = watch.elapsed_ms()
        logger.info(
            f"{problem.value} <= {k}: {outcome.answer.value}"
            + (f" ({outcome.reason.value})" if outcome.reason else "")
            + f", {stats.cuts_enumerated} cuts"
        )
        return outcome

    enumeration = enumerate_k_cuts(T, cut_budget, cap)
    stats.cuts_enumerated = enumeration.cuts_emitted
    stats.nodes_expanded = enumeration.stats.nodes_expanded
    stats.flow_calls = enumeration.stats.flow_calls
    if not enumeration.is_complete:
        return finish(SolveOutcome(problem, k, weighted, Answer.NO, NoReason.CAP_EXCEEDED, stats=stats))

    graph = build_cut_graph(T, enumeration, _MODES[(problem, weighted)])
    stats.cut_graph_size = graph.size
    if problem == Problem.CUTWIDTH:
        path = solve_reachability(graph)
    else:
        path = solve_min_path(graph, k)
    if path is None:
        return finish(SolveOutcome(problem, k, weighted, Answer.NO, NoReason.SEARCH_EXHAUSTED, stats=stats))

    ordering = path_to_ordering(path)
    fas = backward_arcs(T, ordering) if problem == Problem.FAS else None
    objective = objective_of(problem, T, ordering, weighted)
    certificate = fas if fas is not None else ordering
    if not verify(problem, T, certificate, k, weighted):
        logger.error(f"{problem.value} certificate with objective {objective} exceeds k={k} on n={T.n}")
        raise SolverInvariantError(f"{problem.value} certificate failed re-verification")
    if problem != Problem.CUTWIDTH and objective != exact_weight(path.total_weight) and not isinstance(objective, float):
        logger.error(f"Path weight {path.total_weight} disagrees with objective {objective}")
        raise SolverInvariantError("cut-graph path weight disagrees with the ordering objective")

    return finish(
        SolveOutcome(
            problem, k, weighted, Answer.YES,
            ordering=ordering, fas=fas, objective=objective, stats=stats,
        )
    )


def fas_decide(T: SemiCompleteDigraph, k: int) -> SolveOutcome:
    return decide(Problem.FAS, T, k)


def fas_decide_weighted(T: SemiCompleteDigraph, k: Weight) -> SolveOutcome:
    return decide(Problem.FAS, T, k, weighted=True)


def cutwidth_decide(T: SemiCompleteDigraph, k: int) -> SolveOutcome:
    return decide(Problem.CUTWIDTH, T, k)


def ola_decide(T: SemiCompleteDigraph, k: int) -> SolveOutcome:
    return decide(Problem.OLA, T, k)


def ola_decide_weighted(T: SemiCompleteDigraph, k: Weight) -> SolveOutcome:
    return decide(Problem.OLA, T, k, weighted=True)


# =============================================================================
# Minimisation
# =============================================================================

def minimize(
    problem: Union[Problem, str],
    T: SemiCompleteDigraph,
    weighted: bool = False,
    strategy: Optional[str] = None,
) -> MinimizeResult:
    """
    Smallest integer k with a Yes answer, with its certificate.

    The natural ordering's objective is a Yes, so the search never goes past
    it. For weighted problems the outcome's objective is the exact optimum
    (k_star is its ceiling).
    """
    problem = Problem(problem)
    strategy = strategy or get_settings().minimize_strategy
    if strategy not in ("doubling", "linear"):
        raise InvalidParameterError(f"unknown minimize strategy {strategy!r}")
    if weighted and not T.is_weighted:
        raise WeightedCalledOnUnweightedError(f"minimize({problem.value}, weighted)")

    hi = math.ceil(objective_of(problem, T, Ordering.natural(T.n), weighted))
    decisions = 0

    def run(k: int) -> SolveOutcome:
        nonlocal decisions
        decisions += 1
        return decide(problem, T, k, weighted)

    best: Optional[SolveOutcome] = None
    if strategy == "linear":
        for k in range(hi + 1):
            outcome = run(k)
            if outcome.is_yes:
                best = outcome
                break
    else:
        # doubling for a first Yes, then binary search below it
        lo = -1
        k = 0
        while True:
            k = min(k, hi)
            outcome = run(k)
            if outcome.is_yes:
                best = outcome
                break
            if k == hi:
                break
            lo = k
            k = max(1, 2 * k)
        if best is not None:
            upper = int(best.k)
            while upper - lo > 1:
                mid = (lo + upper) // 2
                outcome = run(mid)
                if outcome.is_yes:
                    best, upper = outcome, mid
                else:
                    lo = mid

    if best is None:
        logger.error(f"No Yes answer for {problem.value} up to the natural-ordering objective {hi}")
        raise SolverInvariantError(f"{problem.value} minimisation found no solution up to {hi}")

    logger.info(f"Minimum {problem.value} on n={T.n}: k*={best.k} after {decisions} decisions")
    return MinimizeResult(k_star=int(best.k), outcome=best, decisions=decisions)
