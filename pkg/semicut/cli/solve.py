import argparse
import logging
import math
from typing import Optional

from semicut.cli.deps import EXIT_NO, EXIT_YES, emit, load_instance, parse_budget, timings_enabled
from semicut.exceptions import InvalidParameterError
from semicut.models.schemas import RunReport, SolveReport, objective_value
from semicut.services.digraph import Ordering, SemiCompleteDigraph, backward_arcs
from semicut.services.oracle_service import brute_solve
from semicut.services.solver_service import (
    Answer,
    Problem,
    SolveOutcome,
    decide,
    minimize,
    within_budget,
)
from semicut.utils.timing_utils import Stopwatch

logger = logging.getLogger(__name__)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("solve", parents=parents, help="decide or minimise fas / cutwidth / ola")
    parser.add_argument("problem", choices=[p.value for p in Problem])
    parser.add_argument("input", help="instance file ('-' for stdin)")
    target = parser.add_mutually_exclusive_group(required=True)
    target.add_argument("--k", default=None, help="decide objective <= k")
    target.add_argument("--minimize", action="store_true", help="find the smallest k with a solution")
    parser.add_argument("--weighted", action="store_true", help="use arc weights (fas, ola)")
    parser.add_argument("--engine", choices=("cuts", "brute"), default="cuts")
    parser.add_argument("--json", action="store_true", help="print a JSON report")
    parser.set_defaults(handler=run)


def _from_outcome(outcome: SolveOutcome, k_star: Optional[int] = None) -> dict:
    stats = outcome.stats
    return {
        "answer": outcome.answer.value,
        "reason": outcome.reason.value if outcome.reason else None,
        "objective": objective_value(outcome.objective),
        "k_star": k_star,
        "cuts_enumerated": stats.cuts_enumerated,
        "cut_graph_size": stats.cut_graph_size,
        "cut_budget": stats.cut_budget,
        "cap": stats.cap,
        "ordering": outcome.ordering,
    }


def _run_brute(problem: Problem, T: SemiCompleteDigraph, k, weighted: bool) -> dict:
    value, ordering = brute_solve(problem, T, weighted)
    if k is None:
        # smallest integer budget the cuts engine would accept
        k_star = math.ceil(value)
        if k_star > 0 and within_budget(value, k_star - 1):
            k_star -= 1
        return {"answer": Answer.YES.value, "objective": objective_value(value),
                "k_star": k_star, "ordering": ordering}
    if within_budget(value, k):
        return {"answer": Answer.YES.value, "objective": objective_value(value), "ordering": ordering}
    return {"answer": Answer.NO.value, "reason": "search-exhausted"}


def _render_text(report: SolveReport) -> str:
    r = report.report
    lines = [f"answer: {r.answer}"]
    if r.reason:
        lines.append(f"reason: {r.reason}")
    if r.k_star is not None:
        lines.append(f"k*: {r.k_star}")
    if r.objective is not None:
        lines.append(f"objective: {r.objective}")
    if report.ordering is not None:
        lines.append("ordering: " + " ".join(str(v) for v in report.ordering))
    if report.arcs is not None:
        lines.append("arcs: " + " ".join(f"{u}->{v}" for u, v in report.arcs))
    if r.engine == "cuts":
        lines.append(f"cuts: {r.cuts_enumerated} (budget {r.cut_budget}, cap {r.cap})")
    lines.append(f"time: {r.wall_time_ms} ms")
    return "\n".join(lines) + "\n"


def run(args: argparse.Namespace) -> int:
    problem = Problem(args.problem)
    if args.weighted and problem == Problem.CUTWIDTH:
        raise InvalidParameterError("cutwidth has no weighted variant")
    T, label = load_instance(args.input)
    k = None if args.minimize else parse_budget(args.k, args.weighted)
    watch = Stopwatch(enabled=timings_enabled(args))

    if args.engine == "brute":
        fields = _run_brute(problem, T, k, args.weighted)
    elif args.minimize:
        result = minimize(problem, T, weighted=args.weighted)
        fields = _from_outcome(result.outcome, k_star=result.k_star)
    else:
        fields = _from_outcome(decide(problem, T, k, weighted=args.weighted))

    ordering: Optional[Ordering] = fields.pop("ordering", None)
    arcs = None
    if ordering is not None and problem == Problem.FAS:
        arcs = backward_arcs(T, ordering).sorted_arcs()

    report = SolveReport(
        report=RunReport(
            problem=problem.value,
            engine=args.engine,
            weighted=args.weighted,
            n=T.n,
            k=objective_value(k),
            wall_time_ms=watch.elapsed_ms(),
            instance=label,
            **fields,
        ),
        ordering=list(ordering.perm) if ordering is not None else None,
        arcs=arcs,
    )

    emit(report.model_dump_json(indent=2) + "\n" if args.json else _render_text(report))
    return EXIT_YES if report.report.answer == Answer.YES.value else EXIT_NO
