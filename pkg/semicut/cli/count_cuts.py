import argparse
import logging

from semicut.cli.deps import EXIT_YES, emit, load_instance, timings_enabled
from semicut.exceptions import InvalidParameterError
from semicut.models.schemas import CountCutsReport
from semicut.services.cut_service import enumerate_k_cuts
from semicut.services.partition_service import (
    analytic_cap_cutwidth,
    analytic_cap_fas,
    cap_cutwidth,
    cap_fas,
    cap_ola,
)
from semicut.utils.timing_utils import Stopwatch

logger = logging.getLogger(__name__)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("count-cuts", parents=parents, help="count the k-cuts of an instance")
    parser.add_argument("input", help="instance file ('-' for stdin)")
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--cap", type=int, default=None, help="stop after this many cuts (default: cutwidth cap)")
    parser.add_argument("--json", action="store_true", help="print a JSON report")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    if args.k < 0:
        raise InvalidParameterError(f"--k must be non-negative, got {args.k}")
    T, label = load_instance(args.input)
    watch = Stopwatch(enabled=timings_enabled(args))

    cap = cap_cutwidth(T.n, args.k) if args.cap is None else args.cap
    enumeration = enumerate_k_cuts(T, args.k, cap)
    report = CountCutsReport(
        n=T.n,
        k=args.k,
        count=enumeration.cuts_emitted if enumeration.is_complete else None,
        capped=not enumeration.is_complete,
        cap=cap,
        cap_fas=cap_fas(T.n, args.k),
        cap_cutwidth=cap_cutwidth(T.n, args.k),
        cap_ola=cap_ola(T.n, args.k),
        analytic_cap_fas=analytic_cap_fas(T.n, args.k),
        analytic_cap_cutwidth=analytic_cap_cutwidth(T.n, args.k),
        wall_time_ms=watch.elapsed_ms(),
        instance=label,
    )

    if args.json:
        emit(report.model_dump_json(indent=2) + "\n")
    else:
        lines = [
            f"count: {report.count if report.count is not None else 'cap-exceeded'}",
            f"cap: {report.cap}",
            f"cap_fas: {report.cap_fas} (analytic {report.analytic_cap_fas:.6g})",
            f"cap_cutwidth: {report.cap_cutwidth} (analytic {report.analytic_cap_cutwidth:.6g})",
            f"cap_ola: {report.cap_ola}",
            f"time: {report.wall_time_ms} ms",
        ]
        emit("\n".join(lines) + "\n")
    return EXIT_YES
