import argparse
import io
import logging

from semicut.cli.deps import EXIT_YES, emit, timings_enabled
from semicut.services.bench_service import (
    parse_families,
    parse_int_list,
    plan_tasks,
    run_bench,
    write_bench_csv,
)

logger = logging.getLogger(__name__)


def register(subparsers, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser("bench", parents=parents, help="count k-cuts over instance families, write CSV")
    parser.add_argument("--families", default="transitive", help="comma list of transitive,noisy,tournament,semicomplete")
    parser.add_argument("--n", default="8..12", help="vertex counts, 'a..b' or comma list")
    parser.add_argument("--k", default="0..5", help="cut budgets, 'a..b' or comma list")
    parser.add_argument("--seeds", default="0", help="seeds, 'a..b' or comma list")
    parser.add_argument("--workers", type=int, default=None, help="process-pool size")
    parser.add_argument("--cap", type=int, default=None, help="count cap (default: cutwidth cap per row)")
    parser.add_argument("--out", default=None, help="CSV path (stdout when omitted)")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    tasks = plan_tasks(
        parse_families(args.families),
        parse_int_list(args.n),
        parse_int_list(args.k),
        parse_int_list(args.seeds),
        cap=args.cap,
        record_timings=timings_enabled(args),
    )
    result = run_bench(tasks, workers=args.workers)

    buffer = io.StringIO()
    write_bench_csv(result.frame, buffer)
    emit(buffer.getvalue(), args.out)
    logger.info(f"Bench finished: {len(result.frame)} rows, {len(result.failed)} failed")
    return EXIT_YES
