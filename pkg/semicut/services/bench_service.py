"""
Bench Service

Cut-count exploration harness: for every (family, n, k, seed) generate an
instance, count its k-cuts up to a cap and record the count next to the
exact caps. Tasks run in a process pool when more than one worker is
configured; rows are sorted by (family, n, k, seed) before writing, so the
CSV does not depend on scheduling.

Features:
- Four instance families (transitive, noisy transitive, random tournament,
  random semi-complete)
- Per-task status tracking, failures recorded without aborting the batch
- Fixed CSV schema written through pandas
"""

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Iterable, Optional, TextIO, Union

import pandas as pd

from semicut.config import get_settings
from semicut.exceptions import InvalidParameterError
from semicut.models.schemas import BenchRow
from semicut.services.cut_service import enumerate_k_cuts
from semicut.services.digraph import (
    SemiCompleteDigraph,
    gen_noisy_transitive,
    gen_random_semicomplete,
    gen_random_tournament,
    gen_transitive,
)
from semicut.services.partition_service import cap_cutwidth, cap_fas
from semicut.utils.timing_utils import Stopwatch, utc_now

logger = logging.getLogger(__name__)

CSV_COLUMNS = list(BenchRow.model_fields)


# =============================================================================
# Task Status and Types
# =============================================================================

class BenchFamily(str, Enum):
    """Instance families of the benchmark."""
    TRANSITIVE = "transitive"
    NOISY = "noisy"
    TOURNAMENT = "tournament"
    SEMICOMPLETE = "semicomplete"


class TaskStatus(str, Enum):
    """Task execution status."""
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


@dataclass(frozen=True)
class BenchTask:
    family: BenchFamily
    n: int
    k: int
    seed: int
    cap: Optional[int] = None  # defaults to cap_cutwidth(n, k)
    p_double: float = 0.2
    record_timings: bool = True

    @property
    def key(self) -> tuple[str, int, int, int]:
        return (self.family.value, self.n, self.k, self.seed)


@dataclass
class BenchTaskInfo:
    """Information about one benchmark task."""
    task: BenchTask
    status: TaskStatus = TaskStatus.PENDING
    started_at: Optional[datetime] = None
    completed_at: Optional[datetime] = None
    row: Optional[dict] = None
    error: Optional[str] = None


@dataclass
class BenchResult:
    frame: pd.DataFrame
    tasks: list[BenchTaskInfo] = field(default_factory=list)

    @property
    def failed(self) -> list[BenchTaskInfo]:
        return [t for t in self.tasks if t.status == TaskStatus.FAILED]


# =============================================================================
# Argument parsing
# =============================================================================

def parse_int_list(text: str) -> list[int]:
    """
    Parse "a..b" (inclusive, empty when b < a), "x,y,z" or a single integer.

    Raises:
        InvalidParameterError: on malformed input
    """
    text = text.strip()
    if not text:
        return []
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise InvalidParameterError(f"expected 'a..b' or a comma list of integers, got {text!r}") from e


def parse_families(text: str) -> list[BenchFamily]:
    try:
        return [BenchFamily(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError as e:
        known = ", ".join(f.value for f in BenchFamily)
        raise InvalidParameterError(f"unknown family in {text!r} (known: {known})") from e


# =============================================================================
# Tasks
# =============================================================================

def build_instance(family: BenchFamily, n: int, k: int, seed: int, p_double: float = 0.2) -> SemiCompleteDigraph:
    """The instance of one task; the noisy family reverses min(k, n(n-1)/2) arcs."""
    if family == BenchFamily.TRANSITIVE:
        return gen_transitive(n)
    if family == BenchFamily.NOISY:
        return gen_noisy_transitive(n, min(k, n * (n - 1) // 2), seed)
    if family == BenchFamily.TOURNAMENT:
        return gen_random_tournament(n, seed)
    return gen_random_semicomplete(n, p_double, seed)


def plan_tasks(
    families: Iterable[BenchFamily],
    ns: Iterable[int],
    ks: Iterable[int],
    seeds: Iterable[int],
    cap: Optional[int] = None,
    p_double: Optional[float] = None,
    record_timings: Optional[bool] = None,
) -> list[BenchTask]:
    settings = get_settings()
    p_double = settings.bench_p_double if p_double is None else p_double
    record_timings = settings.record_timings if record_timings is None else record_timings
    ns, ks, seeds = list(ns), list(ks), list(seeds)
    for name, values in (("n", ns), ("k", ks), ("seed", seeds)):
        if any(v < 0 for v in values):
            raise InvalidParameterError(f"{name} values must be non-negative")
    if cap is not None and cap < 0:
        raise InvalidParameterError(f"cap must be non-negative, got {cap}")
    return [
        BenchTask(BenchFamily(f), n, k, s, cap, p_double, record_timings)
        for f in families
        for n in ns
        for k in ks
        for s in seeds
    ]


def run_bench_task(task: BenchTask) -> dict:
    """Generate, count and return one CSV row. Top-level so worker processes can pickle it."""
    watch = Stopwatch(enabled=task.record_timings)
    T = build_instance(task.family, task.n, task.k, task.seed, task.p_double)
    cutwidth_cap = cap_cutwidth(task.n, task.k)
    cap = cutwidth_cap if task.cap is None else task.cap
    enumeration = enumerate_k_cuts(T, task.k, cap)
    row = BenchRow(
        family=task.family.value,
        n=task.n,
        k=task.k,
        seed=task.seed,
        cuts=enumeration.cuts_emitted,
        cap_fas=cap_fas(task.n, task.k),
        cap_cutwidth=cutwidth_cap,
        capped=not enumeration.is_complete,
        ms=watch.elapsed_ms(),
    )
    return row.model_dump()


# =============================================================================
# Runner
# =============================================================================

def _finish(info: BenchTaskInfo, row: Optional[dict], error: Optional[BaseException]) -> None:
    info.completed_at = utc_now()
    if error is None:
        info.status = TaskStatus.COMPLETED
        info.row = row
    else:
        info.status = TaskStatus.FAILED
        info.error = str(error)
        logger.error(f"Bench task {info.task.key} failed: {error}")


def run_bench(tasks: list[BenchTask], workers: Optional[int] = None) -> BenchResult:
    """Run all tasks and collect the successful rows, sorted by (family, n, k, seed)."""
    workers = get_settings().bench_workers if workers is None else workers
    if workers < 1:
        raise InvalidParameterError(f"workers must be at least 1, got {workers}")

    infos = [BenchTaskInfo(task) for task in tasks]
    logger.info(f"Running {len(infos)} bench tasks with {workers} worker(s)")

    if workers == 1 or len(infos) <= 1:
        for info in infos:
            info.status = TaskStatus.RUNNING
            info.started_at = utc_now()
            try:
                _finish(info, run_bench_task(info.task), None)
            except Exception as e:
                _finish(info, None, e)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {}
            for info in infos:
                info.status = TaskStatus.RUNNING
                info.started_at = utc_now()
                futures[pool.submit(run_bench_task, info.task)] = info
            for future in as_completed(futures):
                info = futures[future]
                try:
                    _finish(info, future.result(), None)
                except Exception as e:
                    _finish(info, None, e)

    rows = [info.row for info in infos if info.row is not None]
    frame = pd.DataFrame(rows, columns=CSV_COLUMNS)
    if not frame.empty:
        frame = frame.sort_values(["family", "n", "k", "seed"], kind="mergesort").reset_index(drop=True)

    failed = sum(1 for info in infos if info.status == TaskStatus.FAILED)
    if failed:
        logger.warning(f"{failed} of {len(infos)} bench tasks failed")
    return BenchResult(frame=frame, tasks=infos)


def write_bench_csv(frame: pd.DataFrame, out: Union[str, TextIO]) -> None:
    frame.to_csv(out, index=False, columns=CSV_COLUMNS, lineterminator="\n")
