"""Wall-clock timing of the engines over a grid series, CSV I/O and log-log fits."""

from __future__ import annotations

import csv
import gc
import io
import logging
import math
import statistics
import time
from dataclasses import asdict, dataclass, fields
from typing import Callable, Iterable, Optional, Sequence

from .errors import EngineFailure, InsufficientPoints
from .fast import reconstruct_fast
from .grid import Grid, SingularityReport
from .naive import reconstruct_naive
from .oracle import reconstruct_oracle, reports_equal
from .pairs import NodePair, enumerate_all
from .synth import SynthSpec, generate_split

log = logging.getLogger(__name__)

BUDGET_EXCEEDED = "budget-exceeded"

CSV_COLUMNS = [
    "algo",
    "n_blocks",
    "n_nodes",
    "n_pairs",
    "n_singular_nodes",
    "n_singular_classes",
    "wall_ns",
    "reps",
]

ENGINES: dict[str, Callable[[Grid, list[NodePair]], SingularityReport]] = {
    "naive": reconstruct_naive,
    "fast": reconstruct_fast,
    "oracle": lambda grid, pairs: reconstruct_oracle(pairs),
}


@dataclass
class BenchRecord:
    algo: str
    n_blocks: int
    n_nodes: int
    n_pairs: int
    n_singular_nodes: Optional[int]
    n_singular_classes: Optional[int]
    wall_ns: Optional[int]  # None marks a step skipped for budget
    reps: int

    @property
    def completed(self) -> bool:
        return self.wall_ns is not None


def time_engine(
    engine: str,
    grid: Grid,
    pairs: Sequence[NodePair],
    repetitions: int = 5,
    reference: Optional[SingularityReport] = None,
    label: str = "",
) -> tuple[BenchRecord, SingularityReport]:
    """Run ``engine`` ``repetitions`` times and keep the fastest wall time."""
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    run = ENGINES[engine]
    pairs = list(pairs)
    best = None
    report = None
    for _ in range(repetitions):
        gc.collect()
        gc.disable()
        try:
            t0 = time.perf_counter_ns()
            report = run(grid, pairs)
            elapsed = time.perf_counter_ns() - t0
        except Exception as exc:
            raise EngineFailure(f"{engine} failed on grid {label or '?'}: {exc}") from exc
        finally:
            gc.enable()
        best = elapsed if best is None else min(best, elapsed)
    if reference is not None and not reports_equal(report, reference):
        raise EngineFailure(f"{engine} disagrees with the reference report on grid {label or '?'}")
    record = BenchRecord(
        engine,
        grid.n_blocks,
        grid.node_count,
        len(pairs),
        report.singular_node_count,
        report.singular_class_count,
        best,
        repetitions,
    )
    return record, report


def run_series(
    specs: Iterable[SynthSpec],
    engines: Sequence[str] = ("fast", "naive"),
    repetitions: int = 5,
    naive_budget_s: float = 300.0,
) -> list[BenchRecord]:
    """Time every engine on every spec.

    The naive engine gets ``naive_budget_s`` of wall time per step (all
    repetitions together). A step predicted or measured to exceed it is
    recorded as budget-exceeded and so is every later step.
    """
    records: list[BenchRecord] = []
    last_naive: Optional[BenchRecord] = None
    naive_out = False
    budget_ns = naive_budget_s * 1e9
    for step, spec in enumerate(specs, start=1):
        grid, patches, _ = generate_split(spec)
        pairs = sorted(enumerate_all(grid, patches))
        label = f"step {step} {spec}"
        reference = None
        for engine in engines:
            if engine == "naive":
                if not naive_out and last_naive is not None:
                    ratio = len(pairs) / max(last_naive.n_pairs, 1)
                    predicted = last_naive.wall_ns * ratio**2 * repetitions
                    naive_out = predicted > budget_ns
                if naive_out:
                    records.append(BenchRecord("naive", grid.n_blocks, grid.node_count, len(pairs), None, None, None, 0))
                    log.info("%s: naive skipped, over budget", label)
                    continue
                t0 = time.perf_counter_ns()
            record, report = time_engine(engine, grid, pairs, repetitions, reference, label)
            if engine == "naive":
                if time.perf_counter_ns() - t0 > budget_ns:
                    naive_out = True
                    record = BenchRecord("naive", grid.n_blocks, grid.node_count, len(pairs), None, None, None, 0)
                    records.append(record)
                    log.info("%s: naive over budget", label)
                    continue
                last_naive = record
            reference = reference or report
            records.append(record)
            log.info("%s: %s %.6f s", label, engine, record.wall_ns / 1e9)
    return records


def format_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        row = asdict(r)
        if r.wall_ns is None:
            row["wall_ns"] = BUDGET_EXCEEDED
        writer.writerow(["" if row[c] is None else row[c] for c in CSV_COLUMNS])
    return buf.getvalue()


def parse_csv(text: str) -> list[BenchRecord]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    out = []
    for row in reader:
        values = {}
        for f in fields(BenchRecord):
            raw = row[f.name]
            if f.name == "algo":
                values[f.name] = raw
            elif raw in ("", BUDGET_EXCEEDED):
                values[f.name] = None
            else:
                values[f.name] = int(raw)
        out.append(BenchRecord(**values))
    return out


X_VARIABLES = {
    "singular-nodes": "n_singular_nodes",
    "singular-classes": "n_singular_classes",
    "pairs": "n_pairs",
}


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    residual: float
    points: int


def fit_loglog(records: Iterable[BenchRecord], x: str = "singular-nodes") -> SlopeFit:
    """Least-squares line through (ln x, ln wall time) of the completed records."""
    attr = X_VARIABLES[x]
    pts = [(getattr(r, attr), r.wall_ns) for r in records if r.completed]
    if len(pts) < 3:
        raise InsufficientPoints(f"need at least 3 completed records, got {len(pts)}")
    if any(xv is None or xv <= 0 or t <= 0 for xv, t in pts):
        raise InsufficientPoints("every point needs a positive x and a positive time")
    if len({xv for xv, _ in pts}) < len(pts):
        raise InsufficientPoints(f"{x} values must be distinct")
    lx = [math.log(xv) for xv, _ in pts]
    lt = [math.log(t) for _, t in pts]
    slope, intercept = statistics.linear_regression(lx, lt)
    residual = math.sqrt(sum((b - (slope * a + intercept)) ** 2 for a, b in zip(lx, lt)))
    return SlopeFit(slope, intercept, residual, len(pts))
