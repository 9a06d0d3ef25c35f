"""Benchmark harness: timed trials, suite grids, and the growth/correlation fits."""

from __future__ import annotations

import csv
import gc
import logging
import math
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Sequence

from .baselines import get_sorter, reference_sort
from .core import DEFAULT_MAX_SLOTS, check_slots
from .datagen import DatasetSpec, Distribution, generate
from .errors import DegenerateInput, TwinArrayError

log = logging.getLogger(__name__)

CSV_HEADER = ["algo", "dist", "n", "k", "seed", "rep", "wall_time_s", "aux_words", "path", "status"]
DEFAULT_REPS = 5


@dataclass
class TrialRecord:
    """One timed repetition, or a failure marker when ``status == "failed"``.

    ``k`` is the largest value in the sorted dataset (the range the sort
    actually indexed), not the generator's upper bound.
    """

    algo: str
    dist: str
    n: int
    k: int
    seed: int
    rep: int
    wall_time: float | None
    aux_words: int | None
    path: str | None = None
    status: str = "ok"
    error: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def csv_row(self) -> list[str]:
        return [
            self.algo,
            self.dist,
            str(self.n),
            str(self.k),
            str(self.seed),
            str(self.rep),
            "" if self.wall_time is None else repr(self.wall_time),
            "" if self.aux_words is None else str(self.aux_words),
            self.path or "",
            self.status,
        ]


@dataclass
class AnalysisResult:
    pearson_r: float | None = None
    loglog_slope: float | None = None
    fit_r2: float | None = None


def _timed_call(fn, data, max_slots):
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        t0 = time.perf_counter()
        report = fn(data, max_slots=max_slots)
        t1 = time.perf_counter()
    finally:
        if gc_was_enabled:
            gc.enable()
    return report, t1 - t0


def time_sort(
    algo: str,
    data: Sequence[int],
    reps: int = DEFAULT_REPS,
    *,
    dist: str = "",
    seed: int = 0,
    max_slots: int = DEFAULT_MAX_SLOTS,
) -> list[TrialRecord]:
    """Run ``algo`` ``reps`` times on fresh copies of ``data``.

    An untimed first run is checked against :func:`reference_sort` and doubles
    as a warm-up.  Only the sort call is timed (monotonic clock, garbage
    collector paused).  A mismatch or an error from the sort yields a single
    failure marker instead of timings.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    fn = get_sorter(algo)
    n = len(data)
    k = max(data) if n else 0

    def failed(msg: str) -> list[TrialRecord]:
        log.warning("%s on %s n=%d failed: %s", algo, dist, n, msg)
        return [TrialRecord(algo, dist, n, k, seed, 0, None, None, None, "failed", msg)]

    try:
        check = fn(list(data), max_slots=max_slots)
    except (TwinArrayError, MemoryError) as exc:
        return failed(f"{type(exc).__name__}: {exc}")
    if check.output != reference_sort(data):
        return failed("output differs from reference sort")
    del check

    records = []
    for rep in range(reps):
        work = list(data)
        report, elapsed = _timed_call(fn, work, max_slots)
        path = report.path.value if report.path is not None else None
        records.append(TrialRecord(algo, dist, n, k, seed, rep, elapsed, report.aux_words, path))
        del report, work
    return records


@dataclass
class SuiteConfig:
    algos: Sequence[str]
    specs: Sequence[DatasetSpec]
    reps: int = DEFAULT_REPS
    max_slots: int = DEFAULT_MAX_SLOTS


def run_suite(config: SuiteConfig) -> list[TrialRecord]:
    """Run every algorithm on every dataset, in spec-major order.

    Each dataset is generated once and shared by all algorithms.  Invalid
    specs produce one failure marker per algorithm.
    """
    records: list[TrialRecord] = []
    for spec in config.specs:
        try:
            data = generate(spec)
        except TwinArrayError as exc:
            for algo in config.algos:
                records.append(TrialRecord(algo, spec.dist.value, spec.n, spec.k, spec.seed, 0,
                                           None, None, None, "failed", str(exc)))
            continue
        for algo in config.algos:
            records.extend(time_sort(algo, data, config.reps, dist=spec.dist.value,
                                     seed=spec.seed, max_slots=config.max_slots))
    return records


# -- statistics ---------------------------------------------------------------------


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    if len(xs) != len(ys):
        raise ValueError("xs and ys differ in length")
    if len(xs) < 2:
        raise DegenerateInput("pearson needs at least two points")
    mx = math.fsum(xs) / len(xs)
    my = math.fsum(ys) / len(ys)
    dx = [x - mx for x in xs]
    dy = [y - my for y in ys]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0 or syy == 0:
        raise DegenerateInput("zero variance")
    sxy = math.fsum(a * b for a, b in zip(dx, dy))
    return max(-1.0, min(1.0, sxy / math.sqrt(sxx * syy)))


def loglog_slope(ns: Sequence[float], ts: Sequence[float]) -> AnalysisResult:
    """Least-squares fit of ``log t = a + b log n``; returns slope ``b`` and r²."""
    if len(ns) != len(ts):
        raise ValueError("ns and ts differ in length")
    if len(ns) < 3:
        raise DegenerateInput("slope fit needs at least three points")
    if min(ns) < 1 or min(ts) <= 0:
        raise DegenerateInput("slope fit needs n >= 1 and t > 0")
    lx = [math.log(v) for v in ns]
    ly = [math.log(v) for v in ts]
    mx = math.fsum(lx) / len(lx)
    my = math.fsum(ly) / len(ly)
    sxx = math.fsum((x - mx) ** 2 for x in lx)
    if sxx == 0:
        raise DegenerateInput("all n equal")
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(lx, ly))
    syy = math.fsum((y - my) ** 2 for y in ly)
    slope = sxy / sxx
    r2 = 1.0 if syy == 0 else min(1.0, max(0.0, sxy * sxy / (sxx * syy)))
    return AnalysisResult(loglog_slope=slope, fit_r2=r2)


def median_time(records: Iterable[TrialRecord]) -> float:
    return statistics.median(r.wall_time for r in records if r.ok)


@dataclass
class RangeSweep:
    records: list[TrialRecord]
    ks: list[int] = field(default_factory=list)
    times: list[float] = field(default_factory=list)
    aux_words: list[int] = field(default_factory=list)
    time_fit: AnalysisResult = field(default_factory=AnalysisResult)
    memory_fit: AnalysisResult = field(default_factory=AnalysisResult)


def range_sweep(
    n_fixed: int,
    ks: Sequence[int],
    reps: int = DEFAULT_REPS,
    *,
    seed: int = 0,
    max_slots: int = DEFAULT_MAX_SLOTS,
) -> RangeSweep:
    """TwinArray time and memory against the value range at fixed ``n``.

    Each point is a Random dataset with bound ``k``; series are correlated
    against the realised range (the dataset maximum).
    """
    if len(ks) < 5:
        raise ValueError("range sweep needs at least five k values")
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValueError("ks must be strictly increasing")
    if ks[0] < n_fixed:
        raise ValueError("every k must be >= n_fixed")
    sweep = RangeSweep(records=[])
    for k in ks:
        check_slots(k, max_slots)
        data = generate(DatasetSpec(Distribution.RANDOM, n_fixed, k, seed))
        recs = time_sort("twinarray", data, reps, dist=Distribution.RANDOM.value, seed=seed, max_slots=max_slots)
        sweep.records.extend(recs)
        if not recs[0].ok:
            raise RuntimeError(f"range sweep trial at k={k} failed: {recs[0].error}")
        sweep.ks.append(recs[0].k)
        sweep.times.append(median_time(recs))
        sweep.aux_words.append(recs[0].aux_words)
    sweep.time_fit = AnalysisResult(pearson_r=pearson(sweep.ks, sweep.times))
    sweep.memory_fit = AnalysisResult(pearson_r=pearson(sweep.ks, sweep.aux_words))
    return sweep


# -- CSV ------------------------------------------------------------------------------


def write_csv(records: Iterable[TrialRecord], out: IO[str] | str | Path) -> None:
    if isinstance(out, (str, Path)):
        with open(out, "w", newline="") as fh:
            write_csv(records, fh)
        return
    writer = csv.writer(out, lineterminator="\r\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(rec.csv_row())


def read_csv(source: IO[str] | str | Path) -> list[TrialRecord]:
    """Parse a benchmark CSV; raises ``ValueError`` on any schema violation."""
    if isinstance(source, (str, Path)):
        with open(source, newline="") as fh:
            return read_csv(fh)
    reader = csv.reader(source)
    header = next(reader, None)
    if header != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header!r}")
    records = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise ValueError(f"line {lineno}: expected {len(CSV_HEADER)} fields, got {len(row)}")
        algo, dist, n, k, seed, rep, wall, aux, path, status = row
        if status not in ("ok", "failed"):
            raise ValueError(f"line {lineno}: bad status {status!r}")
        try:
            rec = TrialRecord(
                algo, dist, int(n), int(k), int(seed), int(rep),
                float(wall) if wall else None,
                int(aux) if aux else None,
                path or None,
                status,
            )
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if rec.ok and (rec.wall_time is None or rec.aux_words is None):
            raise ValueError(f"line {lineno}: ok row without timing or memory")
        records.append(rec)
    return records
