"""Summaries of benchmark CSVs: markdown tables, range correlations, slope fits.

Everything here is computed from :class:`~twinarray.bench.TrialRecord` rows
alone, so a report can always be regenerated from its CSV.
"""

from __future__ import annotations

import statistics
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .bench import TrialRecord, loglog_slope, pearson
from .errors import DegenerateInput

#: A (algo, dist, n) group is treated as a range sweep when it holds at least
#: this many distinct k values spanning at least a factor of RANGE_SPAN.
MIN_SERIES_POINTS = 3
RANGE_SPAN = 2


@dataclass
class Cell:
    algo: str
    dist: str
    n: int
    median_time: float | None
    aux_words: int | None
    reps: int
    failed: bool = False


@dataclass
class RangeSeries:
    algo: str
    dist: str
    n: int
    ks: list[int]
    times: list[float]
    aux: list[int]
    time_r: float | None = None
    memory_r: float | None = None


@dataclass
class GrowthFit:
    algo: str
    dist: str
    ns: list[int]
    times: list[float]
    aux: list[int]
    slope: float | None = None
    r2: float | None = None


@dataclass
class Analysis:
    cells: list[Cell] = field(default_factory=list)
    sweeps: list[RangeSeries] = field(default_factory=list)
    fits: list[GrowthFit] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def _ordered(keys: Iterable) -> list:
    return list(dict.fromkeys(keys))


def analyze(records: list[TrialRecord]) -> Analysis:
    result = Analysis()
    if len(records) < 2:
        result.warnings.append(f"only {len(records)} row(s); nothing to analyse")
        return result

    by_cell: dict[tuple[str, str, int], list[TrialRecord]] = defaultdict(list)
    for rec in records:
        by_cell[(rec.algo, rec.dist, rec.n)].append(rec)
    for (algo, dist, n), recs in by_cell.items():
        ok = [r for r in recs if r.ok]
        if ok:
            result.cells.append(Cell(algo, dist, n, statistics.median(r.wall_time for r in ok),
                                     int(statistics.median(r.aux_words for r in ok)), len(ok)))
        else:
            result.cells.append(Cell(algo, dist, n, None, None, 0, failed=True))

    ok_records = [r for r in records if r.ok]

    # range sweeps: fixed (algo, dist, n), varying k
    by_k: dict[tuple[str, str, int], dict[int, list[TrialRecord]]] = defaultdict(lambda: defaultdict(list))
    for rec in ok_records:
        by_k[(rec.algo, rec.dist, rec.n)][rec.k].append(rec)
    for (algo, dist, n), groups in by_k.items():
        ks = sorted(groups)
        if len(ks) < MIN_SERIES_POINTS or ks[-1] < RANGE_SPAN * max(ks[0], 1):
            continue
        series = RangeSeries(
            algo, dist, n, ks,
            [statistics.median(r.wall_time for r in groups[k]) for k in ks],
            [int(statistics.median(r.aux_words for r in groups[k])) for k in ks],
        )
        try:
            series.time_r = pearson(series.ks, series.times)
        except DegenerateInput as exc:
            result.warnings.append(f"{algo}/{dist} n={n}: time correlation undefined ({exc})")
        try:
            series.memory_r = pearson(series.ks, series.aux)
        except DegenerateInput as exc:
            result.warnings.append(f"{algo}/{dist} n={n}: memory correlation undefined ({exc})")
        result.sweeps.append(series)

    # growth exponents over n
    by_n: dict[tuple[str, str], dict[int, list[TrialRecord]]] = defaultdict(lambda: defaultdict(list))
    for rec in ok_records:
        if rec.n >= 1:
            by_n[(rec.algo, rec.dist)][rec.n].append(rec)
    for (algo, dist), groups in by_n.items():
        ns = sorted(groups)
        if len(ns) < MIN_SERIES_POINTS:
            continue
        fit = GrowthFit(
            algo, dist, ns,
            [statistics.median(r.wall_time for r in groups[n]) for n in ns],
            [int(statistics.median(r.aux_words for r in groups[n])) for n in ns],
        )
        try:
            res = loglog_slope(fit.ns, fit.times)
            fit.slope, fit.r2 = res.loglog_slope, res.fit_r2
        except DegenerateInput as exc:
            result.warnings.append(f"{algo}/{dist}: slope fit undefined ({exc})")
        result.fits.append(fit)
    return result


def _fmt(value: float | None, spec: str) -> str:
    return "n/a" if value is None else format(value, spec)


def render_markdown(analysis: Analysis) -> str:
    lines = ["# Benchmark report", ""]
    if analysis.cells:
        sizes = sorted({c.n for c in analysis.cells})
        index = {(c.algo, c.dist, c.n): c for c in analysis.cells}
        rows = _ordered((c.algo, c.dist) for c in analysis.cells)
        head = ["Algorithm", "Dist."]
        head += [f"time (s) n={n}" for n in sizes]
        head += [f"aux words n={n}" for n in sizes]
        lines.append("## Median run time and auxiliary memory")
        lines.append("")
        lines.append("| " + " | ".join(head) + " |")
        lines.append("|" + "|".join(["---"] * len(head)) + "|")
        prev_algo = None
        for algo, dist in rows:
            cells = [index.get((algo, dist, n)) for n in sizes]
            times = ["" if c is None else ("failed" if c.failed else f"{c.median_time:.6f}") for c in cells]
            aux = ["" if c is None else ("failed" if c.failed else str(c.aux_words)) for c in cells]
            name = algo if algo != prev_algo else ""
            prev_algo = algo
            lines.append("| " + " | ".join([name, dist, *times, *aux]) + " |")
        lines.append("")

    if analysis.sweeps:
        lines.append("## Range correlations (Pearson r against k)")
        lines.append("")
        lines.append("| Algorithm | Dist. | n | points | k range | time r | memory r |")
        lines.append("|---|---|---|---|---|---|---|")
        for s in analysis.sweeps:
            lines.append(
                f"| {s.algo} | {s.dist} | {s.n} | {len(s.ks)} | {s.ks[0]}..{s.ks[-1]} "
                f"| {_fmt(s.time_r, '.12f')} | {_fmt(s.memory_r, '.12f')} |"
            )
        lines.append("")

    if analysis.fits:
        lines.append("## Growth exponents (log-log slope of time against n)")
        lines.append("")
        lines.append("| Algorithm | Dist. | n range | slope | r² |")
        lines.append("|---|---|---|---|---|")
        for f in analysis.fits:
            lines.append(
                f"| {f.algo} | {f.dist} | {f.ns[0]}..{f.ns[-1]} | {_fmt(f.slope, '.6f')} | {_fmt(f.r2, '.6f')} |"
            )
        lines.append("")

    if analysis.warnings:
        lines.append("## Warnings")
        lines.append("")
        lines.extend(f"- {w}" for w in analysis.warnings)
        lines.append("")
    return "\n".join(lines)


def _write_series(path: Path, xs: Iterable, ys: Iterable) -> None:
    with open(path, "w") as fh:
        for x, y in zip(xs, ys):
            fh.write(f"{x} {y!r}\n")


def write_plotdata(analysis: Analysis, directory: str | Path) -> list[Path]:
    """One two-column ``x y`` file per series, named ``<algo>_<dist>_<metric>.dat``."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for s in analysis.sweeps:
        for metric, ys in (("time_vs_k", s.times), ("aux_vs_k", s.aux)):
            p = out / f"{s.algo}_{s.dist}_{metric}.dat"
            _write_series(p, s.ks, ys)
            written.append(p)
    for f in analysis.fits:
        for metric, ys in (("time_vs_n", f.times), ("aux_vs_n", f.aux)):
            p = out / f"{f.algo}_{f.dist}_{metric}.dat"
            _write_series(p, f.ns, ys)
            written.append(p)
    return written
