"""Distance analysis of boundary sets and the verdict over the comparisons.

For each comparison set, every MVS element contributes its minimum distance to
that set; the five-number summaries of those per-element distances are what
the box plots in the accompanying reports show. The boundary verdict holds
when the MVS sits strictly closer to its paired MIS than to anything else.
"""

from __future__ import annotations

import csv
import json
import statistics
from dataclasses import dataclass
from pathlib import Path

from .candidates import TestSet
from .distance import DistanceMetric, set_min_distances
from .errors import EmptySetError, MissingRowError

COMPARISON_ORDER = (
    "mvs_vs_reference_invalid",
    "mvs_vs_random",
    "mvs_vs_tset",
    "mvs_vs_mis",
    "mvs_vs_alt_mvs",
)

_KEY_TO_COMPARISON = {
    "reference_invalid": "mvs_vs_reference_invalid",
    "random": "mvs_vs_random",
    "tset": "mvs_vs_tset",
    "mis": "mvs_vs_mis",
    "alt_mvs": "mvs_vs_alt_mvs",
}


@dataclass(frozen=True)
class DistanceSummary:
    n: int
    min: float
    q1: float
    median: float
    q3: float
    max: float
    mean: float


@dataclass(frozen=True)
class ComparisonRow:
    comparison: str
    distances: tuple[float, ...]
    summary: DistanceSummary


@dataclass(frozen=True)
class ComparisonReport:
    metric_name: str
    elements: tuple[str, ...]  # MVS strings, aligned with every row's distances
    rows: tuple[ComparisonRow, ...]

    def row(self, comparison: str) -> ComparisonRow:
        for r in self.rows:
            if r.comparison == comparison:
                return r
        raise MissingRowError(f"report has no {comparison} row")


@dataclass(frozen=True)
class BoundaryVerdict:
    holds: bool
    margin: float
    medians: dict[str, float]


def summarize(values: list[float]) -> DistanceSummary:
    if not values:
        raise EmptySetError("cannot summarize zero distances")
    if len(values) == 1:
        v = values[0]
        return DistanceSummary(1, v, v, v, v, v, v)
    q1, median, q3 = statistics.quantiles(values, n=4, method="inclusive")
    return DistanceSummary(
        len(values), min(values), q1, median, q3, max(values), statistics.fmean(values)
    )


def compare_sets(
    mvs: TestSet, others: dict[str, TestSet], metric: DistanceMetric, jobs: int = 1
) -> ComparisonReport:
    """Min-distance distributions from each MVS element to every named set."""
    if len(mvs) == 0:
        raise EmptySetError("MVS is empty")
    for key in others:
        if key not in _KEY_TO_COMPARISON:
            raise ValueError(f"unknown comparison set: {key!r}")
    by_comparison = {_KEY_TO_COMPARISON[k]: v for k, v in others.items()}
    rows = []
    for name in COMPARISON_ORDER:
        if name not in by_comparison:
            continue
        distances = set_min_distances(mvs, by_comparison[name], metric, jobs)
        rows.append(ComparisonRow(name, tuple(distances), summarize(distances)))
    return ComparisonReport(metric.name, tuple(mvs.strings()), tuple(rows))


def cross_metric_analysis(
    mvs: TestSet, others: dict[str, TestSet], metrics: list[DistanceMetric], jobs: int = 1
) -> list[ComparisonReport]:
    """The same comparisons evaluated under every requested metric."""
    return [compare_sets(mvs, others, m, jobs) for m in metrics]


def boundary_verdict(report: ComparisonReport) -> BoundaryVerdict:
    """Holds iff the MVS-to-MIS median is strictly the smallest in the report."""
    medians = {r.comparison: r.summary.median for r in report.rows}
    if "mvs_vs_mis" not in medians:
        raise MissingRowError("verdict needs the mvs_vs_mis comparison")
    others = {k: v for k, v in medians.items() if k != "mvs_vs_mis"}
    if not others:
        raise MissingRowError("verdict needs at least one comparison besides mvs_vs_mis")
    margin = min(others.values()) - medians["mvs_vs_mis"]
    return BoundaryVerdict(margin > 0, margin, medians)


def write_distances_csv(report: ComparisonReport, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["comparison", "element_index", "element", "distance"])
        for row in report.rows:
            for i, d in enumerate(row.distances):
                writer.writerow([row.comparison, i, report.elements[i], repr(float(d))])


def write_summary_csv(report: ComparisonReport, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["comparison", "n", "min", "q1", "median", "q3", "max", "mean"])
        for row in report.rows:
            s = row.summary
            writer.writerow(
                [row.comparison, s.n] + [repr(float(v)) for v in (s.min, s.q1, s.median, s.q3, s.max, s.mean)]
            )


def write_verdict_json(verdict: BoundaryVerdict, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {"holds": verdict.holds, "margin": verdict.margin, "medians": verdict.medians}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
