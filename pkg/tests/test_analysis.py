"""Comparison reports: summaries against stdlib oracles, verdicts, artifacts."""

import csv
import json
import statistics

import pytest
from hypothesis import given, strategies as st

from borderline.analysis import (
    COMPARISON_ORDER,
    boundary_verdict,
    compare_sets,
    cross_metric_analysis,
    summarize,
    write_distances_csv,
    write_summary_csv,
    write_verdict_json,
)
from borderline.candidates import Candidate, TestSet
from borderline.distance import build_metric, min_dist_to_set
from borderline.errors import EmptySetError, MissingRowError


def make_set(role, strings, valid=True):
    return TestSet(role, [Candidate(s, valid, role) for s in strings])


class TestSummarize:
    @given(st.lists(st.floats(min_value=0, max_value=1e6), min_size=2, max_size=60))
    def test_matches_statistics_quantiles(self, values):
        s = summarize(values)
        q1, med, q3 = statistics.quantiles(values, n=4, method="inclusive")
        assert (s.q1, s.median, s.q3) == (q1, med, q3)
        assert s.n == len(values)
        assert s.min == min(values) and s.max == max(values)
        assert s.mean == statistics.fmean(values)

    def test_single_value_collapses(self):
        s = summarize([3.5])
        assert (s.min, s.q1, s.median, s.q3, s.max, s.mean) == (3.5,) * 6

    def test_median_of_four_is_interpolated(self):
        assert summarize([1.0, 2.0, 3.0, 10.0]).median == 2.5

    def test_empty_rejected(self):
        with pytest.raises(EmptySetError):
            summarize([])


class TestCompareSets:
    def test_distances_are_per_element_minima(self):
        metric = build_metric("levenshtein")
        mvs = make_set("mvs", ["abc", "wxyz"])
        tset = make_set("tset", ["abd", "abcd", "zzzz"])
        report = compare_sets(mvs, {"tset": tset}, metric)
        row = report.row("mvs_vs_tset")
        expect = tuple(min_dist_to_set(s, tset.strings(), metric) for s in ["abc", "wxyz"])
        assert row.distances == expect
        assert report.elements == ("abc", "wxyz")

    def test_rows_follow_canonical_order(self):
        metric = build_metric("levenshtein")
        mvs = make_set("mvs", ["aa"])
        others = {
            "mis": make_set("mis", ["ab"], valid=False),
            "random": make_set("random", ["ba"]),
            "tset": make_set("tset", ["aa"]),
        }
        report = compare_sets(mvs, others, metric)
        names = [r.comparison for r in report.rows]
        assert names == [c for c in COMPARISON_ORDER if c in names]
        assert names == ["mvs_vs_random", "mvs_vs_tset", "mvs_vs_mis"]

    def test_empty_mvs_rejected(self):
        with pytest.raises(EmptySetError):
            compare_sets(make_set("mvs", []), {}, build_metric("ncd"))

    def test_unknown_comparison_key_rejected(self):
        with pytest.raises(ValueError):
            compare_sets(
                make_set("mvs", ["a"]),
                {"controls": make_set("random", ["b"])},
                build_metric("ncd"),
            )

    def test_missing_row_lookup(self):
        report = compare_sets(
            make_set("mvs", ["a"]), {"tset": make_set("tset", ["b"])},
            build_metric("levenshtein"),
        )
        with pytest.raises(MissingRowError):
            report.row("mvs_vs_mis")

    def test_cross_metric_covers_each_metric(self):
        mvs = make_set("mvs", ["2020-01-01"])
        others = {"tset": make_set("tset", ["2020-01-02"])}
        metrics = [build_metric(n) for n in ("ncd", "levenshtein", "day", "msid")]
        reports = cross_metric_analysis(mvs, others, metrics)
        assert [r.metric_name for r in reports] == ["ncd", "levenshtein", "day", "msid"]


class TestVerdict:
    def report(self, mis_strings, tset_strings):
        return compare_sets(
            make_set("mvs", ["abcd", "abce"]),
            {
                "mis": make_set("mis", mis_strings, valid=False),
                "tset": make_set("tset", tset_strings),
            },
            build_metric("levenshtein"),
        )

    def test_holds_with_positive_margin(self):
        v = boundary_verdict(self.report(["abcf"], ["zzzzzz"]))
        assert v.holds and v.margin == 5.0
        assert v.medians["mvs_vs_mis"] == 1.0
        assert v.medians["mvs_vs_tset"] == 6.0

    def test_tie_does_not_hold(self):
        v = boundary_verdict(self.report(["abcf"], ["abcg"]))
        assert not v.holds and v.margin == 0.0

    def test_requires_mis_row(self):
        report = compare_sets(
            make_set("mvs", ["a"]), {"tset": make_set("tset", ["b"])},
            build_metric("levenshtein"),
        )
        with pytest.raises(MissingRowError):
            boundary_verdict(report)

    def test_requires_some_other_row(self):
        report = compare_sets(
            make_set("mvs", ["a"]), {"mis": make_set("mis", ["b"], valid=False)},
            build_metric("levenshtein"),
        )
        with pytest.raises(MissingRowError):
            boundary_verdict(report)


class TestArtifacts:
    def full_report(self):
        return compare_sets(
            make_set("mvs", ["abc", "abd", "xy"]),
            {
                "mis": make_set("mis", ["ab", "abq"], valid=False),
                "tset": make_set("tset", ["abcde"]),
                "random": make_set("random", ["mnop"]),
            },
            build_metric("levenshtein"),
        )

    def test_distances_csv_shape(self, tmp_path):
        report = self.full_report()
        path = tmp_path / "distances.csv"
        write_distances_csv(report, path)
        rows = list(csv.reader(path.open()))
        assert rows[0] == ["comparison", "element_index", "element", "distance"]
        body = rows[1:]
        assert len(body) == 3 * 3  # three comparisons, three MVS elements
        for comparison, idx, element, distance in body:
            assert comparison in COMPARISON_ORDER
            assert report.elements[int(idx)] == element
            float(distance)

    def test_summary_csv_matches_report(self, tmp_path):
        report = self.full_report()
        path = tmp_path / "summary.csv"
        write_summary_csv(report, path)
        rows = list(csv.reader(path.open()))
        assert rows[0][0] == "comparison"
        by_name = {r[0]: r for r in rows[1:]}
        mis = report.row("mvs_vs_mis").summary
        assert by_name["mvs_vs_mis"][1] == str(mis.n)
        assert float(by_name["mvs_vs_mis"][4]) == mis.median

    def test_verdict_json_round_trip(self, tmp_path):
        verdict = boundary_verdict(self.full_report())
        path = tmp_path / "verdict.json"
        write_verdict_json(verdict, path)
        payload = json.loads(path.read_text())
        assert payload["holds"] == verdict.holds
        assert payload["margin"] == verdict.margin
        assert payload["medians"] == verdict.medians

    def test_writers_are_deterministic(self, tmp_path):
        report = self.full_report()
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_distances_csv(report, a)
        write_distances_csv(report, b)
        assert a.read_bytes() == b.read_bytes()
