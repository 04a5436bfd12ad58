"""Oracle behavior: totality, verdict correctness, helper set construction."""

import random
import stat
import sys

import pytest
from hypothesis import given, settings, strategies as st

from borderline.errors import OracleError
from borderline.generators import GeneratorOptions, build_generator
from borderline.oracles import (
    ORACLE_NAMES,
    CommandOracle,
    DateOracle,
    JsonOracle,
    RegexOracle,
    XmlOracle,
    build_oracle,
    oracle_descriptions,
    random_valid_set,
    reference_invalid_dates,
)


class TestDateOracle:
    def test_lenient_default_accepts_flexible_widths(self):
        o = DateOracle()
        for s in ("2020-02-29", "231-1-2", "0-1-1", "9999-12-31"):
            assert o.check(s).valid, s

    def test_default_rejects(self):
        o = DateOracle()
        for s in (
            "", "2020-13-01", "2020-00-10", "2021-02-29", "2020-04-31",
            "2020/01/01", "01-2020-01", "2020-01-01 ", "12020-01-01",
            "2020-1-", "abc", "2020-01-01x",
        ):
            assert not o.check(s).valid, s

    def test_strict_iso_rejects_short_year(self):
        o = DateOracle(formats=("iso",))
        assert o.check("2020-01-02").valid
        assert not o.check("231-1-2").valid

    def test_multi_format_union(self):
        o = DateOracle(formats=("iso", "day_month_year"))
        assert o.check("1 January 2020").valid
        assert o.check("2020-01-01").valid
        assert not o.check("2020-1-1").valid  # neither strict format

    def test_unknown_format_rejected_at_build(self):
        with pytest.raises(ValueError):
            DateOracle(formats=("rfc2822",))

    def test_invalid_verdict_carries_detail(self):
        v = DateOracle().check("nope")
        assert not v.valid and v.detail

    @given(st.text(max_size=40))
    @settings(max_examples=300)
    def test_total_over_arbitrary_text(self, s):
        assert DateOracle().check(s).valid in (True, False)


class TestStructuredOracles:
    def test_json_verdicts(self):
        o = JsonOracle()
        assert o.check('{"a": [1, 2.5, null, true, "x"]}').valid
        assert o.check("[]").valid
        assert not o.check("{").valid
        assert not o.check("").valid
        assert not o.check("{'a': 1}").valid

    def test_xml_verdicts(self):
        o = XmlOracle()
        assert o.check("<a><b>text</b></a>").valid
        assert not o.check("<a><b></a></b>").valid
        assert not o.check("<a>").valid
        assert not o.check("no tags").valid
        assert not o.check("<a/><b/>").valid  # two roots

    def test_regex_verdicts(self):
        o = RegexOracle()
        assert o.check("a[bc]+d?").valid
        assert o.check("").valid
        assert not o.check("(").valid
        assert not o.check("a{2,1}").valid
        assert not o.check("*").valid

    def test_regex_future_warning_patterns_stay_quiet(self, recwarn):
        # "[[" style classes trigger FutureWarning in re.compile; the oracle
        # must neither fail nor leak the warning.
        assert RegexOracle().check("[[a]]").valid in (True, False)
        assert not [w for w in recwarn if w.category is FutureWarning]

    @given(st.text(max_size=60))
    @settings(max_examples=200)
    def test_all_builtin_oracles_total(self, s):
        for name in ("date", "json", "xml", "regex"):
            assert build_oracle(name).check(s).valid in (True, False)

    def test_evaluation_count_increments(self):
        o = JsonOracle()
        for _ in range(3):
            o.check("1")
        assert o.evaluation_count == 3


class TestCommandOracle:
    def make_script(self, tmp_path, body):
        p = tmp_path / "sut.sh"
        p.write_text(f"#!/bin/sh\n{body}\n")
        p.chmod(p.stat().st_mode | stat.S_IEXEC)
        return str(p)

    def test_exit_zero_is_valid(self, tmp_path):
        path = self.make_script(tmp_path, 'grep -q x')
        o = CommandOracle(path)
        assert o.check("has x").valid
        assert not o.check("nothing").valid

    def test_stderr_becomes_detail(self, tmp_path):
        path = self.make_script(tmp_path, 'echo bad input >&2; exit 3')
        v = CommandOracle(path).check("anything")
        assert not v.valid and "bad input" in v.detail

    def test_timeout_is_invalid_not_error(self, tmp_path):
        path = self.make_script(tmp_path, "sleep 5")
        v = CommandOracle(path, timeout_ms=200).check("x")
        assert not v.valid and "timeout" in v.detail

    def test_unlaunchable_raises_oracle_error(self):
        with pytest.raises(OracleError):
            CommandOracle("/no/such/program").check("x")

    def test_args_are_passed(self, tmp_path):
        path = self.make_script(tmp_path, 'test "$1" = ok')
        assert CommandOracle(path, args=("ok",)).check("").valid
        assert not CommandOracle(path, args=("no",)).check("").valid


class TestRegistry:
    def test_build_all_names(self):
        for name in ORACLE_NAMES:
            if name == "command":
                o = build_oracle(name, command_path=sys.executable)
            else:
                o = build_oracle(name)
            assert o.name == name

    def test_command_requires_path(self):
        with pytest.raises(ValueError):
            build_oracle("command")

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            build_oracle("yaml")

    def test_descriptions_cover_every_oracle(self):
        assert set(oracle_descriptions()) == set(ORACLE_NAMES)


class TestHelperSets:
    def test_random_valid_set_contents(self):
        gen = build_generator("json", GeneratorOptions(max_depth=2, max_fanout=3))
        oracle = JsonOracle()
        ts = random_valid_set(gen, oracle, 20, random.Random(5))
        assert len(ts) == 20
        strings = [c.string for c in ts]
        assert len(set(strings)) == 20
        assert all(JsonOracle().check(s).valid for s in strings)

    def test_reference_invalid_dates_shape_and_verdict(self):
        oracle = DateOracle()
        ts = reference_invalid_dates(oracle, 30, random.Random(9))
        assert len(ts) == 30
        for c in ts:
            assert not oracle.check(c.string).valid
            parts = c.string.split("-")
            assert len(parts) == 3 and all(p.isdigit() for p in parts)
            assert c.meta["kind"] in (
                "month_13", "month_00", "day_past_end", "feb_29_nonleap",
            )

    def test_reference_set_includes_month_13_pattern(self):
        ts = reference_invalid_dates(DateOracle(), 40, random.Random(1))
        assert any(c.string.split("-")[1] == "13" for c in ts)

    def test_reference_set_deterministic(self):
        a = [c.string for c in reference_invalid_dates(DateOracle(), 10, random.Random(4))]
        b = [c.string for c in reference_invalid_dates(DateOracle(), 10, random.Random(4))]
        assert a == b
