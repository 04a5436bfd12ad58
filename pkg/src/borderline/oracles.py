"""Validity oracles: total, deterministic predicates over candidate strings.

Every oracle answers valid/invalid for any string and never leaks parser
exceptions. OracleError is reserved for genuine inability to evaluate
(e.g. the external command cannot be launched).
"""

from __future__ import annotations

import json
import random
import re
import subprocess
import threading
import warnings
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from . import dates
from .candidates import Candidate, TestSet
from .errors import OracleError

ORACLE_NAMES = ("date", "json", "xml", "regex", "command")


@dataclass(frozen=True)
class OracleVerdict:
    valid: bool
    detail: str | None = None


class ValidityOracle:
    """Base oracle; subclasses implement _check and stay exception-free."""

    name = "oracle"

    def __init__(self):
        self.evaluation_count = 0

    def check(self, s: str) -> OracleVerdict:
        self.evaluation_count += 1
        return self._check(s)

    def _check(self, s: str) -> OracleVerdict:
        raise NotImplementedError


class DateOracle(ValidityOracle):
    """Strict date recognizer over a configured set of textual formats."""

    name = "date"

    def __init__(self, formats: tuple[str, ...] = ("ymd",)):
        super().__init__()
        for fmt in formats:
            if fmt not in dates.DATE_FORMATS:
                raise ValueError(f"unknown date format: {fmt!r}")
        self.formats = tuple(formats)

    def _check(self, s: str) -> OracleVerdict:
        if dates.parse_date(s, self.formats) is not None:
            return OracleVerdict(True)
        return OracleVerdict(False, "not a calendar date in any configured format")


class JsonOracle(ValidityOracle):
    name = "json"

    def _check(self, s: str) -> OracleVerdict:
        try:
            json.loads(s)
        except (ValueError, RecursionError) as exc:
            return OracleVerdict(False, str(exc)[:200])
        return OracleVerdict(True)


class XmlOracle(ValidityOracle):
    name = "xml"

    def _check(self, s: str) -> OracleVerdict:
        try:
            ET.fromstring(s)
        except (ET.ParseError, ValueError, RecursionError, OverflowError) as exc:
            return OracleVerdict(False, str(exc)[:200])
        return OracleVerdict(True)


class RegexOracle(ValidityOracle):
    name = "regex"

    def _check(self, s: str) -> OracleVerdict:
        try:
            with warnings.catch_warnings():
                # Patterns like "[[" compile today but warn about future
                # semantics; the verdict is about compiling, not advice.
                warnings.simplefilter("ignore")
                re.compile(s)
        except (re.error, OverflowError, RecursionError) as exc:
            return OracleVerdict(False, str(exc)[:200])
        return OracleVerdict(True)


class CommandOracle(ValidityOracle):
    """Wraps an external program: candidate on stdin, exit 0 means valid.

    Nonzero exit, crash or timeout count as invalid; failure to launch at all
    raises OracleError. max_parallel bounds concurrent child processes.
    """

    name = "command"

    def __init__(self, path: str, args: tuple[str, ...] = (), timeout_ms: int = 5000,
                 max_parallel: int = 1):
        super().__init__()
        self.path = path
        self.args = tuple(args)
        self.timeout_ms = timeout_ms
        self._gate = threading.Semaphore(max(1, max_parallel))

    def _check(self, s: str) -> OracleVerdict:
        with self._gate:
            try:
                proc = subprocess.run(
                    [self.path, *self.args],
                    input=s.encode("utf-8", errors="replace"),
                    stdout=subprocess.PIPE,
                    stderr=subprocess.PIPE,
                    timeout=self.timeout_ms / 1000,
                )
            except subprocess.TimeoutExpired:
                return OracleVerdict(False, f"timeout after {self.timeout_ms}ms")
            except OSError as exc:
                raise OracleError(f"cannot launch {self.path!r}: {exc}") from exc
        if proc.returncode == 0:
            return OracleVerdict(True)
        detail = proc.stderr.decode("utf-8", errors="replace").strip()[:200]
        return OracleVerdict(False, detail or f"exit code {proc.returncode}")


def build_oracle(
    name: str,
    date_formats: tuple[str, ...] = ("ymd",),
    command_path: str | None = None,
    command_args: tuple[str, ...] = (),
    timeout_ms: int = 5000,
    max_parallel: int = 1,
) -> ValidityOracle:
    if name == "date":
        return DateOracle(date_formats)
    if name == "json":
        return JsonOracle()
    if name == "xml":
        return XmlOracle()
    if name == "regex":
        return RegexOracle()
    if name == "command":
        if not command_path:
            raise ValueError("command oracle needs a program path")
        return CommandOracle(command_path, command_args, timeout_ms, max_parallel)
    raise ValueError(f"unknown oracle: {name!r}")


def oracle_descriptions() -> dict[str, str]:
    return {
        "date": "strict calendar dates in configured textual formats",
        "json": "strings accepted by the stdlib JSON parser",
        "xml": "well-formed XML documents (single root)",
        "regex": "patterns accepted by the stdlib regex compiler",
        "command": "external program: candidate on stdin, exit 0 = valid",
    }


def random_valid_set(generator, oracle: ValidityOracle, n: int, rng: random.Random) -> TestSet:
    """n distinct oracle-validated strings drawn directly from the generator."""
    out = TestSet("random")
    attempts = 0
    limit = 200 * max(n, 1) + 100
    while len(out) < n:
        attempts += 1
        if attempts > limit:
            raise OracleError(
                f"could not collect {n} distinct valid strings in {limit} attempts"
            )
        s = generator.generate_random(rng)
        if not oracle.check(s).valid:
            continue
        out.add(Candidate(s, True, "random"))
    return out


_REFERENCE_KINDS = ("month_13", "month_00", "day_past_end", "feb_29_nonleap")


def reference_invalid_dates(oracle: ValidityOracle, n: int, rng: random.Random) -> TestSet:
    """n distinct near-miss date strings, each confirmed invalid by the oracle.

    Members keep the ISO surface shape but break the calendar: month 13,
    month 00, day one past the month's end, or Feb 29 outside a leap year.
    """
    out = TestSet("reference_invalid")
    attempts = 0
    limit = 200 * max(n, 1) + 100
    while len(out) < n:
        attempts += 1
        if attempts > limit:
            raise OracleError(f"could not build {n} reference invalid dates")
        year = rng.randrange(dates.MIN_YEAR, dates.MAX_YEAR + 1)
        month = rng.randrange(1, 13)
        kind = _REFERENCE_KINDS[rng.randrange(len(_REFERENCE_KINDS))]
        if kind == "month_13":
            day = rng.randrange(1, 29)
            s = f"{year:04d}-13-{day:02d}"
        elif kind == "month_00":
            day = rng.randrange(1, 29)
            s = f"{year:04d}-00-{day:02d}"
        elif kind == "day_past_end":
            day = dates.days_in_month(year, month) + 1
            s = f"{year:04d}-{month:02d}-{day:02d}"
        else:
            while dates.is_leap_year(year):
                year = rng.randrange(dates.MIN_YEAR, dates.MAX_YEAR + 1)
            s = f"{year:04d}-02-29"
        if oracle.check(s).valid:
            continue
        out.add(Candidate(s, False, "reference_invalid", {"kind": kind}))
    return out
