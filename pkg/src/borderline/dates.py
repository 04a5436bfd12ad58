"""Proleptic Gregorian calendar helpers shared by the date generator, oracle and metric.

The stdlib datetime starts at year 1; the date domain here spans years
0000-9999, so leap-year logic and day numbering are implemented directly
(year 0 is a leap year, divisible by 400).
"""

from __future__ import annotations

import re

MONTH_NAMES = (
    "January", "February", "March", "April", "May", "June",
    "July", "August", "September", "October", "November", "December",
)

_MONTH_DAYS = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)

DATE_FORMATS = ("ymd", "iso", "day_month_year", "month_day_year")

APPROX_DAYS_PER_YEAR = 365.2425
APPROX_DAYS_PER_MONTH = APPROX_DAYS_PER_YEAR / 12

MIN_YEAR, MAX_YEAR = 0, 9999


def is_leap_year(year: int) -> bool:
    return year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)


def days_in_month(year: int, month: int) -> int:
    if month == 2 and is_leap_year(year):
        return 29
    return _MONTH_DAYS[month - 1]


def is_valid_ymd(year: int, month: int, day: int) -> bool:
    return (
        MIN_YEAR <= year <= MAX_YEAR
        and 1 <= month <= 12
        and 1 <= day <= days_in_month(year, month)
    )


def _leaps_before(year: int) -> int:
    # count of leap years in [0, year)
    return (year + 3) // 4 - (year + 99) // 100 + (year + 399) // 400


def day_number(year: int, month: int, day: int) -> int:
    """Days elapsed since 0000-01-01 for a valid calendar date."""
    n = 365 * year + _leaps_before(year)
    n += sum(_MONTH_DAYS[: month - 1])
    if month > 2 and is_leap_year(year):
        n += 1
    return n + day - 1


def approx_day_value(year: int, month: int, day: int) -> float:
    """Smooth day estimate that tolerates out-of-range components."""
    return year * APPROX_DAYS_PER_YEAR + (month - 1) * APPROX_DAYS_PER_MONTH + (day - 1)


_YMD_RE = re.compile(r"(\d{1,4})-(\d{1,2})-(\d{1,2})")
_ISO_RE = re.compile(r"(\d{4})-(\d{2})-(\d{2})")
_DMY_RE = re.compile(r"(\d{1,2}) ([A-Z][a-z]+) (\d{4})")
_MDY_RE = re.compile(r"(\d{2})/(\d{2})/(\d{4})")
_TOKEN_RE = re.compile(r"\d+")


def format_date(year: int, month: int, day: int, fmt: str = "ymd") -> str:
    if fmt in ("ymd", "iso"):
        return f"{year:04d}-{month:02d}-{day:02d}"
    if fmt == "day_month_year":
        return f"{day} {MONTH_NAMES[month - 1]} {year:04d}"
    if fmt == "month_day_year":
        return f"{month:02d}/{day:02d}/{year:04d}"
    raise ValueError(f"unknown date format: {fmt!r}")


def _parse_one(s: str, fmt: str) -> tuple[int, int, int] | None:
    if fmt == "ymd":
        # Lenient field widths, as in permissive date parsers: "231-1-02"
        # reads as year 231, month 1, day 2.
        m = _YMD_RE.fullmatch(s)
        if m:
            return int(m.group(1)), int(m.group(2)), int(m.group(3))
        return None
    if fmt == "iso":
        m = _ISO_RE.fullmatch(s)
        if m:
            return int(m.group(1)), int(m.group(2)), int(m.group(3))
        return None
    if fmt == "day_month_year":
        m = _DMY_RE.fullmatch(s)
        if not m or m.group(2) not in MONTH_NAMES:
            return None
        day = m.group(1)
        if len(day) > 1 and day[0] == "0":
            return None  # unpadded day only
        return int(m.group(3)), MONTH_NAMES.index(m.group(2)) + 1, int(day)
    if fmt == "month_day_year":
        m = _MDY_RE.fullmatch(s)
        if m:
            return int(m.group(3)), int(m.group(1)), int(m.group(2))
        return None
    raise ValueError(f"unknown date format: {fmt!r}")


def parse_date(s: str, formats: tuple[str, ...] = ("ymd",)) -> tuple[int, int, int] | None:
    """Strict parse against the given formats; None unless shape and calendar agree."""
    for fmt in formats:
        ymd = _parse_one(s, fmt)
        if ymd is not None and is_valid_ymd(*ymd):
            return ymd
    return None


def extract_ymd_tokens(s: str) -> tuple[int, int, int] | None:
    """First three runs of digits read as year, month, day; None if fewer."""
    tokens = _TOKEN_RE.findall(s)
    if len(tokens) < 3:
        return None
    return int(tokens[0]), int(tokens[1]), int(tokens[2])
