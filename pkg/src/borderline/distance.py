"""String distance metrics and minimum-distance-to-set reductions.

Four metrics at three abstraction levels: normalized compression distance
(domain agnostic), Levenshtein (encoding level), and day / most-significant
integer distance (domain specific, built for date-like strings but total on
all inputs via an incomparable penalty).
"""

from __future__ import annotations

import bz2
import enum
import lzma
import math
import re
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable

from .candidates import TestSet
from .dates import approx_day_value, day_number, extract_ymd_tokens, parse_date
from .errors import CompressorError, EmptySetError

DEFAULT_PENALTY = 1e6

METRIC_NAMES = ("ncd", "levenshtein", "day", "msid")

COMPRESSOR_NAMES = ("zlib", "bz2", "lzma")


class MetricKind(enum.Enum):
    DOMAIN_AGNOSTIC = "domain_agnostic"
    ENCODING = "encoding_specific"
    DOMAIN_SPECIFIC = "domain_specific"


@dataclass
class DistanceMetric:
    """A named, total, non-negative distance on strings.

    `eval_bounded`, when present, returns the exact distance if it is <= cutoff
    and any value > cutoff otherwise; min-over-set scans use it to abandon
    elements that cannot improve on the current best.
    """

    name: str
    kind: MetricKind
    eval: Callable[[str, str], float]
    eval_bounded: Callable[[str, str, float], float] | None = None


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance over unicode code points."""
    if a == b:
        return 0
    # strip common prefix and suffix; they never change the distance
    start = 0
    end_a, end_b = len(a), len(b)
    while start < end_a and start < end_b and a[start] == b[start]:
        start += 1
    while end_a > start and end_b > start and a[end_a - 1] == b[end_b - 1]:
        end_a -= 1
        end_b -= 1
    a, b = a[start:end_a], b[start:end_b]
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        append = cur.append
        for j, cb in enumerate(b, 1):
            append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def _levenshtein_bounded(a: str, b: str, cutoff: float) -> float:
    """Exact distance if <= cutoff, else a value above cutoff."""
    if cutoff < 0:
        return cutoff + 1
    if abs(len(a) - len(b)) > cutoff:
        return cutoff + 1
    if a == b:
        return 0
    start = 0
    end_a, end_b = len(a), len(b)
    while start < end_a and start < end_b and a[start] == b[start]:
        start += 1
    while end_a > start and end_b > start and a[end_a - 1] == b[end_b - 1]:
        end_a -= 1
        end_b -= 1
    a, b = a[start:end_a], b[start:end_b]
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        append = cur.append
        for j, cb in enumerate(b, 1):
            append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        if min(cur) > cutoff:
            return cutoff + 1
        prev = cur
    return prev[-1]


def _compress_len_zlib(data: bytes) -> int:
    return len(zlib.compress(data, 9))


def _compress_len_bz2(data: bytes) -> int:
    return len(bz2.compress(data, 9))


def _compress_len_lzma(data: bytes) -> int:
    return len(lzma.compress(data))


_COMPRESSORS = {
    "zlib": _compress_len_zlib,
    "bz2": _compress_len_bz2,
    "lzma": _compress_len_lzma,
}


class NcdMetric:
    """Normalized compression distance with cached single-string sizes."""

    def __init__(self, compressor: str = "bz2"):
        if compressor not in _COMPRESSORS:
            raise CompressorError(f"unknown compressor: {compressor!r}")
        self.compressor = compressor
        self._compress_len = _COMPRESSORS[compressor]
        self._cache: dict[str, int] = {}

    def _size(self, s: str) -> int:
        n = self._cache.get(s)
        if n is None:
            try:
                n = self._compress_len(s.encode("utf-8"))
            except Exception as exc:  # zlib/bz2/lzma raise backend-specific errors
                raise CompressorError(f"{self.compressor} failed: {exc}") from exc
            self._cache[s] = n
        return n

    def eval(self, a: str, b: str) -> float:
        ca, cb = self._size(a), self._size(b)
        try:
            cab = self._compress_len((a + b).encode("utf-8"))
        except Exception as exc:
            raise CompressorError(f"{self.compressor} failed: {exc}") from exc
        return (cab - min(ca, cb)) / max(ca, cb)


class DayMetric:
    """Distance in days between date-like strings.

    Exact day difference when both sides strict-parse against the configured
    formats; otherwise an approximate value built from the first three digit
    runs of each string, so near-miss invalid dates still land close to their
    valid neighbours. Incomparable strings get the penalty.
    """

    def __init__(self, formats: tuple[str, ...] = ("ymd",), penalty: float = DEFAULT_PENALTY):
        self.formats = tuple(formats)
        self.penalty = penalty
        self._cache: dict[str, tuple[int | None, float | None]] = {}

    def _interpret(self, s: str) -> tuple[int | None, float | None]:
        got = self._cache.get(s)
        if got is None:
            ymd = parse_date(s, self.formats)
            if ymd is not None:
                got = (day_number(*ymd), approx_day_value(*ymd))
            else:
                tokens = extract_ymd_tokens(s)
                got = (None, approx_day_value(*tokens) if tokens else None)
            self._cache[s] = got
        return got

    def eval(self, a: str, b: str) -> float:
        exact_a, approx_a = self._interpret(a)
        exact_b, approx_b = self._interpret(b)
        if exact_a is not None and exact_b is not None:
            return float(abs(exact_a - exact_b))
        if approx_a is not None and approx_b is not None:
            return abs(approx_a - approx_b)
        return self.penalty


_DIGIT_RUN_RE = re.compile(r"\d+")


class MsidMetric:
    """Difference between the largest integer tokens of the two strings."""

    def __init__(self, penalty: float = DEFAULT_PENALTY):
        self.penalty = penalty
        self._cache: dict[str, int | None] = {}

    def _largest(self, s: str) -> int | None:
        if s not in self._cache:
            tokens = _DIGIT_RUN_RE.findall(s)
            self._cache[s] = max(int(t) for t in tokens) if tokens else None
        return self._cache[s]

    def eval(self, a: str, b: str) -> float:
        va, vb = self._largest(a), self._largest(b)
        if va is None or vb is None:
            return self.penalty
        return float(abs(va - vb))


def build_metric(
    name: str,
    compressor: str = "bz2",
    penalty: float = DEFAULT_PENALTY,
    date_formats: tuple[str, ...] = ("ymd",),
) -> DistanceMetric:
    """Construct a metric by name with the given domain options."""
    if name == "ncd":
        return DistanceMetric("ncd", MetricKind.DOMAIN_AGNOSTIC, NcdMetric(compressor).eval)
    if name == "levenshtein":
        return DistanceMetric(
            "levenshtein",
            MetricKind.ENCODING,
            lambda a, b: float(levenshtein(a, b)),
            eval_bounded=_levenshtein_bounded,
        )
    if name == "day":
        return DistanceMetric("day", MetricKind.DOMAIN_SPECIFIC, DayMetric(date_formats, penalty).eval)
    if name == "msid":
        return DistanceMetric("msid", MetricKind.DOMAIN_SPECIFIC, MsidMetric(penalty).eval)
    raise ValueError(f"unknown metric: {name!r}")


def metric_descriptions() -> dict[str, str]:
    return {
        "ncd": "normalized compression distance (domain agnostic)",
        "levenshtein": "unit-cost edit distance (encoding level)",
        "day": "exact or approximate difference in days (date domain)",
        "msid": "difference of the most significant integer tokens (date domain)",
    }


def min_dist_to_set(candidate: str, members: TestSet | Iterable[str], metric: DistanceMetric) -> float:
    """Minimum distance from `candidate` to any member; +inf over an empty set."""
    if isinstance(members, TestSet):
        members = members.strings()
    best = math.inf
    bounded = metric.eval_bounded
    for s in members:
        if bounded is not None and best < math.inf:
            d = bounded(candidate, s, best)
            if d >= best:
                continue
        else:
            d = metric.eval(candidate, s)
        if d < best:
            best = d
            if best == 0:
                break
    return best


def set_min_distances(
    a: TestSet, b: TestSet, metric: DistanceMetric, jobs: int = 1
) -> list[float]:
    """Per-element minimum distances from each member of `a` to the set `b`."""
    if len(a) == 0 or len(b) == 0:
        raise EmptySetError(f"set_min_distances needs non-empty sets (|a|={len(a)}, |b|={len(b)})")
    targets = b.strings()
    sources = a.strings()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda s: min_dist_to_set(s, targets, metric), sources))
    return [min_dist_to_set(s, targets, metric) for s in sources]
