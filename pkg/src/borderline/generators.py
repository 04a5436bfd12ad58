"""Choice-driven generators of valid inputs and the search over their choices.

Generators consume randomness only through a ChoiceSource, so every emitted
string is reproducible from its recorded decision sequence. Step 1 runs a
level-1 nested Monte-Carlo search over those choice points, scoring complete
playouts with a caller-supplied fitness and committing, at each step, the
decision of the best playout seen so far.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from typing import Callable
from xml.sax.saxutils import escape

from . import dates
from .candidates import Candidate, TestSet
from .distance import DistanceMetric, min_dist_to_set
from .errors import GenerationStall, ReplayError, SerializationError

GENERATOR_NAMES = ("date", "json", "xml", "regex")

Decision = tuple[str, int, int]  # (choice_point_id, selected_index, arity)


@dataclass
class ChoiceTrace:
    """Complete record of the decisions behind one generated string."""

    decisions: list[Decision]
    seed: int = 0


class GuidedChoiceSource:
    """Replays a decision prefix, optionally forces the next index, then samples.

    Records every decision it hands out; the recorded list replayed through the
    same generator reproduces the string byte for byte.
    """

    def __init__(self, rng: random.Random, script: tuple[Decision, ...] | list[Decision] = (),
                 forced_index: int | None = None):
        self._rng = rng
        self._script = tuple(script)
        self._forced = forced_index
        self.decisions: list[Decision] = []

    def choose(self, choice_point_id: str, arity: int) -> int:
        if arity < 1:
            raise ValueError(f"arity must be >= 1 at {choice_point_id}")
        pos = len(self.decisions)
        if pos < len(self._script):
            sid, sidx, sarity = self._script[pos]
            if sid != choice_point_id or sarity != arity:
                raise ReplayError(
                    f"decision {pos}: expected ({sid}, arity {sarity}), "
                    f"generator asked ({choice_point_id}, arity {arity})"
                )
            index = sidx
        elif self._forced is not None and pos == len(self._script):
            index = self._forced
            if not 0 <= index < arity:
                raise ReplayError(f"forced index {index} out of range at {choice_point_id}")
        else:
            index = self._rng.randrange(arity)
        self.decisions.append((choice_point_id, index, arity))
        return index


class ReplayChoiceSource:
    """Strict replay of a recorded decision sequence."""

    def __init__(self, decisions: list[Decision]):
        self._decisions = list(decisions)
        self._pos = 0

    def choose(self, choice_point_id: str, arity: int) -> int:
        if self._pos >= len(self._decisions):
            raise ReplayError(f"trace exhausted at decision {self._pos} ({choice_point_id})")
        sid, sidx, sarity = self._decisions[self._pos]
        if sid != choice_point_id or sarity != arity:
            raise ReplayError(
                f"decision {self._pos}: trace has ({sid}, arity {sarity}), "
                f"generator asked ({choice_point_id}, arity {arity})"
            )
        self._pos += 1
        return sidx

    def assert_consumed(self) -> None:
        if self._pos != len(self._decisions):
            raise ReplayError(f"trace has {len(self._decisions) - self._pos} unused decisions")


@dataclass(frozen=True)
class GeneratorOptions:
    max_depth: int = 6
    max_fanout: int = 5
    date_formats: tuple[str, ...] = ("ymd",)


@dataclass(frozen=True)
class NmcsBudget:
    choices_evaluated: int = 2
    playouts_per_choice: int = 1
    max_choice_points: int = 10_000


class Generator:
    """A named builder of valid strings over an explicit choice space."""

    def __init__(self, name: str, build: Callable[[GuidedChoiceSource], str], paired_oracle: str):
        self.name = name
        self.paired_oracle = paired_oracle
        self._build = build

    def generate(self, source) -> str:
        return self._build(source)

    def generate_random(self, rng: random.Random) -> str:
        return self._build(GuidedChoiceSource(rng))

    def generate_traced(self, rng: random.Random, stream_seed: int = 0) -> tuple[str, ChoiceTrace]:
        source = GuidedChoiceSource(rng)
        s = self._build(source)
        return s, ChoiceTrace(source.decisions, stream_seed)

    def replay(self, trace: ChoiceTrace) -> str:
        source = ReplayChoiceSource(trace.decisions)
        s = self._build(source)
        source.assert_consumed()
        return s


# ---------------------------------------------------------------- dates

def _build_date(source, options: GeneratorOptions) -> str:
    formats = options.date_formats
    fmt = formats[source.choose("date.format", len(formats))]
    year = source.choose("date.year", 10_000)
    month = source.choose("date.month", 12) + 1
    day = source.choose("date.day", dates.days_in_month(year, month)) + 1
    return dates.format_date(year, month, day, fmt)


# ---------------------------------------------------------------- structures

_KEY_ALPHABET = "abcdefghijklmnopqrstuvwxyz"
_STR_ALPHABET = "abcdefghijklmnopqrstuvwxyzABCDE0123456789 .,_-:"


def _gen_key(source) -> str:
    length = 4 + source.choose("key.len", 5)
    return "".join(
        _KEY_ALPHABET[source.choose("key.char", len(_KEY_ALPHABET))] for _ in range(length)
    )


def _gen_value(source, depth: int, options: GeneratorOptions):
    arity = 5 if depth < options.max_depth else 4
    kind = source.choose("node.kind", arity)
    if kind == 0:
        length = source.choose("str.len", 17)
        return "".join(
            _STR_ALPHABET[source.choose("str.char", len(_STR_ALPHABET))] for _ in range(length)
        )
    if kind == 1:
        return source.choose("int.value", 2001) - 1000
    if kind == 2:
        whole = source.choose("float.int", 201) - 100
        frac = source.choose("float.frac", 1000)
        return float(f"{whole}.{frac:03d}")
    if kind == 3:
        return source.choose("bool.value", 2) == 1
    return _gen_map(source, depth + 1, options)


def _gen_map(source, depth: int, options: GeneratorOptions) -> dict:
    size = 1 + source.choose("map.size", options.max_fanout)
    out: dict = {}
    for _ in range(size):
        for _attempt in range(50):
            key = _gen_key(source)
            if key not in out:
                break
        else:
            raise RuntimeError("distinct key retries exhausted")
        out[key] = _gen_value(source, depth, options)
    return out


def generate_structure(source, options: GeneratorOptions = GeneratorOptions()) -> dict:
    """Nested string-keyed map with string/int/float/bool leaves."""
    return _gen_map(source, 0, options)


def _check_structured(value, path: str = "value") -> None:
    if isinstance(value, (bool, int, float, str)):
        return
    if isinstance(value, dict):
        for k, v in value.items():
            if not isinstance(k, str):
                raise SerializationError(f"{path}: non-string key {k!r}")
            _check_structured(v, f"{path}.{k}")
        return
    raise SerializationError(f"{path}: unsupported type {type(value).__name__}")


def serialize_json(value) -> str:
    """Compact JSON text for a structured value."""
    _check_structured(value)
    try:
        return json.dumps(value, separators=(",", ":"), ensure_ascii=False)
    except (TypeError, ValueError) as exc:
        raise SerializationError(str(exc)) from exc


_XML_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*")


def _leaf_text(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, int):
        return str(value)
    return value


def serialize_xml(value) -> str:
    """XML document with a fixed <root> element wrapping the structured value."""
    _check_structured(value)

    def render(v) -> str:
        if isinstance(v, dict):
            parts = []
            for k, child in v.items():
                if not _XML_NAME_RE.fullmatch(k):
                    raise SerializationError(f"key {k!r} is not a valid element name")
                parts.append(f"<{k}>{render(child)}</{k}>")
            return "".join(parts)
        return escape(_leaf_text(v))

    return f"<root>{render(value)}</root>"


# ---------------------------------------------------------------- regexes

_RE_LITERALS = "abcdefghijklmnopqrstuvwxyz0123456789"
_RE_ESCAPES = (r"\d", r"\w", r"\s")


def _regex_class(source) -> str:
    negated = source.choose("re.class.neg", 2) == 1
    items = []
    for _ in range(1 + source.choose("re.class.n", 3)):
        if source.choose("re.class.item", 2) == 0:
            items.append(_RE_LITERALS[source.choose("re.class.char", len(_RE_LITERALS))])
        else:
            lo = source.choose("re.class.lo", 20)
            span = 1 + source.choose("re.class.span", 5)
            items.append(f"{chr(ord('a') + lo)}-{chr(ord('a') + lo + span)}")
    return "[" + ("^" if negated else "") + "".join(items) + "]"


def _regex_atom(source, depth: int, options: GeneratorOptions) -> str:
    arity = 5 if depth < options.max_depth else 4
    kind = source.choose("re.atom", arity)
    if kind == 0:
        return _RE_LITERALS[source.choose("re.literal", len(_RE_LITERALS))]
    if kind == 1:
        return _RE_ESCAPES[source.choose("re.escape", len(_RE_ESCAPES))]
    if kind == 2:
        return "."
    if kind == 3:
        return _regex_class(source)
    return "(" + _regex_pattern(source, depth + 1, options) + ")"


def _regex_piece(source, depth: int, options: GeneratorOptions) -> str:
    atom = _regex_atom(source, depth, options)
    quant = source.choose("re.quant", 6)
    if quant == 0:
        return atom
    if quant == 1:
        return atom + "*"
    if quant == 2:
        return atom + "+"
    if quant == 3:
        return atom + "?"
    m = source.choose("re.quant.m", 4)
    if quant == 4:
        return f"{atom}{{{m}}}"
    n = m + source.choose("re.quant.n", 4)
    return f"{atom}{{{m},{n}}}"


def _regex_pattern(source, depth: int, options: GeneratorOptions) -> str:
    # 1-2 branches of 1-2 pieces: keeps the reachable size modest so
    # distance-guided search cannot balloon patterns
    branches = []
    for _ in range(1 + source.choose("re.alts", 2)):
        branches.append(
            "".join(_regex_piece(source, depth, options) for _ in range(1 + source.choose("re.pieces", 2)))
        )
    return "|".join(branches)


# ---------------------------------------------------------------- registry

def build_generator(name: str, options: GeneratorOptions = GeneratorOptions()) -> Generator:
    if name == "date":
        if not options.date_formats:
            raise ValueError("date generator needs at least one format")
        return Generator("date", lambda src: _build_date(src, options), "date")
    if name == "json":
        return Generator("json", lambda src: serialize_json(generate_structure(src, options)), "json")
    if name == "xml":
        return Generator("xml", lambda src: serialize_xml(generate_structure(src, options)), "xml")
    if name == "regex":
        return Generator("regex", lambda src: _regex_pattern(src, 0, options), "regex")
    raise ValueError(f"unknown generator: {name!r}")


# ---------------------------------------------------------------- step 1 search

def nmcs_generate(
    generator: Generator,
    fitness: Callable[[str], float],
    rng: random.Random,
    budget: NmcsBudget = NmcsBudget(),
    stream_seed: int = 0,
) -> tuple[str, ChoiceTrace, float, int]:
    """One level-1 search round; returns (string, trace, fitness, playouts).

    At each choice point along the best playout's decision prefix, a handful of
    alternative indices get one random completion each; the best-scoring
    playout seen anywhere in the round becomes the accepted candidate, with
    ties keeping the earliest playout.
    """

    def playout(prefix: tuple, forced: int | None):
        source = GuidedChoiceSource(rng, prefix, forced)
        s = generator.generate(source)
        return s, source.decisions

    best_s, best_dec = playout((), None)
    best_f = fitness(best_s)
    playouts = 1
    depth = 0
    while depth < len(best_dec) and depth < budget.max_choice_points:
        prefix = tuple(best_dec[:depth])
        arity = best_dec[depth][2]
        k = min(budget.choices_evaluated, arity)
        options = list(range(arity)) if k >= arity else rng.sample(range(arity), k)
        for option in options:
            for _ in range(budget.playouts_per_choice):
                s, dec = playout(prefix, option)
                f = fitness(s)
                playouts += 1
                if f > best_f:
                    best_f, best_s, best_dec = f, s, dec
        depth += 1
    return best_s, ChoiceTrace(list(best_dec), stream_seed), best_f, playouts


@dataclass
class Tset:
    """Step-1 output: the accumulated valid set and how it was selected."""

    candidates: TestSet
    metric_name: str
    target_size: int
    playouts: int = 0


def nmcs_step1(
    generator: Generator,
    initial: TestSet,
    metric: DistanceMetric,
    target_size: int,
    budget: NmcsBudget,
    rng: random.Random,
    stall_limit: int = 50,
    stream_seed: int = 0,
) -> Tset:
    """Grow the test set to target_size, maximizing min-distance to it."""
    members = TestSet("tset")
    for c in initial:
        members.add(Candidate(c.string, c.valid, "step1", dict(c.meta)))
    if target_size < len(members):
        raise ValueError(f"target_size {target_size} below initial set size {len(members)}")
    total_playouts = 0
    stall = 0
    while len(members) < target_size:
        strings = members.strings()
        s, trace, fit, n = nmcs_generate(
            generator,
            lambda cand: min_dist_to_set(cand, strings, metric),
            rng,
            budget,
            stream_seed,
        )
        total_playouts += n
        if s in members:
            stall += 1
            if stall >= stall_limit:
                raise GenerationStall(
                    f"{stall} consecutive selections already in the set "
                    f"(|set|={len(members)}, target={target_size})"
                )
            continue
        stall = 0
        members.add(Candidate(s, True, "step1", {"fitness": fit}))
    return Tset(members, metric.name, target_size, total_playouts)
