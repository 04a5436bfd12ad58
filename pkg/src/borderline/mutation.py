"""Character-level mutation operators and named operator presets.

Each operator picks a uniformly random applicable site. A string with no
applicable site is returned unchanged with the no-site flag set; operators
never raise on any input string.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

OPERATOR_NAMES = (
    "increase_int",
    "decrease_int",
    "increase_int_keeping_size",
    "decrease_int_keeping_size",
    "delete_chars_1",
    "copy_chars_1",
)

PRESETS = {
    "int": ("increase_int", "decrease_int"),
    "int_keep_size": ("increase_int_keeping_size", "decrease_int_keeping_size"),
    "chars": ("delete_chars_1", "copy_chars_1"),
}


@dataclass(frozen=True)
class MutationOperator:
    name: str
    sites: Callable[[str], list[int]]
    apply_at: Callable[[str, int], str]
    size_preserving: bool

    def apply(self, s: str, rng: random.Random) -> tuple[str, bool]:
        """Mutate at a random applicable site; (s, True) when none exists."""
        sites = self.sites(s)
        if not sites:
            return s, True
        return self.apply_at(s, sites[rng.randrange(len(sites))]), False


def _digit_sites(s: str) -> list[int]:
    return [i for i, ch in enumerate(s) if "0" <= ch <= "9"]


def _all_sites(s: str) -> list[int]:
    return list(range(len(s)))


def _increase_at(s: str, i: int) -> str:
    d = s[i]
    if d == "9":
        return s[:i] + s[i + 1:]
    return s[:i] + chr(ord(d) + 1) + s[i + 1:]


def _decrease_at(s: str, i: int) -> str:
    d = s[i]
    if d == "0":
        return s[:i] + s[i + 1:]
    return s[:i] + chr(ord(d) - 1) + s[i + 1:]


def _increase_wrap_at(s: str, i: int) -> str:
    return s[:i] + str((int(s[i]) + 1) % 10) + s[i + 1:]


def _decrease_wrap_at(s: str, i: int) -> str:
    return s[:i] + str((int(s[i]) - 1) % 10) + s[i + 1:]


def _delete_at(s: str, i: int) -> str:
    return s[:i] + s[i + 1:]


def _copy_at(s: str, i: int) -> str:
    return s[: i + 1] + s[i] + s[i + 1:]


OPERATORS: dict[str, MutationOperator] = {
    "increase_int": MutationOperator("increase_int", _digit_sites, _increase_at, False),
    "decrease_int": MutationOperator("decrease_int", _digit_sites, _decrease_at, False),
    "increase_int_keeping_size": MutationOperator(
        "increase_int_keeping_size", _digit_sites, _increase_wrap_at, True
    ),
    "decrease_int_keeping_size": MutationOperator(
        "decrease_int_keeping_size", _digit_sites, _decrease_wrap_at, True
    ),
    "delete_chars_1": MutationOperator("delete_chars_1", _all_sites, _delete_at, False),
    "copy_chars_1": MutationOperator("copy_chars_1", _all_sites, _copy_at, False),
}


@dataclass(frozen=True)
class MutatorSet:
    """Non-empty group of operators; selection is uniform over operators, then sites."""

    operators: tuple[MutationOperator, ...]

    def __post_init__(self):
        if not self.operators:
            raise ValueError("MutatorSet needs at least one operator")


def build_mutator_set(preset: str) -> MutatorSet:
    if preset not in PRESETS:
        raise ValueError(f"unknown mutator preset: {preset!r}")
    return MutatorSet(tuple(OPERATORS[n] for n in PRESETS[preset]))


def mutate(s: str, mutators: MutatorSet, rng: random.Random) -> tuple[str, str, bool]:
    """One mutation step: returns (mutant, operator_name, no_site)."""
    op = mutators.operators[rng.randrange(len(mutators.operators))]
    mutant, no_site = op.apply(s, rng)
    return mutant, op.name, no_site
