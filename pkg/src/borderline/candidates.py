"""Test candidates, ordered duplicate-free test sets, and JSONL persistence."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Iterator

ROLES = ("tset", "mvs", "mis", "random", "reference_invalid")


@dataclass
class Candidate:
    string: str
    valid: bool
    origin: str
    meta: dict[str, Any] = field(default_factory=dict)


class TestSet:
    """Insertion-ordered set of candidates, duplicate-free by string."""

    def __init__(self, role: str, members: Iterable[Candidate] = ()):
        if role not in ROLES:
            raise ValueError(f"unknown test set role: {role!r}")
        self.role = role
        self._members: list[Candidate] = []
        self._index: set[str] = set()
        for c in members:
            self.add(c)

    def add(self, candidate: Candidate) -> bool:
        """Append unless the string is already present. Returns True if added."""
        if candidate.string in self._index:
            return False
        self._members.append(candidate)
        self._index.add(candidate.string)
        return True

    def __contains__(self, string: str) -> bool:
        return string in self._index

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[Candidate]:
        return iter(self._members)

    @property
    def members(self) -> list[Candidate]:
        return list(self._members)

    def strings(self) -> list[str]:
        return [c.string for c in self._members]


def write_jsonl(path: str | Path, rows: Iterable[dict]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=True, sort_keys=False))
            fh.write("\n")


def read_jsonl(path: str | Path) -> list[dict]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append(json.loads(line))
    return rows
