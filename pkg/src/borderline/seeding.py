"""Deterministic derivation of independent random streams from one master seed."""

from __future__ import annotations

import hashlib
import random


def derive_seed(master_seed: int, *labels: str) -> int:
    """Hash the master seed with a label path into a fresh 64-bit seed."""
    text = str(master_seed) + "".join("|" + label for label in labels)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def derive_rng(master_seed: int, *labels: str) -> random.Random:
    return random.Random(derive_seed(master_seed, *labels))
