"""Deterministic seed derivation.

All randomness flows from one top-level seed; children are derived by the
fixed rule  child = int.from_bytes(sha256(f"{seed}/{label}")[:8], "big"),
which every machine-readable output records.
"""
from __future__ import annotations

import hashlib

SEED_RULE = "child = sha256('{seed}/{label}')[:8] big-endian"


def derive_seed(seed: int, label: str) -> int:
    digest = hashlib.sha256(f"{seed}/{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")
