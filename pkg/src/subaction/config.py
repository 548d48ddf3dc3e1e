"""Capacity caps and determinism defaults.

Every cap can be overridden through an environment variable named
``SUBACTION_<CAP>``. ``cap()`` re-reads the environment on each call, so an
override set any time before the capped operation runs takes effect.
"""

from __future__ import annotations

import os

_DEFAULTS: dict[str, int] = {
    "MAX_GROUP_ORDER": 20160,
    "MAX_SUBGROUP_ENUM_ORDER": 1000,
    "MAX_EXHAUSTIVE_GROUND": 24,
    "MAX_SUBMODULAR_EXHAUSTIVE": 16,
    "MAX_ACT_TABLE_ENTRIES": 10_000_000,
    "MAX_MUL_TABLE_ENTRIES": 10_000_000,
    "FRAGMENT_LIST_CAP": 10_000,
    "SAMPLE_COUNT": 10_000,
    "DEFAULT_SEED": 0xD1CE,
    "MAX_SUBSPACE_COUNT": 100_000,
    "PETRIDIS_EXHAUSTIVE_MAX_ORDER": 14,
    "LINEAR_EXHAUSTIVE_MAX_ORDER": 16,
    "MU_CROSSCHECK_MAX_ORDER": 20,
    "VERIFY_ALL_PAIRS_MAX_ORDER": 200,
}


def cap(name: str) -> int:
    if name not in _DEFAULTS:
        raise KeyError(f"unknown cap {name!r}")
    raw = os.environ.get(f"SUBACTION_{name}")
    if raw is None:
        return _DEFAULTS[name]
    return int(raw)


def snapshot() -> dict[str, int]:
    """Current cap values, for reports."""
    return {name: cap(name) for name in sorted(_DEFAULTS)}
