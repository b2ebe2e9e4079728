"""Run configuration and search caps.

The automorphism / isomorphism cap defaults to 64 elements and may be
overridden with the ``EXTLAB_MAX_ORDER`` environment variable or per call.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_MAX_ORDER = 64
DEFAULT_ORACLE_BOUND = 10**6
# groups are cheap to tabulate; this only guards against runaway inputs
DEFAULT_BUILD_CAP = 4096


def max_order(cap: int | None = None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get("EXTLAB_MAX_ORDER")
    if env:
        return int(env)
    return DEFAULT_MAX_ORDER


@dataclass(frozen=True)
class RunConfig:
    max_group_order: int = DEFAULT_MAX_ORDER
    oracle_bound: int = DEFAULT_ORACLE_BOUND
    parallelism: int = 1
    output: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.max_group_order <= 0 or self.oracle_bound <= 0 or self.parallelism <= 0:
            raise ValueError("bounds must be positive")
        if self.output not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {self.output!r}")

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        vals = {"max_group_order": max_order()}
        vals.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**vals)
