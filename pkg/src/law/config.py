"""Caps and defaults, overridable via a JSON config file (LAW_CONFIG) or CLI flags."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace

#: Cells allowed for the joint-evaluation closure behind bounded filter checks.
#: Rounds that would exceed it are skipped and the effective depth recorded.
CLOSURE_CELL_BUDGET = 1 << 23


@dataclass(frozen=True)
class Config:
    oracle_max: int = 6          # carrier cap for brute-force sweeps (2^n subsets, all partitions)
    product_max: int = 64        # carrier cap for product algebras
    depth_default: int = 3       # default term-depth cap for bounded checks
    variable_budget: int = 8     # variables admitted in consequence queries
    enum_cell_budget: int = 1 << 20   # total table cells across an algebra enumeration
    closure_cell_budget: int = CLOSURE_CELL_BUDGET

    def override(self, **kwargs) -> "Config":
        clean = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **clean) if clean else self


DEFAULTS = Config()


def load_config(path: str | None = None) -> Config:
    """Read config from `path`, else from $LAW_CONFIG, else defaults."""
    path = path or os.environ.get("LAW_CONFIG")
    if not path:
        return DEFAULTS
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    known = {f for f in Config.__dataclass_fields__}
    return DEFAULTS.override(**{k: v for k, v in data.items() if k in known})
