"""Run configuration: resource caps, worker count, cache location.

Every verdict-bearing computation is deterministic and independent of the
seed; the seed only drives sampled property tests.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

ELEMENT_CAP_DEFAULT = 200_000
COSET_CAP_DEFAULT = 2_000_000
LEAF_BUDGET_DEFAULT = 100_000_000
SUBGROUP_ORBIT_CAP_DEFAULT = 100_000
COSET_SWEEP_CAP_DEFAULT = 1_000_000

_ENV_PREFIX = "GROUPLOC_"


@dataclass(frozen=True)
class RunConfig:
    element_cap: int = ELEMENT_CAP_DEFAULT
    coset_cap: int = COSET_CAP_DEFAULT
    leaf_budget: int = LEAF_BUDGET_DEFAULT
    subgroup_orbit_cap: int = SUBGROUP_ORBIT_CAP_DEFAULT
    coset_sweep_cap: int = COSET_SWEEP_CAP_DEFAULT
    workers: int = 1
    tier: str = "core"
    cache_dir: str | None = None
    seed: int = 0

    def with_overrides(self, **kw) -> "RunConfig":
        return replace(self, **kw)

    @classmethod
    def from_env(cls, base: "RunConfig | None" = None) -> "RunConfig":
        """Apply GROUPLOC_* environment overrides on top of `base`."""
        cfg = base or cls()
        mapping = {
            "ELEMENT_CAP": ("element_cap", int),
            "COSET_CAP": ("coset_cap", int),
            "LEAF_BUDGET": ("leaf_budget", int),
            "SUBGROUP_ORBIT_CAP": ("subgroup_orbit_cap", int),
            "COSET_SWEEP_CAP": ("coset_sweep_cap", int),
            "WORKERS": ("workers", int),
            "TIER": ("tier", str),
            "CACHE_DIR": ("cache_dir", str),
            "SEED": ("seed", int),
        }
        kw = {}
        for env_key, (attr, conv) in mapping.items():
            raw = os.environ.get(_ENV_PREFIX + env_key)
            if raw is not None:
                kw[attr] = conv(raw)
        return cfg.with_overrides(**kw) if kw else cfg


DEFAULT = RunConfig()
