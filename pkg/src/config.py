"""
Run Configuration - caps, schedules and switches shared by every subcommand

Configuration comes from command-line flags only.
"""

import hashlib
import json
import time
from dataclasses import asdict, dataclass
from typing import Dict, Optional, Tuple

from .errors import ConfigError


@dataclass
class RunConfig:
    """Every tunable limit of an analysis run"""
    radii: Tuple[int, ...] = (3, 4, 5, 6)
    depth_cap: int = 16
    screen_depth_cap: int = 5
    screen: bool = False
    seeded: bool = True
    max_rules: int = 20000
    max_lhs_length: int = 60
    max_ball_size: int = 200000
    table_cap: int = 20000
    max_search_nodes: int = 2000000
    max_cosets: int = 100000
    max_low_index_nodes: int = 1000000
    timeout: Optional[float] = 300.0
    deterministic: bool = False
    jobs: int = 1
    tietze_budget: float = 2.0

    def __post_init__(self):
        self.radii = tuple(int(r) for r in self.radii)
        if not self.radii or any(r < 0 for r in self.radii):
            raise ConfigError("radius schedule must be a non-empty list of non-negative radii")
        if any(b <= a for a, b in zip(self.radii, self.radii[1:])):
            raise ConfigError("radius schedule must be strictly increasing")
        for name in ("depth_cap", "screen_depth_cap", "max_rules", "max_lhs_length",
                     "max_ball_size", "table_cap", "max_search_nodes", "max_cosets",
                     "max_low_index_nodes", "jobs"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name.replace('_', '-')} must be positive")
        if self.timeout is not None and self.timeout <= 0:
            raise ConfigError("timeout must be positive")
        if self.tietze_budget < 1.0:
            raise ConfigError("tietze budget must be at least 1.0")

    @property
    def effective_depth_cap(self) -> int:
        return min(self.depth_cap, self.screen_depth_cap) if self.screen else self.depth_cap

    def deadline(self) -> Optional[float]:
        """Monotonic deadline for one run, or None without a timeout"""
        return None if self.timeout is None else time.monotonic() + self.timeout

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["radii"] = list(self.radii)
        return data

    def fingerprint(self) -> str:
        """Hash of the fields that can change a verdict"""
        relevant = {
            "radii": list(self.radii),
            "depth_cap": self.effective_depth_cap,
            "seeded": self.seeded,
            "max_rules": self.max_rules,
            "max_lhs_length": self.max_lhs_length,
            "max_search_nodes": self.max_search_nodes,
        }
        return hashlib.sha256(json.dumps(relevant, sort_keys=True).encode()).hexdigest()[:16]
