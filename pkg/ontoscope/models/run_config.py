"""
Run configuration resolved from a config class, the environment and explicit
overrides. Every random draw in a run comes from ``RunConfig.rng()``.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

from ontoscope.errors import ConfigurationError
from ontoscope.utils.sampling import stream_rng


@dataclass
class RunConfig:
    grid_size: int = 20000
    tolerance: float = 2e-2
    seed: int = 42
    pair_budget: int = 200
    born_pair_count: int = 50
    coverage_floor: int = 10
    random_state_count: int = 12
    min_grid_size: int = 100
    support_eps_rel: float = 1e-9
    orthogonality_threshold: float = 1e-8
    f_overlap_floor: float = 0.1
    lp_max_points: int = 12
    lp_residual_tol: float = 1e-9
    theorem3_ks_grid: int = 2500
    convergence_grids: Tuple[int, ...] = (2500, 10000, 40000)
    output_dir: str = "output"
    log_level: str = "INFO"
    log_format: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"
    config_name: str = "development"

    def __post_init__(self):
        errors = self.validate()
        if errors:
            raise ConfigurationError("; ".join(errors))

    def validate(self):
        errors = []
        if self.grid_size < self.min_grid_size:
            errors.append(f"grid_size must be >= {self.min_grid_size} (got {self.grid_size})")
        if self.tolerance <= 0:
            errors.append("tolerance must be positive")
        if self.pair_budget < 0:
            errors.append("pair_budget must be non-negative")
        if self.born_pair_count < 0:
            errors.append("born_pair_count must be non-negative")
        if not 0 <= self.f_overlap_floor < 1:
            errors.append("f_overlap_floor must lie in [0, 1)")
        if any(n < self.min_grid_size for n in self.convergence_grids):
            errors.append("every convergence grid must be >= min_grid_size")
        if not isinstance(logging.getLevelName(str(self.log_level).upper()), int):
            errors.append(f"unknown log level '{self.log_level}'")
        return errors

    def rng(self, stream=""):
        return stream_rng(self.seed, stream)

    def to_dict(self):
        return {
            "config_name": self.config_name,
            "grid_size": self.grid_size,
            "tolerance": self.tolerance,
            "seed": self.seed,
            "pair_budget": self.pair_budget,
            "born_pair_count": self.born_pair_count,
            "coverage_floor": self.coverage_floor,
            "f_overlap_floor": self.f_overlap_floor,
        }
