import os

from config import config_map
from ontoscope.errors import ConfigurationError
from ontoscope.models.run_config import RunConfig

__version__ = "0.1.0"

_CONFIG_KEYS = {
    "grid_size": "GRID_SIZE",
    "tolerance": "TOLERANCE",
    "seed": "SEED",
    "pair_budget": "PAIR_BUDGET",
    "born_pair_count": "BORN_PAIR_COUNT",
    "coverage_floor": "COVERAGE_FLOOR",
    "random_state_count": "RANDOM_STATE_COUNT",
    "min_grid_size": "MIN_GRID_SIZE",
    "support_eps_rel": "SUPPORT_EPS_REL",
    "orthogonality_threshold": "ORTHOGONALITY_THRESHOLD",
    "f_overlap_floor": "F_OVERLAP_FLOOR",
    "lp_max_points": "LP_MAX_POINTS",
    "lp_residual_tol": "LP_RESIDUAL_TOL",
    "theorem3_ks_grid": "THEOREM3_KS_GRID",
    "convergence_grids": "CONVERGENCE_GRIDS",
    "output_dir": "OUTPUT_DIR",
    "log_level": "LOG_LEVEL",
    "log_format": "LOG_FORMAT",
}


def create_run_config(config_name=None, **overrides):
    """Resolve a RunConfig: explicit override > environment > config class default."""
    config_name = config_name or os.environ.get("ONTOSCOPE_ENV", "development")
    if config_name not in config_map:
        raise ConfigurationError(
            f"unknown configuration '{config_name}' (expected one of {sorted(config_map)})"
        )
    cfg = config_map[config_name]
    values = {field: getattr(cfg, key) for field, key in _CONFIG_KEYS.items()}

    env_seed = os.environ.get("ONTOSCOPE_SEED")
    if env_seed not in (None, ""):
        try:
            values["seed"] = int(env_seed)
        except ValueError:
            raise ConfigurationError(f"ONTOSCOPE_SEED must be an integer (got '{env_seed}')") from None

    for name, value in overrides.items():
        if name not in _CONFIG_KEYS:
            raise ConfigurationError(f"unknown run setting '{name}'")
        if value is not None:
            values[name] = value
    return RunConfig(config_name=config_name, **values)
