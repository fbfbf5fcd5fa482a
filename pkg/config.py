import os


class Config:
    # Ontic-space discretization
    GRID_SIZE = 20000
    MIN_GRID_SIZE = 100
    RANDOM_STATE_COUNT = 12

    # Verification tolerances
    TOLERANCE = 2e-2
    SUPPORT_EPS_REL = 1e-9
    ORTHOGONALITY_THRESHOLD = 1e-8
    F_OVERLAP_FLOOR = 0.1

    # Sampling
    SEED = 42
    PAIR_BUDGET = 200
    BORN_PAIR_COUNT = 50
    COVERAGE_FLOOR = 10

    # Theorem-3 feasibility search
    LP_MAX_POINTS = 12
    LP_RESIDUAL_TOL = 1e-9
    THEOREM3_KS_GRID = 2500

    CONVERGENCE_GRIDS = (2500, 10000, 40000)

    LOG_LEVEL = os.environ.get("ONTOSCOPE_LOG_LEVEL", "INFO")
    LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

    OUTPUT_DIR = os.environ.get(
        "ONTOSCOPE_OUTPUT_DIR",
        os.path.join(os.path.dirname(os.path.abspath(__file__)), "output"),
    )


class DevelopmentConfig(Config):
    LOG_LEVEL = "DEBUG"


class ProductionConfig(Config):
    PAIR_BUDGET = 500


class TestingConfig(Config):
    GRID_SIZE = 2500
    PAIR_BUDGET = 60
    RANDOM_STATE_COUNT = 6
    LOG_LEVEL = "WARNING"


config_map = {
    "development": DevelopmentConfig,
    "production": ProductionConfig,
    "testing": TestingConfig,
}
