import os
import logging

# Shared package logger; handlers are attached by setup_logging()
logger = logging.getLogger("drift_pipeline")

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
DEFAULT_LOG_FILE = os.getenv("DRIFT_PIPELINE_LOG", "drift_pipeline.log")


def setup_logging(level="INFO", log_file=DEFAULT_LOG_FILE):
    """Configure file + console logging for the pipeline"""
    handlers = [logging.StreamHandler()]
    if log_file:
        handlers.insert(0, logging.FileHandler(log_file, encoding='utf-8'))

    for handler in handlers:
        handler.setFormatter(logging.Formatter(LOG_FORMAT))

    logger.handlers.clear()
    for handler in handlers:
        logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger


# Learner defaults
LOGISTIC_CONFIG = {
    "learning_rate": 0.1,
    "max_epochs": 500,
    "l2": 1e-4,
    "tolerance": 1e-6,
    "seed": 0,
}

OCSVM_CONFIG = {
    "nu": 0.5,
    "tolerance": 1e-3,
    "max_passes": 10,        # solver iterations = max_passes * n
    "variance_floor": 1e-6,  # floor for the "scale" gamma denominator
}

HOEFFDING_CONFIG = {
    "grace_period": 200,
    "split_confidence": 1e-7,
    "tie_threshold": 0.05,
    "max_depth": None,
    "split_criterion": "gini",
    "n_split_points": 100,
    "default_class": 0,
    "leaf_prediction": "nba",  # mc | nb | nba
}

# Detector defaults
D3_CONFIG = {
    "w": 100,
    "rho": 0.1,
    "tau": 0.7,
    "standardize": False,
    "auc_folds": 2,  # 1 scores the discriminator on its own training window
    "seed": 0,
}

OCDD_CONFIG = {
    "w": 250,
    "rho": 0.3,
    "nu": 0.5,
}

HARNESS_CONFIG = {
    "update_mode": "prequential_update",
    "seed": 0,
    "trace": False,
}

# Hyperparameter grids searched per detector
D3_SWEEP_GRID = {
    "w": [50, 100, 150],
    "rho": [0.1, 0.25, 0.5, 0.75, 1.0],
    "tau": [0.6, 0.65, 0.7, 0.75, 0.8],
    "repeats": 3,
}

OCDD_SWEEP_GRID = {
    "w": [150, 200, 250, 300],
    "rho": [0.25, 0.3, 0.35],
    "nu": [0.4, 0.5, 0.6],
    "repeats": 3,
}

# Report row schema (column order is part of the output contract)
REPORT_COLUMNS = [
    "dataset", "detector", "selector", "w", "rho", "tau_or_nu", "repeat",
    "accuracy", "drifts", "annotated", "total", "hadam",
]

FLOAT_FORMAT = "%.6f"

# Published comparison tables shipped with the package
PUBLISHED_TABLES_PATH = os.path.join(
    os.path.dirname(os.path.abspath(__file__)), "data", "published_tables.tsv"
)
