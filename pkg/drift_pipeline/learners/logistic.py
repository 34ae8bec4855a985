"""
Binary logistic regression trained by full-batch gradient descent.

Used by D3 as the window discriminator and by SUDS-D3 to score the drift
window. The solver works on the features as given; callers that want
scale-free fits standardize before calling.
"""

from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.special import expit

from drift_pipeline.drift_config import logger, LOGISTIC_CONFIG
from drift_pipeline.exceptions import DimensionMismatchError, SingleClassError, ConfigError

MIN_STEP = 1e-12


@dataclass(frozen=True)
class LogisticConfig:
    learning_rate: float = LOGISTIC_CONFIG["learning_rate"]
    max_epochs: int = LOGISTIC_CONFIG["max_epochs"]
    l2: float = LOGISTIC_CONFIG["l2"]
    tolerance: float = LOGISTIC_CONFIG["tolerance"]
    # weights start at zero, so the solver never draws from it
    seed: int = LOGISTIC_CONFIG["seed"]

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ConfigError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.max_epochs < 1:
            raise ConfigError(f"max_epochs must be >= 1, got {self.max_epochs}")
        if self.l2 < 0:
            raise ConfigError(f"l2 must be >= 0, got {self.l2}")


@dataclass
class LogisticModel:
    weights: np.ndarray
    bias: float
    config: LogisticConfig = field(default_factory=LogisticConfig)
    loss_history: List[float] = field(default_factory=list)

    @property
    def dim(self):
        return len(self.weights)

    def decision_many(self, X):
        X = _as_matrix(X)
        if X.shape[1] != self.dim:
            raise DimensionMismatchError(f"Expected {self.dim} features, got {X.shape[1]}")
        return X @ self.weights + self.bias

    def score_many(self, X):
        return expit(self.decision_many(X))

    def score(self, x):
        return float(self.score_many(np.asarray(x, dtype=float).reshape(1, -1))[0])


def _as_matrix(X):
    try:
        X = np.asarray(X, dtype=float)
    except ValueError as e:
        raise DimensionMismatchError(f"Feature vectors have inconsistent lengths: {e}") from e
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2:
        raise DimensionMismatchError(f"Expected a 2-D feature matrix, got shape {X.shape}")
    return X


def _loss(X, y, w, b, l2):
    margin = X @ w + b
    # log(1 + e^m) - y*m, stable for large |m|
    return float(np.mean(np.logaddexp(0.0, margin) - y * margin) + 0.5 * l2 * (w @ w))


def logistic_fit(X, y, config=None):
    """
    Fit a binary logistic regression.

    Args:
        X: feature matrix (n x d), n >= 2
        y: binary labels (0/1), both classes present
        config: LogisticConfig

    Returns:
        LogisticModel: weights/bias, loss per epoch
    """
    config = config or LogisticConfig()
    X = _as_matrix(X)
    y = np.asarray(y, dtype=float).reshape(-1)
    if len(X) != len(y):
        raise DimensionMismatchError(f"{len(X)} feature vectors but {len(y)} labels")
    if len(X) < 2:
        raise SingleClassError("Logistic regression needs at least two samples")
    classes = set(np.unique(y).tolist())
    if not classes <= {0.0, 1.0}:
        raise ConfigError(f"Labels must be 0/1, got {sorted(classes)}")
    if len(classes) < 2:
        raise SingleClassError("Logistic regression needs both classes present")

    n, d = X.shape
    w = np.zeros(d)
    b = 0.0
    step = config.learning_rate
    loss = _loss(X, y, w, b, config.l2)
    history = [loss]

    for _ in range(config.max_epochs):
        residual = expit(X @ w + b) - y
        grad_w = X.T @ residual / n + config.l2 * w
        grad_b = float(residual.mean())

        # backtrack until the epoch does not increase the loss
        while True:
            new_w = w - step * grad_w
            new_b = b - step * grad_b
            new_loss = _loss(X, y, new_w, new_b, config.l2)
            if new_loss <= loss or step < MIN_STEP:
                break
            step *= 0.5

        if new_loss > loss:
            break
        w, b = new_w, new_b
        change = loss - new_loss
        loss = new_loss
        history.append(loss)
        if change < config.tolerance:
            break

    logger.debug(f"Logistic fit: n={n}, d={d}, epochs={len(history) - 1}, loss={loss:.6f}")
    return LogisticModel(weights=w, bias=b, config=config, loss_history=history)


def logistic_score(model, x):
    """Probability of class 1 for a single feature vector"""
    return model.score(x)
