"""
Discriminative drift detector.

The window holds w old samples (W_curr) followed by round(w*rho) new ones
(W_next). When full, a logistic discriminator is trained to tell them apart
and the AUC of its scores is the separability statistic. By default the
scores are out-of-fold: stratified folds each score the samples the other
folds trained on, so a discriminator that only memorised noise stays near
0.5. With auc_folds=1 the discriminator scores its own training window.
"""

from dataclasses import dataclass

import numpy as np
from sklearn.model_selection import StratifiedKFold

from drift_pipeline.drift_config import logger, D3_CONFIG
from drift_pipeline.drift_utils import window_count
from drift_pipeline.exceptions import ConfigError, DimensionMismatchError
from drift_pipeline.detectors.auc import auc
from drift_pipeline.detectors.samples import DriftDecision, SlidingWindow
from drift_pipeline.learners.logistic import LogisticConfig, logistic_fit


@dataclass(frozen=True)
class D3Config:
    w: int = D3_CONFIG["w"]
    rho: float = D3_CONFIG["rho"]
    tau: float = D3_CONFIG["tau"]
    standardize: bool = D3_CONFIG["standardize"]
    auc_folds: int = D3_CONFIG["auc_folds"]
    seed: int = D3_CONFIG["seed"]

    def __post_init__(self):
        if self.w < 1:
            raise ConfigError(f"D3 w must be >= 1, got {self.w}")
        if not 0 < self.rho <= 1:
            raise ConfigError(f"D3 rho must be in (0, 1], got {self.rho}")
        if not 0.5 < self.tau <= 1:
            raise ConfigError(f"D3 tau must be in (0.5, 1], got {self.tau}")
        if self.n_next < 1:
            raise ConfigError(f"D3 window w={self.w}, rho={self.rho} leaves an empty W_next")
        if self.auc_folds < 1:
            raise ConfigError(f"D3 auc_folds must be >= 1, got {self.auc_folds}")

    @property
    def n_next(self):
        return window_count(self.w, self.rho)

    @property
    def capacity(self):
        return self.w + self.n_next

    @property
    def cross_fitted(self):
        # every fold needs a member of each sub-window
        return self.auc_folds > 1 and min(self.w, self.n_next) >= self.auc_folds


def standardize_window(X):
    scale = X.std(axis=0)
    scale[scale == 0] = 1.0
    return (X - X.mean(axis=0)) / scale


class D3Detector:
    kind = "d3"

    def __init__(self, config=None, logistic_config=None):
        self.config = config or D3Config()
        self.logistic_config = logistic_config or LogisticConfig()
        self.window = SlidingWindow(self.config.capacity)
        self.dim = None
        self.n_checks = 0
        self.n_drifts = 0

    @property
    def capacity(self):
        return self.config.capacity

    def _scores(self, X, y):
        if not self.config.cross_fitted:
            return logistic_fit(X, y, self.logistic_config).score_many(X)
        folds = StratifiedKFold(n_splits=self.config.auc_folds, shuffle=True,
                                random_state=self.config.seed + self.n_checks)
        scores = np.zeros(len(y))
        for train, test in folds.split(X, y):
            model = logistic_fit(X[train], y[train], self.logistic_config)
            scores[test] = model.score_many(X[test])
        return scores

    def _statistic(self):
        X = self.window.features()
        if self.config.standardize:
            X = standardize_window(X)
        y = np.concatenate([np.zeros(self.config.w), np.ones(self.config.n_next)])
        area = auc(self._scores(X, y), y)
        return max(area, 1.0 - area)

    def step(self, sample):
        if self.dim is None:
            self.dim = sample.dim
        elif sample.dim != self.dim:
            raise DimensionMismatchError(f"D3 expected {self.dim} features, got {sample.dim} at index {sample.index}")

        self.window.push(sample)
        if not self.window.is_full():
            return DriftDecision(fired=False, statistic=0.5)

        self.n_checks += 1
        statistic = self._statistic()
        if statistic >= self.config.tau:
            snapshot = self.window.snapshot()
            # W_next seeds the next window
            self.window.drop_oldest(self.config.w)
            self.n_drifts += 1
            logger.debug(f"D3 drift at index {sample.index}: AUC={statistic:.4f}")
            return DriftDecision(fired=True, statistic=statistic, window_snapshot=snapshot, checked=True)

        self.window.drop_oldest(self.config.n_next)
        return DriftDecision(fired=False, statistic=statistic, checked=True)


def d3_step(state, sample):
    return state.step(sample)
