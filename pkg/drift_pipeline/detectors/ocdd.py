"""
One-class drift detector.

A one-class SVM fitted on a full window describes the current distribution.
Each following sample is flagged as an outlier or not; a drift fires when
the flagged fraction of the last w samples reaches rho. After a drift the
model is refit on the window that triggered it and the flags are cleared.
"""

from collections import deque
from dataclasses import dataclass, field

from drift_pipeline.drift_config import logger, OCDD_CONFIG
from drift_pipeline.exceptions import ConfigError, DimensionMismatchError
from drift_pipeline.detectors.samples import DriftDecision, SlidingWindow
from drift_pipeline.learners.kernels import KernelSpec
from drift_pipeline.learners.one_class_svm import SolverConfig, ocsvm_fit


@dataclass(frozen=True)
class OCDDConfig:
    w: int = OCDD_CONFIG["w"]
    rho: float = OCDD_CONFIG["rho"]
    nu: float = OCDD_CONFIG["nu"]
    kernel: KernelSpec = field(default_factory=KernelSpec)
    solver: SolverConfig = field(default_factory=SolverConfig)

    def __post_init__(self):
        if self.w < 2:
            raise ConfigError(f"OCDD w must be >= 2, got {self.w}")
        if not 0 < self.rho < 1:
            raise ConfigError(f"OCDD rho must be in (0, 1), got {self.rho}")
        if not 0 < self.nu <= 1:
            raise ConfigError(f"OCDD nu must be in (0, 1], got {self.nu}")


class OCDDDetector:
    kind = "ocdd"

    def __init__(self, config=None):
        self.config = config or OCDDConfig()
        self.window = SlidingWindow(self.config.w)
        self.outlier_flags = deque(maxlen=self.config.w)
        self.model = None
        self.dim = None
        self.n_checks = 0
        self.n_drifts = 0
        self.n_fits = 0

    @property
    def capacity(self):
        return self.config.w

    def _fit(self):
        self.model = ocsvm_fit(self.window.features(), self.config.nu, self.config.kernel, self.config.solver)
        self.n_fits += 1
        self.outlier_flags.clear()
        self.outlier_flags.extend([False] * len(self.window))

    def step(self, sample):
        if self.dim is None:
            self.dim = sample.dim
        elif sample.dim != self.dim:
            raise DimensionMismatchError(f"OCDD expected {self.dim} features, got {sample.dim} at index {sample.index}")

        if self.model is None:
            self.window.push(sample)
            self.outlier_flags.append(False)
            if self.window.is_full():
                self._fit()
            return DriftDecision(fired=False, statistic=0.0)

        is_outlier = self.model.predict(sample.features) == -1
        self.window.push(sample)
        self.outlier_flags.append(is_outlier)
        self.n_checks += 1

        fraction = sum(self.outlier_flags) / self.config.w
        if fraction >= self.config.rho:
            snapshot = self.window.snapshot()
            flags = tuple(self.outlier_flags)
            self.n_drifts += 1
            logger.debug(f"OCDD drift at index {sample.index}: outlier fraction={fraction:.4f}")
            # the window that fired is the new current distribution
            self._fit()
            return DriftDecision(fired=True, statistic=fraction, window_snapshot=snapshot,
                                 checked=True, outlier_flags=flags)

        return DriftDecision(fired=False, statistic=fraction, checked=True)


def ocdd_step(state, sample):
    return state.step(sample)
