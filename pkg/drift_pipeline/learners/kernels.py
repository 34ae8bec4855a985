from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist

from drift_pipeline.exceptions import ConfigError


@dataclass(frozen=True)
class KernelSpec:
    """RBF kernel settings; gamma=None resolves to the 'scale' rule at fit time"""
    kind: str = "rbf"
    gamma: Optional[float] = None

    def __post_init__(self):
        if self.kind != "rbf":
            raise ConfigError(f"Unsupported kernel: {self.kind}")
        if self.gamma is not None and not self.gamma > 0:
            raise ConfigError(f"Kernel gamma must be > 0, got {self.gamma}")


def scale_gamma(X, variance_floor=1e-6):
    """gamma = 1 / (d * overall variance of X), variance floored"""
    X = np.asarray(X, dtype=float)
    variance = max(float(X.var()), variance_floor)
    return 1.0 / (X.shape[1] * variance)


def resolve_gamma(kernel, X, variance_floor=1e-6):
    if kernel.gamma is not None:
        return float(kernel.gamma)
    return scale_gamma(X, variance_floor)


def rbf_kernel(A, B, gamma):
    """K[i, j] = exp(-gamma * ||A_i - B_j||^2)"""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    return np.exp(-gamma * cdist(A, B, 'sqeuclidean'))
