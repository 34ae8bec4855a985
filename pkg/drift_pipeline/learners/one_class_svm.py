"""
nu-one-class SVM with an RBF kernel, solved by SMO on the dual.

The solver works on the unscaled dual (0 <= a_i <= 1, sum a = nu * n) using
maximal-violating-pair working sets, then normalises the multipliers so they
sum to one. decision(x) = sum_i alpha_i K(x_i, x) - rho_offset.
"""

from dataclasses import dataclass

import numpy as np

from drift_pipeline.drift_config import logger, OCSVM_CONFIG
from drift_pipeline.exceptions import ConfigError, DimensionMismatchError
from drift_pipeline.learners.kernels import KernelSpec, rbf_kernel, resolve_gamma

# Decision values this close to zero count as in-distribution
DECISION_EPS = 1e-12


@dataclass(frozen=True)
class SolverConfig:
    tolerance: float = OCSVM_CONFIG["tolerance"]
    max_passes: int = OCSVM_CONFIG["max_passes"]
    variance_floor: float = OCSVM_CONFIG["variance_floor"]


@dataclass
class OneClassSvmModel:
    support_vectors: np.ndarray
    alphas: np.ndarray
    rho_offset: float
    gamma: float
    nu: float
    n_iter: int = 0
    converged: bool = True

    @property
    def dim(self):
        return self.support_vectors.shape[1]

    def decision_many(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != self.dim:
            raise DimensionMismatchError(f"Expected {self.dim} features, got {X.shape[1]}")
        return rbf_kernel(X, self.support_vectors, self.gamma) @ self.alphas - self.rho_offset

    def predict_many(self, X):
        return np.where(self.decision_many(X) >= -DECISION_EPS, 1, -1)

    def decision(self, x):
        return float(self.decision_many(np.asarray(x, dtype=float).reshape(1, -1))[0])

    def predict(self, x):
        return int(self.predict_many(np.asarray(x, dtype=float).reshape(1, -1))[0])


def _initial_alphas(n, nu):
    # first floor(nu*n) at the bound, the remainder on the next one
    total = nu * n
    alpha = np.zeros(n)
    full = int(total)
    alpha[:full] = 1.0
    if full < n:
        alpha[full] = total - full
    return alpha


def _compute_rho(alpha, grad, upper):
    # lower edge of the KKT band: every multiplier below the bound ends up in-distribution,
    # so training outliers are a subset of the bounded ones (at most nu * n)
    below_bound = alpha < upper
    if below_bound.any():
        return float(grad[below_bound].min())
    return float(grad.max())


def ocsvm_fit(X, nu=OCSVM_CONFIG["nu"], kernel=None, solver_config=None):
    """
    Fit a nu-one-class SVM.

    Args:
        X: training matrix (n x d), n >= 2
        nu: upper bound on the training outlier fraction, in (0, 1]
        kernel: KernelSpec (gamma=None means 'scale')
        solver_config: SolverConfig

    Returns:
        OneClassSvmModel with normalised multipliers
    """
    kernel = kernel or KernelSpec()
    solver_config = solver_config or SolverConfig()
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or len(X) == 0:
        raise ConfigError("One-class SVM needs a non-empty 2-D training matrix")
    if len(X) < 2:
        raise ConfigError("One-class SVM needs at least two training samples")
    if not 0 < nu <= 1:
        raise ConfigError(f"nu must be in (0, 1], got {nu}")

    n = len(X)
    gamma = resolve_gamma(kernel, X, solver_config.variance_floor)
    Q = rbf_kernel(X, X, gamma)
    upper = 1.0

    alpha = _initial_alphas(n, nu)
    grad = Q @ alpha
    max_iter = solver_config.max_passes * n
    n_iter = 0
    converged = False

    while n_iter < max_iter:
        can_grow = alpha < upper
        can_shrink = alpha > 0
        up_idx = np.flatnonzero(can_grow)
        low_idx = np.flatnonzero(can_shrink)
        # i gains weight (smallest gradient), j loses weight (largest gradient)
        i = up_idx[np.argmin(grad[up_idx])]
        j = low_idx[np.argmax(grad[low_idx])]
        if grad[j] - grad[i] < solver_config.tolerance:
            converged = True
            break

        curvature = Q[i, i] + Q[j, j] - 2 * Q[i, j]
        if curvature <= 0:
            curvature = 1e-12
        delta = (grad[j] - grad[i]) / curvature
        # keep the pair inside the box
        delta = min(delta, upper - alpha[i], alpha[j])

        # land exactly on the bounds when the step is clipped
        alpha[i] = upper if delta >= upper - alpha[i] else alpha[i] + delta
        alpha[j] = 0.0 if delta >= alpha[j] else alpha[j] - delta
        grad += delta * (Q[:, i] - Q[:, j])
        n_iter += 1

    if not converged:
        logger.warning(f"⚠️ One-class SVM solver stopped at {n_iter} iterations without reaching tolerance")

    rho = _compute_rho(alpha, grad, upper)
    keep = alpha > 0
    scale = alpha.sum()
    model = OneClassSvmModel(
        support_vectors=X[keep].copy(),
        alphas=alpha[keep] / scale,
        rho_offset=rho / scale,
        gamma=gamma,
        nu=nu,
        n_iter=n_iter,
        converged=converged,
    )
    logger.debug(f"One-class SVM fit: n={n}, support vectors={int(keep.sum())}, iterations={n_iter}")
    return model


def ocsvm_decision(model, x):
    return model.decision(x)


def ocsvm_predict(model, x):
    """+1 for in-distribution, -1 for outlier"""
    return model.predict(x)
