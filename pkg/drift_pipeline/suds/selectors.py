"""
Retraining-set selectors run after a detector fires.

Baselines take the newest samples of the drift window. The homogeneous
selectors keep only the samples that look like the new distribution:
for D3 the ones a window discriminator scores highest as "new", for OCDD
the flagged outliers that a one-class model fitted on the outliers accepts.
None of them reads a sample label.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from drift_pipeline.drift_config import logger
from drift_pipeline.drift_utils import window_count
from drift_pipeline.exceptions import ConfigError, SelectionError
from drift_pipeline.detectors.d3 import standardize_window
from drift_pipeline.detectors.samples import Sample
from drift_pipeline.learners.kernels import KernelSpec
from drift_pipeline.learners.logistic import logistic_fit
from drift_pipeline.learners.one_class_svm import ocsvm_fit

SELECTOR_KINDS = ("baseline_d3", "suds_d3", "baseline_ocdd", "suds_ocdd")

# Selector kinds each detector can host
COMPATIBLE_SELECTORS = {
    "d3": ("baseline_d3", "suds_d3"),
    "ocdd": ("baseline_ocdd", "suds_ocdd"),
}


@dataclass(frozen=True)
class SelectionResult:
    selected: Tuple[Sample, ...]
    fallback_used: bool = False

    @property
    def requested_annotations(self):
        return len(self.selected)

    @property
    def indices(self):
        return [s.index for s in self.selected]


@dataclass(frozen=True)
class SelectorConfig:
    kind: str = "baseline_d3"
    seed: int = 0

    def __post_init__(self):
        if self.kind not in SELECTOR_KINDS:
            raise ConfigError(f"Unknown selector kind: {self.kind}")

    @property
    def detector_kind(self):
        return self.kind.split("_", 1)[1]

    @property
    def is_suds(self):
        return self.kind.startswith("suds")


def check_compatible(selector_kind, detector_kind):
    if selector_kind not in COMPATIBLE_SELECTORS.get(detector_kind, ()):
        raise ConfigError(f"Selector '{selector_kind}' cannot be used with detector '{detector_kind}'")


def _in_stream_order(samples):
    return tuple(sorted(samples, key=lambda s: s.index))


def select_baseline_d3(snapshot, w, rho):
    """The last round(w*rho) samples of the D3 window (W_next)"""
    n_next = window_count(w, rho)
    required = w + n_next
    if len(snapshot) < required:
        raise SelectionError(f"D3 snapshot has {len(snapshot)} samples, needs {required}")
    return SelectionResult(selected=tuple(snapshot[-n_next:]))


def select_suds_d3(snapshot, w, rho, seed=0, logistic_config=None, standardize=False):
    """
    Homogeneous selection for D3.

    W_curr is subsampled (seeded, without replacement) to |W_next|, a
    discriminator is trained W_curr -> 0 vs W_next -> 1, and the round(w*rho)
    samples of the whole window with the highest class-1 confidence are kept.
    Equal confidences prefer the newer sample. A constant W_next is already
    homogeneous and is returned as is.
    """
    n_next = window_count(w, rho)
    required = w + n_next
    if len(snapshot) < required:
        raise SelectionError(f"D3 snapshot has {len(snapshot)} samples, needs {required}")
    if n_next < 2:
        raise SelectionError(f"Homogeneous D3 selection needs round(w*rho) >= 2, got {n_next}")

    snapshot = tuple(snapshot[-required:])
    X = np.vstack([s.features for s in snapshot])
    if standardize:
        X = standardize_window(X)
    X_next = X[w:]
    if np.all(X_next == X_next[0]):
        logger.debug("Homogeneous D3 selection fell back to W_next: W_next is constant")
        fallback = select_baseline_d3(snapshot, w, rho)
        return SelectionResult(selected=fallback.selected, fallback_used=True)

    rng = np.random.default_rng(seed)
    picked = np.sort(rng.choice(w, size=min(n_next, w), replace=False))
    X_train = np.vstack([X[picked], X_next])
    y_train = np.concatenate([np.zeros(len(picked)), np.ones(n_next)])
    model = logistic_fit(X_train, y_train, logistic_config)
    scores = model.score_many(X)
    indices = np.array([s.index for s in snapshot])
    # lexsort keys run last-major: score first, then stream index
    order = np.lexsort((-indices, -scores))
    chosen = [snapshot[i] for i in order[:n_next]]
    return SelectionResult(selected=_in_stream_order(chosen))


def select_baseline_ocdd(snapshot, w, rho):
    """The round(w*rho) most recent samples of the OCDD window, at least one"""
    if len(snapshot) < w:
        raise SelectionError(f"OCDD snapshot has {len(snapshot)} samples, needs {w}")
    count = max(window_count(w, rho), 1)
    return SelectionResult(selected=tuple(snapshot[-count:]))


def select_suds_ocdd(snapshot, outlier_flags, nu, kernel=None, solver_config=None):
    """
    Homogeneous selection for OCDD.

    A fresh one-class SVM is fitted on the flagged outliers; the outliers it
    accepts as in-distribution are kept. An empty result falls back to all
    outliers.
    """
    if len(snapshot) != len(outlier_flags):
        raise SelectionError(f"{len(snapshot)} samples but {len(outlier_flags)} outlier flags")
    outliers = tuple(s for s, flagged in zip(snapshot, outlier_flags) if flagged)
    if len(outliers) < 2:
        raise SelectionError(f"Homogeneous OCDD selection needs at least 2 outliers, got {len(outliers)}")

    model = ocsvm_fit(np.vstack([s.features for s in outliers]), nu, kernel or KernelSpec(), solver_config)
    accepted = model.predict_many(np.vstack([s.features for s in snapshot])) == 1
    chosen = [s for s, flagged, keep in zip(snapshot, outlier_flags, accepted) if flagged and keep]
    if not chosen:
        logger.debug("Homogeneous OCDD selection fell back to all outliers: none accepted")
        return SelectionResult(selected=_in_stream_order(outliers), fallback_used=True)
    return SelectionResult(selected=_in_stream_order(chosen))


def select(selector, decision, detector_config, logistic_config=None, drift_index=0):
    """
    Dispatch a fired DriftDecision to the configured selector.

    Args:
        selector: SelectorConfig
        decision: DriftDecision with fired=True
        detector_config: D3Config or OCDDConfig of the host detector
        drift_index: position of this drift in the run; seeds the subsample as selector.seed + drift_index

    Returns:
        SelectionResult
    """
    snapshot = decision.window_snapshot
    cfg = detector_config
    if selector.kind == "baseline_d3":
        return select_baseline_d3(snapshot, cfg.w, cfg.rho)
    if selector.kind == "suds_d3":
        return select_suds_d3(snapshot, cfg.w, cfg.rho, selector.seed + drift_index, logistic_config,
                              cfg.standardize)
    if selector.kind == "baseline_ocdd":
        return select_baseline_ocdd(snapshot, cfg.w, cfg.rho)
    return select_suds_ocdd(snapshot, decision.outlier_flags, cfg.nu, cfg.kernel, cfg.solver)
