import numpy as np
import pandas as pd

from drift_pipeline.exceptions import ConfigError, DatasetFormatError


def hadam(psi, annotated, total):
    """
    Harmonic mean of a performance value and the unannotated fraction.

    Args:
        psi: performance in [0, 1] (accuracy, precision, recall, ...)
        annotated: number of labeled samples, 0 <= annotated <= total
        total: stream length, > 0

    Returns:
        float: 2 * psi * eps / (psi + eps) with eps = 1 - annotated / total; 0 when both are 0
    """
    if total <= 0:
        raise ConfigError(f"total must be > 0, got {total}")
    if annotated < 0:
        raise ConfigError(f"annotated must be >= 0, got {annotated}")
    if annotated > total:
        raise ConfigError(f"annotated ({annotated}) exceeds total ({total})")
    if not 0 <= psi <= 1:
        raise ConfigError(f"psi must be in [0, 1], got {psi}")

    eps = 1.0 - annotated / total
    if psi + eps == 0:
        return 0.0
    return 2.0 * psi * eps / (psi + eps)


def avg_diff(accuracies):
    """
    Average gap to the best method, per method.

    Args:
        accuracies: {dataset: {method: value}} or a DataFrame (rows = datasets, columns = methods)

    Returns:
        dict: {method: mean over datasets of (row max - method value)}
    """
    frame = accuracies if isinstance(accuracies, pd.DataFrame) else pd.DataFrame.from_dict(accuracies, orient="index")
    if frame.empty:
        raise DatasetFormatError("avg_diff needs at least one dataset row")
    missing = frame.isna()
    if missing.to_numpy().any():
        dataset, method = next((r, c) for r, c in zip(*np.nonzero(missing.to_numpy())))
        raise DatasetFormatError(f"Missing value for method '{frame.columns[method]}' on dataset '{frame.index[dataset]}'")

    frame = frame.astype(float)
    gaps = frame.rsub(frame.max(axis=1), axis=0)
    return {method: float(value) for method, value in gaps.mean(axis=0).items()}


def annotation_fraction(report):
    """Share of the stream whose labels were purchased"""
    return report.annotated_count / report.stream_length
