import numpy as np
from scipy.stats import rankdata

from drift_pipeline.exceptions import DimensionMismatchError, SingleClassError


def auc(scores, labels):
    """
    Area under the ROC curve via the Mann-Whitney rank statistic.

    Tied scores get average ranks, so each tied positive/negative pair counts 0.5.

    Args:
        scores: real scores, higher means more likely positive
        labels: binary labels (1 = positive)

    Returns:
        float in [0, 1]
    """
    scores = np.asarray(scores, dtype=float).reshape(-1)
    labels = np.asarray(labels).reshape(-1)
    if len(scores) != len(labels):
        raise DimensionMismatchError(f"{len(scores)} scores but {len(labels)} labels")
    positive = labels == 1
    n_pos = int(positive.sum())
    n_neg = len(labels) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise SingleClassError("AUC needs both classes present")

    ranks = rankdata(scores)
    u_stat = ranks[positive].sum() - n_pos * (n_pos + 1) / 2.0
    return float(u_stat / (n_pos * n_neg))
