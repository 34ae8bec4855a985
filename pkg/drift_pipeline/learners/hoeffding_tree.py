"""
Hoeffding tree (VFDT) for numeric features.

Leaves keep per-class counts and per-class Gaussian summaries of every
feature. Every grace_period samples a leaf scores candidate thresholds
with the Gaussian estimates and splits when the Hoeffding bound separates
the best two candidates, or when the bound falls under the tie threshold.

Leaves predict by majority class ("mc"), by naive Bayes over the same
Gaussian summaries ("nb"), or adaptively ("nba"): each leaf counts how often
either rule would have been right on the samples it learned from and uses
the better one, majority winning ties.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import norm

from drift_pipeline.drift_config import logger, HOEFFDING_CONFIG
from drift_pipeline.exceptions import ConfigError, DimensionMismatchError, MissingLabelError

SPLIT_CRITERIA = ("gini", "info_gain")
LEAF_PREDICTIONS = ("mc", "nb", "nba")
NB_STD_FLOOR = 1e-6


@dataclass(frozen=True)
class HoeffdingConfig:
    grace_period: int = HOEFFDING_CONFIG["grace_period"]
    split_confidence: float = HOEFFDING_CONFIG["split_confidence"]
    tie_threshold: float = HOEFFDING_CONFIG["tie_threshold"]
    max_depth: Optional[int] = HOEFFDING_CONFIG["max_depth"]
    split_criterion: str = HOEFFDING_CONFIG["split_criterion"]
    n_split_points: int = HOEFFDING_CONFIG["n_split_points"]
    default_class: int = HOEFFDING_CONFIG["default_class"]
    leaf_prediction: str = HOEFFDING_CONFIG["leaf_prediction"]

    def __post_init__(self):
        if self.leaf_prediction not in LEAF_PREDICTIONS:
            raise ConfigError(f"leaf_prediction must be one of {LEAF_PREDICTIONS}, got {self.leaf_prediction}")
        if self.grace_period < 1:
            raise ConfigError(f"grace_period must be >= 1, got {self.grace_period}")
        if not 0 < self.split_confidence < 1:
            raise ConfigError(f"split_confidence must be in (0, 1), got {self.split_confidence}")
        if self.tie_threshold < 0:
            raise ConfigError(f"tie_threshold must be >= 0, got {self.tie_threshold}")
        if self.max_depth is not None and self.max_depth < 0:
            raise ConfigError(f"max_depth must be >= 0, got {self.max_depth}")
        if self.split_criterion not in SPLIT_CRITERIA:
            raise ConfigError(f"split_criterion must be one of {SPLIT_CRITERIA}, got {self.split_criterion}")
        if self.n_split_points < 1:
            raise ConfigError(f"n_split_points must be >= 1, got {self.n_split_points}")


class GaussianSummary:
    """Running mean/variance/min/max of a feature vector for one class (Welford)"""

    def __init__(self, dim):
        self.count = 0
        self.mean = np.zeros(dim)
        self.m2 = np.zeros(dim)
        self.min = np.full(dim, np.inf)
        self.max = np.full(dim, -np.inf)

    def update(self, x):
        self.count += 1
        delta = x - self.mean
        self.mean = self.mean + delta / self.count
        self.m2 = self.m2 + delta * (x - self.mean)
        self.min = np.minimum(self.min, x)
        self.max = np.maximum(self.max, x)

    @property
    def std(self):
        if self.count < 2:
            return np.zeros_like(self.mean)
        return np.sqrt(self.m2 / (self.count - 1))

    def weight_below(self, feature, thresholds):
        """Estimated number of samples with value <= threshold"""
        mean = self.mean[feature]
        std = self.std[feature]
        if std == 0:
            return np.where(mean <= thresholds, float(self.count), 0.0)
        return self.count * norm.cdf(thresholds, loc=mean, scale=std)


def gini_impurity(counts):
    counts = np.asarray(counts, dtype=float)
    total = counts.sum(axis=-1, keepdims=True)
    with np.errstate(invalid='ignore', divide='ignore'):
        p = np.where(total > 0, counts / total, 0.0)
    return 1.0 - (p ** 2).sum(axis=-1)


def entropy(counts):
    counts = np.asarray(counts, dtype=float)
    total = counts.sum(axis=-1, keepdims=True)
    with np.errstate(invalid='ignore', divide='ignore'):
        p = np.where(total > 0, counts / total, 0.0)
        logs = np.where(p > 0, np.log2(p), 0.0)
    return -(p * logs).sum(axis=-1)


def hoeffding_bound(value_range, confidence, n):
    """epsilon = sqrt(R^2 ln(1/delta) / (2n))"""
    return math.sqrt(value_range ** 2 * math.log(1.0 / confidence) / (2.0 * n))


class LeafNode:
    def __init__(self, dim, depth=0, prior=None):
        self.depth = depth
        self.class_counts = {}
        self.summaries = {}
        self.prior = dict(prior or {})
        self.dim = dim
        self.n_seen = 0
        self.seen_at_last_attempt = 0
        self.mc_correct = 0
        self.nb_correct = 0

    def is_leaf(self):
        return True

    def learn(self, x, y):
        if self.n_seen:
            self.mc_correct += int(self.majority_class(y) == y)
            self.nb_correct += int(self.naive_bayes_class(x, y) == y)
        self.class_counts[y] = self.class_counts.get(y, 0) + 1
        if y not in self.summaries:
            self.summaries[y] = GaussianSummary(self.dim)
        self.summaries[y].update(x)
        self.n_seen += 1

    def majority_class(self, default_class):
        counts = self.class_counts if self.n_seen else self.prior
        if not counts:
            return default_class
        best = max(counts.values())
        return min(c for c, v in counts.items() if v == best)

    def naive_bayes_class(self, x, default_class):
        """Class maximising log prior + Gaussian log likelihood of each feature"""
        if len(self.summaries) < 2:
            return self.majority_class(default_class)
        classes = sorted(self.summaries)
        scores = []
        for c in classes:
            summary = self.summaries[c]
            std = np.maximum(summary.std, NB_STD_FLOOR)
            log_prior = math.log(summary.count / self.n_seen)
            z = (x - summary.mean) / std
            scores.append(log_prior - float(np.sum(0.5 * z * z + np.log(std))))
        return classes[int(np.argmax(scores))]

    def predict(self, x, mode, default_class):
        if mode == "nb" or (mode == "nba" and self.nb_correct > self.mc_correct):
            return self.naive_bayes_class(x, default_class)
        return self.majority_class(default_class)


class SplitNode:
    def __init__(self, feature, threshold, left, right, depth):
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right
        self.depth = depth

    def is_leaf(self):
        return False

    def route(self, x):
        return self.left if x[self.feature] <= self.threshold else self.right


class HoeffdingTree:
    """Incremental decision tree; learn_one mutates, predict_one never does"""

    def __init__(self, config=None, n_features=None):
        self.config = config or HoeffdingConfig()
        self.root = None
        self.dim = n_features
        self.n_splits = 0

    def _check_dim(self, x):
        x = np.asarray(x, dtype=float).reshape(-1)
        if self.dim is not None and len(x) != self.dim:
            raise DimensionMismatchError(f"Expected {self.dim} features, got {len(x)}")
        return x

    def _sort(self, x):
        node = self.root
        while not node.is_leaf():
            node = node.route(x)
        return node

    def learn_one(self, x, y):
        if y is None:
            raise MissingLabelError("Hoeffding tree cannot learn from an unlabeled sample")
        x = self._check_dim(x)
        if self.root is None:
            self.dim = len(x)
            self.root = LeafNode(self.dim)
        leaf = self._sort(x)
        leaf.learn(x, int(y))
        if leaf.n_seen - leaf.seen_at_last_attempt >= self.config.grace_period:
            leaf.seen_at_last_attempt = leaf.n_seen
            self._attempt_split(leaf)
        return self

    def predict_one(self, x):
        x = self._check_dim(x)
        if self.root is None:
            return self.config.default_class
        leaf = self._sort(x)
        return leaf.predict(x, self.config.leaf_prediction, self.config.default_class)

    def _impurity(self, counts):
        if self.config.split_criterion == "gini":
            return gini_impurity(counts)
        return entropy(counts)

    def _value_range(self, n_classes):
        if self.config.split_criterion == "gini":
            return 1.0
        return math.log2(max(n_classes, 2))

    def _best_split_for_feature(self, leaf, feature, classes, parent_impurity):
        lows = [leaf.summaries[c].min[feature] for c in classes]
        highs = [leaf.summaries[c].max[feature] for c in classes]
        low, high = min(lows), max(highs)
        if not high > low:
            return 0.0, None
        thresholds = np.linspace(low, high, self.config.n_split_points + 2)[1:-1]

        left = np.stack([leaf.summaries[c].weight_below(feature, thresholds) for c in classes], axis=1)
        totals = np.array([leaf.class_counts[c] for c in classes], dtype=float)
        right = np.clip(totals - left, 0.0, None)
        n_left = left.sum(axis=1)
        n_right = right.sum(axis=1)
        n = n_left + n_right
        children = (n_left * self._impurity(left) + n_right * self._impurity(right)) / n
        merits = parent_impurity - children
        best = int(np.argmax(merits))
        return float(merits[best]), float(thresholds[best])

    def _attempt_split(self, leaf):
        cfg = self.config
        if len(leaf.class_counts) < 2:
            return
        if cfg.max_depth is not None and leaf.depth >= cfg.max_depth:
            return

        classes = sorted(leaf.class_counts)
        parent = float(self._impurity([leaf.class_counts[c] for c in classes]))
        candidates = []
        for feature in range(leaf.dim):
            merit, threshold = self._best_split_for_feature(leaf, feature, classes, parent)
            if threshold is not None:
                candidates.append((merit, feature, threshold))
        if not candidates:
            return
        candidates.sort(key=lambda item: (-item[0], item[1]))
        best_merit, feature, threshold = candidates[0]
        second_merit = candidates[1][0] if len(candidates) > 1 else 0.0
        if best_merit <= 0:
            return

        epsilon = hoeffding_bound(self._value_range(len(classes)), cfg.split_confidence, leaf.n_seen)
        if best_merit - second_merit > epsilon or epsilon < cfg.tie_threshold:
            self._split(leaf, feature, threshold, classes)

    def _split(self, leaf, feature, threshold, classes):
        left_prior, right_prior = {}, {}
        for c in classes:
            below = float(leaf.summaries[c].weight_below(feature, np.array([threshold]))[0])
            left_prior[c] = below
            right_prior[c] = max(leaf.class_counts[c] - below, 0.0)
        depth = leaf.depth + 1
        node = SplitNode(
            feature, threshold,
            LeafNode(leaf.dim, depth, left_prior),
            LeafNode(leaf.dim, depth, right_prior),
            leaf.depth,
        )
        self._replace(leaf, node)
        self.n_splits += 1
        logger.debug(f"Hoeffding split on feature {feature} at {threshold:.4f} (depth {depth}, n={leaf.n_seen})")

    def _replace(self, old, new):
        if self.root is old:
            self.root = new
            return
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf():
                continue
            if node.left is old:
                node.left = new
                return
            if node.right is old:
                node.right = new
                return
            stack.extend([node.left, node.right])

    def _leaves(self):
        if self.root is None:
            return []
        leaves, stack = [], [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf():
                leaves.append(node)
            else:
                stack.extend([node.left, node.right])
        return leaves

    @property
    def n_leaves(self):
        return len(self._leaves())

    @property
    def depth(self):
        return max((leaf.depth for leaf in self._leaves()), default=0)


def hoeffding_learn_one(tree, sample):
    """Update the tree with one labeled Sample"""
    return tree.learn_one(sample.features, sample.label)


def hoeffding_predict_one(tree, x):
    return tree.predict_one(x)


def train_tree(samples, config=None, n_features=None):
    """Fresh tree trained on labeled samples in order"""
    tree = HoeffdingTree(config, n_features)
    for sample in samples:
        hoeffding_learn_one(tree, sample)
    return tree
