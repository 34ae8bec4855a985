"""
Stream elements, the sliding window detectors keep, and the per-step decision
record they hand back to the harness.
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np


class Sample:
    """One stream element: feature vector, optional label, stream position"""

    __slots__ = ("features", "_label", "index")

    def __init__(self, features, label=None, index=0):
        self.features = np.asarray(features, dtype=float).reshape(-1)
        self._label = label
        self.index = int(index)

    @property
    def label(self):
        return self._label

    @property
    def dim(self):
        return len(self.features)

    def __repr__(self):
        return f"Sample(index={self.index}, dim={self.dim}, label={self._label!r})"


@dataclass(frozen=True)
class TaggedSample:
    """Sample plus ground-truth tags; tags stay on the evaluation side"""
    sample: Sample
    concept_id: int
    is_noise: bool = False


class SlidingWindow:
    """Bounded FIFO of samples in arrival order"""

    def __init__(self, capacity):
        self.capacity = int(capacity)
        self._items = deque()

    def __len__(self):
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def push(self, sample):
        """Append a sample; returns the evicted oldest sample when over capacity"""
        self._items.append(sample)
        if len(self._items) > self.capacity:
            return self._items.popleft()
        return None

    def drop_oldest(self, count):
        for _ in range(min(count, len(self._items))):
            self._items.popleft()

    def is_full(self):
        return len(self._items) >= self.capacity

    def head(self, count):
        return tuple(self._items)[:count]

    def tail(self, count):
        if count <= 0:
            return ()
        return tuple(self._items)[-count:]

    def snapshot(self):
        return tuple(self._items)

    def features(self):
        return np.vstack([s.features for s in self._items])

    def clear(self):
        self._items.clear()


@dataclass(frozen=True)
class DriftDecision:
    fired: bool
    statistic: float
    window_snapshot: Tuple[Sample, ...] = ()
    checked: bool = False
    outlier_flags: Tuple[bool, ...] = field(default_factory=tuple)
