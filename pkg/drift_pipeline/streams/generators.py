"""
Synthetic drift streams with ground-truth tags.

Every generator is driven by a StreamSpec: a kind, a length, a seed, free
parameters and a drift schedule. The schedule splits the stream into concept
segments; concept_id is the segment index. Gradual transitions mix the old
and new concept per sample with a probability ramping linearly over the width.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from drift_pipeline.drift_config import logger
from drift_pipeline.exceptions import ConfigError, ScheduleError
from drift_pipeline.detectors.samples import Sample, TaggedSample

SEA_THRESHOLDS = (8.0, 9.0, 7.0, 9.5)
RBF_MODES = ("swap", "shift")

# Parameter defaults per generator kind
GENERATOR_DEFAULTS = {
    "sea": {"noise": 0.1, "thresholds": SEA_THRESHOLDS},
    "hyperplane": {"n_features": 10, "mag_change": 0.0, "noise": 0.0},
    "rbf_switch": {"k": 2, "n_features": 2, "sigma": 0.1, "spacing": 2.0, "mode": "swap", "shift": 2.0},
}


@dataclass(frozen=True)
class DriftPoint:
    at_index: int
    width: int = 0

    @property
    def is_gradual(self):
        return self.width > 0


@dataclass(frozen=True)
class StreamSpec:
    kind: str
    length: int
    seed: int = 0
    params: dict = field(default_factory=dict)
    drift_schedule: Tuple[DriftPoint, ...] = ()

    def __post_init__(self):
        if self.kind not in GENERATOR_DEFAULTS:
            raise ConfigError(f"Unknown generator kind: {self.kind}")
        if self.length < 1:
            raise ConfigError(f"Stream length must be >= 1, got {self.length}")
        unknown = set(self.params) - set(GENERATOR_DEFAULTS[self.kind])
        if unknown:
            raise ConfigError(f"Unknown {self.kind} parameters: {sorted(unknown)}")
        for name, value in self.params.items():
            check_param(self.kind, name, value)
        validate_schedule(self.drift_schedule, self.length)

    def param(self, name):
        return self.params.get(name, GENERATOR_DEFAULTS[self.kind][name])

    @property
    def n_concepts(self):
        return len(self.drift_schedule) + 1


def check_param(kind, name, value):
    """Parameters take the type of their default: text, a number, or a list of numbers"""
    default = GENERATOR_DEFAULTS[kind][name]
    if isinstance(default, str):
        if not isinstance(value, str):
            raise ConfigError(f"{kind} parameter {name} must be text, got {value!r}")
        return
    try:
        numbers = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{kind} parameter {name} must be numeric, got {value!r}") from e
    if isinstance(default, tuple) and numbers.ndim > 1:
        raise ConfigError(f"{kind} parameter {name} must be a list of numbers, got {value!r}")
    if not isinstance(default, tuple) and numbers.ndim != 0:
        raise ConfigError(f"{kind} parameter {name} must be a single number, got {value!r}")
    if not np.isfinite(numbers).all():
        raise ConfigError(f"{kind} parameter {name} must be finite, got {value!r}")


def validate_schedule(schedule, length):
    previous_end = 0
    for point in schedule:
        if point.width < 0:
            raise ScheduleError(f"Drift width must be >= 0, got {point.width}")
        if not 0 < point.at_index < length:
            raise ScheduleError(f"Drift index {point.at_index} outside stream of length {length}")
        if point.at_index < previous_end:
            raise ScheduleError(f"Drift at {point.at_index} starts before the previous transition ends at {previous_end}")
        previous_end = point.at_index + max(point.width, 1)


def concept_at(schedule, t, rng):
    """Concept segment of sample t; draws once from rng inside a gradual transition"""
    concept = 0
    for k, point in enumerate(schedule):
        if t < point.at_index:
            break
        if t >= point.at_index + point.width:
            concept = k + 1
            continue
        probability = (t - point.at_index) / point.width
        if rng.random() < probability:
            concept = k + 1
        break
    return concept


def gen_sea(spec):
    """
    SEA concepts: three features in [0, 10], label = [f1 + f2 <= threshold].

    Thresholds cycle when there are more segments than thresholds, so a long
    schedule yields recurring concepts. Flipped labels are tagged as noise.
    """
    noise = float(spec.param("noise"))
    thresholds = tuple(float(v) for v in np.atleast_1d(spec.param("thresholds")))
    if not 0 <= noise < 1:
        raise ConfigError(f"SEA noise must be in [0, 1), got {noise}")
    if not thresholds:
        raise ConfigError("SEA needs at least one threshold")

    rng = np.random.default_rng(spec.seed)
    for t in range(spec.length):
        concept = concept_at(spec.drift_schedule, t, rng)
        x = rng.uniform(0.0, 10.0, 3)
        label = int(x[0] + x[1] <= thresholds[concept % len(thresholds)])
        is_noise = bool(rng.random() < noise)
        if is_noise:
            label = 1 - label
        yield TaggedSample(Sample(x, label, t), concept, is_noise)


def hyperplane_label(weights, x):
    """1 when w.x >= sum(w)/2; points on the hyperplane are positive"""
    return int(np.dot(weights, x) >= 0.5 * np.sum(weights))


def drift_weights(weights, directions, rate):
    """Move weights by rate along directions, reflecting off the [0, 1] bounds"""
    moved = weights + rate * directions
    over, under = moved > 1.0, moved < 0.0
    moved = np.where(over, 2.0 - moved, np.where(under, -moved, moved))
    directions = np.where(over | under, -directions, directions)
    return np.clip(moved, 0.0, 1.0), directions


def gen_hyperplane(spec):
    """
    Rotating hyperplane in [0, 1]^d.

    Weights start at one and move by mag_change per sample along per-feature
    directions, bouncing between 0 and 1; each scheduled checkpoint draws new
    directions and starts a new concept segment. The threshold follows the
    weights at sum(w)/2, so the classes stay balanced while the plane turns.
    """
    d = int(spec.param("n_features"))
    rate = float(spec.param("mag_change"))
    noise = float(spec.param("noise"))
    if d < 2:
        raise ConfigError(f"Hyperplane needs at least 2 features, got {d}")
    if rate < 0:
        raise ConfigError(f"Hyperplane mag_change must be >= 0, got {rate}")
    if not 0 <= noise < 1:
        raise ConfigError(f"Hyperplane noise must be in [0, 1), got {noise}")
    if any(point.is_gradual for point in spec.drift_schedule):
        raise ScheduleError("Hyperplane checkpoints are instantaneous; width must be 0")

    rng = np.random.default_rng(spec.seed)
    checkpoints = {point.at_index for point in spec.drift_schedule}
    weights = np.ones(d)
    directions = rng.choice([-1.0, 1.0], size=d)
    concept = 0
    for t in range(spec.length):
        if t in checkpoints:
            concept += 1
            directions = rng.choice([-1.0, 1.0], size=d)
        x = rng.uniform(0.0, 1.0, d)
        label = hyperplane_label(weights, x)
        is_noise = bool(rng.random() < noise)
        if is_noise:
            label = 1 - label
        yield TaggedSample(Sample(x, label, t), concept, is_noise)
        weights, directions = drift_weights(weights, directions, rate)


def rbf_centers(k, n_features, spacing):
    centers = np.zeros((k, n_features))
    centers[:, 0] = np.arange(k) * spacing
    return centers


def gen_rbf_switch(spec):
    """
    Gaussian clusters whose meaning changes at each drift.

    swap: the center-to-class assignment rotates, P(X) stays the same.
    shift: every center moves by `shift` along the second axis, P(X) changes.
    """
    k = int(spec.param("k"))
    d = int(spec.param("n_features"))
    sigma = float(spec.param("sigma"))
    spacing = float(spec.param("spacing"))
    mode = spec.param("mode")
    shift = float(spec.param("shift"))
    if k < 2:
        raise ConfigError(f"rbf_switch needs at least 2 centers, got {k}")
    if d < 2:
        raise ConfigError(f"rbf_switch needs at least 2 features, got {d}")
    if mode not in RBF_MODES:
        raise ConfigError(f"rbf_switch mode must be one of {RBF_MODES}, got {mode}")
    if not sigma > 0:
        raise ConfigError(f"rbf_switch sigma must be > 0, got {sigma}")

    centers = rbf_centers(k, d, spacing)
    rng = np.random.default_rng(spec.seed)
    for t in range(spec.length):
        concept = concept_at(spec.drift_schedule, t, rng)
        j = int(rng.integers(k))
        center = centers[j].copy()
        if mode == "swap":
            label = (j + concept) % 2
        else:
            label = j % 2
            center[1] += concept * shift
        x = center + rng.normal(0.0, sigma, d)
        yield TaggedSample(Sample(x, label, t), concept, False)


GENERATORS = {
    "sea": gen_sea,
    "hyperplane": gen_hyperplane,
    "rbf_switch": gen_rbf_switch,
}


def make_stream(spec):
    logger.debug(f"Generating {spec.kind} stream: length={spec.length}, seed={spec.seed}, drifts={len(spec.drift_schedule)}")
    return GENERATORS[spec.kind](spec)


def strip_tags(stream):
    """Plain Samples for detectors and selectors"""
    for tagged in stream:
        yield tagged.sample


def _parse_value(raw):
    if "," in raw:
        try:
            return tuple(float(v) for v in raw.split(",") if v.strip())
        except ValueError as e:
            raise ConfigError(f"Invalid number list '{raw}'") from e
    for cast in (int, float):
        try:
            return cast(raw)
        except ValueError:
            continue
    return raw


def parse_schedule(text):
    """'5000,12000@500' -> abrupt drift at 5000, gradual drift of width 500 at 12000"""
    schedule = []
    for token in filter(None, (t.strip() for t in text.split(","))):
        at, _, width = token.partition("@")
        try:
            schedule.append(DriftPoint(int(at), int(width) if width else 0))
        except ValueError as e:
            raise ScheduleError(f"Invalid drift token '{token}'") from e
    return tuple(schedule)


def parse_generator_spec(text, seed=None):
    """
    Parse 'kind;key=value;...' into a StreamSpec.

    'length', 'seed' and 'drifts' are spec fields; every other key is a
    generator parameter. An explicit seed argument wins over the text.
    """
    parts = [p.strip() for p in text.strip().split(";") if p.strip()]
    if not parts:
        raise ConfigError("Empty generator spec")
    kind, values = parts[0], {}
    for part in parts[1:]:
        if "=" not in part:
            raise ConfigError(f"Generator spec entry '{part}' is not key=value")
        key, value = part.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()

    try:
        length = int(values.pop("length"))
    except KeyError as e:
        raise ConfigError("Generator spec needs a length") from e
    except ValueError as e:
        raise ConfigError(f"Invalid generator length: {e}") from e
    try:
        text_seed = int(values.pop("seed", 0))
    except ValueError as e:
        raise ConfigError(f"Invalid generator seed: {e}") from e
    schedule = parse_schedule(values.pop("drifts", ""))
    params = {key: _parse_value(value) for key, value in values.items()}
    return StreamSpec(kind, length, text_seed if seed is None else int(seed), params, schedule)


def _format_value(value):
    if isinstance(value, (tuple, list)):
        return ",".join(f"{v:g}" for v in value)
    return str(value)


def format_generator_spec(spec):
    parts = [spec.kind, f"length={spec.length}", f"seed={spec.seed}"]
    parts.extend(f"{key}={_format_value(value)}" for key, value in sorted(spec.params.items()))
    if spec.drift_schedule:
        drifts = ",".join(f"{p.at_index}@{p.width}" if p.width else str(p.at_index) for p in spec.drift_schedule)
        parts.append(f"drifts={drifts}")
    return ";".join(parts)
