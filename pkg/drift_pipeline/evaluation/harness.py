"""
Prequential (interleaved test-then-train) experiment harness.

Per sample the classifier predicts first and is scored, then (in
prequential_update mode) learns the sample, then the detector steps. When the
detector fires, the selector picks the retraining set from the drift window,
those labels are purchased and a fresh classifier is trained on them.

The first round(w*rho) samples are the classifier's initial training block:
they are not scored and their labels are charged.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import pandas as pd

from drift_pipeline.drift_config import logger, HARNESS_CONFIG
from drift_pipeline.drift_utils import window_count
from drift_pipeline.exceptions import ConfigError, DimensionMismatchError
from drift_pipeline.detectors import D3Config, OCDDConfig, make_detector
from drift_pipeline.learners.hoeffding_tree import HoeffdingConfig, HoeffdingTree, train_tree
from drift_pipeline.suds.selectors import SelectionResult, SelectorConfig, check_compatible, select
from drift_pipeline.evaluation.metrics import hadam

UPDATE_MODES = ("retrain_only", "prequential_update")

TRACE_COLUMNS = ["index", "scored", "prediction", "correct", "fired", "statistic", "annotated_so_far"]


@dataclass(frozen=True)
class HarnessConfig:
    detector: Union[D3Config, OCDDConfig] = field(default_factory=D3Config)
    selector: SelectorConfig = field(default_factory=SelectorConfig)
    classifier: HoeffdingConfig = field(default_factory=HoeffdingConfig)
    update_mode: str = HARNESS_CONFIG["update_mode"]
    seed: int = HARNESS_CONFIG["seed"]
    trace: bool = HARNESS_CONFIG["trace"]

    def __post_init__(self):
        if self.update_mode not in UPDATE_MODES:
            raise ConfigError(f"update_mode must be one of {UPDATE_MODES}, got {self.update_mode}")
        check_compatible(self.selector.kind, self.detector_kind)

    @property
    def detector_kind(self):
        if isinstance(self.detector, D3Config):
            return "d3"
        if isinstance(self.detector, OCDDConfig):
            return "ocdd"
        raise ConfigError(f"Unknown detector config: {type(self.detector).__name__}")

    @property
    def initial_block(self):
        return max(window_count(self.detector.w, self.detector.rho), 1)


@dataclass(frozen=True)
class DriftEvent:
    at_index: int
    selection: SelectionResult
    statistic: float


@dataclass
class ExperimentReport:
    accuracy: float
    drift_events: Tuple[DriftEvent, ...]
    annotated_count: int
    annotated_selected: int
    stream_length: int
    hadam: float
    hadam_selected: float
    n_scored: int
    initial_block: int
    per_step_trace: Optional[pd.DataFrame] = None

    @property
    def drifts(self):
        return len(self.drift_events)

    @property
    def drift_indices(self):
        return [event.at_index for event in self.drift_events]


def run_prequential(stream, config=None):
    """
    Run one prequential experiment.

    Args:
        stream: iterable of Samples (labels present)
        config: HarnessConfig

    Returns:
        ExperimentReport
    """
    config = config or HarnessConfig()
    detector = make_detector(config.detector)
    tree = HoeffdingTree(config.classifier)
    update = config.update_mode == "prequential_update"
    block = config.initial_block

    logger.debug(f"🔄 Prequential run: detector={config.detector_kind}, selector={config.selector.kind}, "
                 f"update_mode={config.update_mode}, initial block={block}")

    dim = None
    length = correct = n_scored = 0
    purchased_initial = 0
    annotated_selected = 0
    events = []
    trace = [] if config.trace else None

    for sample in stream:
        if dim is None:
            dim = sample.dim
        elif sample.dim != dim:
            raise DimensionMismatchError(f"Stream changed dimension from {dim} to {sample.dim} at index {sample.index}")

        scored = length >= block
        prediction = -1
        hit = False
        if scored:
            prediction = tree.predict_one(sample.features)
            hit = prediction == sample.label
            correct += hit
            n_scored += 1
            if update:
                tree.learn_one(sample.features, sample.label)
        else:
            tree.learn_one(sample.features, sample.label)
            purchased_initial += 1

        decision = detector.step(sample)
        if decision.fired:
            selection = select(config.selector, decision, config.detector, drift_index=len(events))
            # labels are purchased only after selection
            tree = train_tree(selection.selected, config.classifier, dim)
            annotated_selected += selection.requested_annotations
            events.append(DriftEvent(sample.index, selection, decision.statistic))
            logger.debug(f"Drift #{len(events)} at {sample.index}: statistic={decision.statistic:.4f}, "
                         f"selected={selection.requested_annotations}, fallback={selection.fallback_used}")

        if trace is not None:
            trace.append((sample.index, scored, prediction, hit, decision.fired, decision.statistic,
                          purchased_initial + annotated_selected))
        length += 1

    if length == 0:
        raise ConfigError("Cannot run an experiment on an empty stream")

    accuracy = correct / n_scored if n_scored else 0.0
    annotated = purchased_initial + annotated_selected
    report = ExperimentReport(
        accuracy=accuracy,
        drift_events=tuple(events),
        annotated_count=annotated,
        annotated_selected=annotated_selected,
        stream_length=length,
        hadam=hadam(accuracy, annotated, length),
        hadam_selected=hadam(accuracy, annotated_selected, length),
        n_scored=n_scored,
        initial_block=purchased_initial,
        per_step_trace=pd.DataFrame(trace, columns=TRACE_COLUMNS) if trace is not None else None,
    )
    logger.debug(f"📊 Run done: accuracy={accuracy:.4f}, drifts={report.drifts}, annotated={annotated}/{length}")
    return report
