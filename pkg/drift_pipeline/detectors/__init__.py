from drift_pipeline.detectors.samples import Sample, TaggedSample, SlidingWindow, DriftDecision
from drift_pipeline.detectors.auc import auc
from drift_pipeline.detectors.d3 import D3Config, D3Detector, d3_step
from drift_pipeline.detectors.ocdd import OCDDConfig, OCDDDetector, ocdd_step

DETECTOR_KINDS = ("d3", "ocdd")


def make_detector(config):
    """Build the detector matching a D3Config or OCDDConfig"""
    if isinstance(config, D3Config):
        return D3Detector(config)
    if isinstance(config, OCDDConfig):
        return OCDDDetector(config)
    raise TypeError(f"Unknown detector config: {type(config).__name__}")
