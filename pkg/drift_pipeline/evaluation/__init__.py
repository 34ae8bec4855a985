from drift_pipeline.evaluation.metrics import hadam, avg_diff, annotation_fraction
from drift_pipeline.evaluation.harness import (
    UPDATE_MODES, HarnessConfig, DriftEvent, ExperimentReport, run_prequential,
)
from drift_pipeline.evaluation.reports import (
    report_row, summarize_rows, summarize_sweep, hadam_difference,
)
