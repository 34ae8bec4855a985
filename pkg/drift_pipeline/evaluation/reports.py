"""
Flat report rows and their summaries.
"""

from drift_pipeline.drift_config import REPORT_COLUMNS
from drift_pipeline.drift_utils import records_frame
from drift_pipeline.evaluation.metrics import hadam

GROUP_COLUMNS = ["dataset", "detector", "selector", "w", "rho", "tau_or_nu"]
METRIC_COLUMNS = ["accuracy", "drifts", "annotated", "total", "hadam"]

SWEEP_COLUMNS = GROUP_COLUMNS + ["runs", "accuracy", "annotated", "total", "hadam"]
DIFFERENCE_COLUMNS = ["dataset", "detector", "w", "rho", "tau_or_nu", "hadam_baseline", "hadam_suds", "difference"]


def report_row(report, dataset, config, repeat):
    """
    Flatten an ExperimentReport into the report row schema.

    Args:
        report: ExperimentReport
        dataset: dataset or generator name
        config: HarnessConfig used for the run
        repeat: repeat index

    Returns:
        dict keyed by REPORT_COLUMNS
    """
    detector = config.detector
    threshold = detector.tau if config.detector_kind == "d3" else detector.nu
    return {
        "dataset": dataset,
        "detector": config.detector_kind,
        "selector": "suds" if config.selector.is_suds else "baseline",
        "w": detector.w,
        "rho": detector.rho,
        "tau_or_nu": threshold,
        "repeat": repeat,
        "accuracy": report.accuracy,
        "drifts": report.drifts,
        "annotated": report.annotated_count,
        "total": report.stream_length,
        "hadam": report.hadam,
    }


def summarize_rows(rows):
    """
    A 'mean' and a 'std' row per configuration, in the report row schema.

    The standard deviation is the sample one (ddof=1); a single repeat gives 0.
    """
    frame = records_frame(rows, REPORT_COLUMNS)
    summary = []
    for _, runs in frame.groupby(GROUP_COLUMNS, sort=False):
        head = runs.iloc[0][GROUP_COLUMNS].to_dict()
        metrics = runs[METRIC_COLUMNS].astype(float)
        summary.append({**head, "repeat": "mean", **metrics.mean().to_dict()})
        summary.append({**head, "repeat": "std", **metrics.std(ddof=1).fillna(0.0).to_dict()})
    return records_frame(summary, REPORT_COLUMNS)


def summarize_sweep(rows):
    """
    One row per configuration: mean accuracy, mean annotated count, and HADAM
    of those means.
    """
    frame = records_frame(rows, REPORT_COLUMNS)
    summary = (
        frame.groupby(GROUP_COLUMNS, sort=False)
        .agg(runs=("repeat", "size"), accuracy=("accuracy", "mean"),
             annotated=("annotated", "mean"), total=("total", "first"))
        .reset_index()
    )
    summary["hadam"] = [
        hadam(acc, annotated, total)
        for acc, annotated, total in zip(summary["accuracy"], summary["annotated"], summary["total"])
    ]
    return summary[SWEEP_COLUMNS]


def hadam_difference(summary):
    """SUDS minus baseline HADAM for every configuration present with both selectors"""
    keys = ["dataset", "detector", "w", "rho", "tau_or_nu"]
    baseline = summary[summary["selector"] == "baseline"][keys + ["hadam"]]
    suds = summary[summary["selector"] == "suds"][keys + ["hadam"]]
    merged = baseline.merge(suds, on=keys, suffixes=("_baseline", "_suds"), sort=False)
    merged["difference"] = merged["hadam_suds"] - merged["hadam_baseline"]
    return merged[DIFFERENCE_COLUMNS]
