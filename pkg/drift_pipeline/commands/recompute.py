"""
recompute: HADAM per table cell, the average difference per method and the
mean annotated percentage per method, straight from published (accuracy, annotated, total) numbers.
"""

import pandas as pd

from drift_pipeline.drift_config import logger, PUBLISHED_TABLES_PATH
from drift_pipeline.drift_utils import render_sections, write_output
from drift_pipeline.exceptions import ConfigError, DatasetFormatError
from drift_pipeline.evaluation.metrics import avg_diff, hadam

REQUIRED_COLUMNS = ["dataset", "method", "accuracy", "annotated", "total"]
GROUPS = ("all", "real_world", "synthetic")


def load_tables(path=PUBLISHED_TABLES_PATH):
    """
    Read a tab-separated results table.

    Args:
        path: file with columns dataset, method, accuracy, annotated, total
              (optional: group, published_hadam)

    Returns:
        DataFrame with numeric metric columns
    """
    try:
        frame = pd.read_csv(path, sep='\t')
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DatasetFormatError(f"{path}: malformed table ({e})") from e

    missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
    if missing:
        raise DatasetFormatError(f"{path}: missing columns {missing}")
    for column in ["accuracy", "annotated", "total"] + (["published_hadam"] if "published_hadam" in frame else []):
        converted = pd.to_numeric(frame[column], errors="coerce")
        if converted.isna().any():
            row = int(converted.isna().to_numpy().nonzero()[0][0]) + 2
            raise DatasetFormatError(f"{path}: row {row} has a non-numeric {column}")
        frame[column] = converted
    if frame.duplicated(["dataset", "method"]).any():
        raise DatasetFormatError(f"{path}: duplicate (dataset, method) cells")
    return frame


def filter_group(frame, group):
    if group not in GROUPS:
        raise ConfigError(f"--group must be one of {GROUPS}, got {group}")
    if group == "all":
        return frame
    if "group" not in frame.columns:
        raise ConfigError("Table has no group column; only --group all is possible")
    return frame[frame["group"] == group]


def recompute_tables(frame):
    """
    Returns:
        (cells, averages): per-cell HADAM frame and per-method avg_diff frame
    """
    cells = frame.copy()
    try:
        cells["hadam"] = [
            hadam(acc, annotated, total)
            for acc, annotated, total in zip(cells["accuracy"], cells["annotated"], cells["total"])
        ]
    except ConfigError as e:
        raise DatasetFormatError(f"Invalid table cell: {e}") from e
    if "published_hadam" in cells.columns:
        cells["deviation"] = cells["hadam"] - cells["published_hadam"]

    matrix = cells.pivot(index="dataset", columns="method", values="accuracy")
    averages = pd.DataFrame(
        [(method, value, value * 100) for method, value in avg_diff(matrix).items()],
        columns=["method", "avg_diff", "avg_diff_points"],
    )
    return cells, averages


def annotation_summary(frame):
    """Mean and sample std of the annotated percentage per method, over datasets"""
    percent = 100.0 * frame["annotated"] / frame["total"]
    grouped = percent.groupby(frame["method"], sort=False)
    summary = pd.DataFrame({"annotated_pct_mean": grouped.mean(), "annotated_pct_std": grouped.std(ddof=1)})
    return summary.fillna({"annotated_pct_std": 0.0}).reset_index()


def cmd_recompute(path=PUBLISHED_TABLES_PATH, group="all", fmt="tsv", out=None):
    try:
        logger.info(f"🚀 Recomputing HADAM and average difference from {path} (group={group})")
        frame = filter_group(load_tables(path), group)
        if frame.empty:
            raise DatasetFormatError(f"{path}: no rows for group {group}")
        cells, averages = recompute_tables(frame)
        annotated = annotation_summary(frame)
        text = render_sections([("hadam", cells), ("avg_diff", averages), ("annotated", annotated)], fmt)
        write_output(text, out)
        logger.info(f"✅ Recomputed {len(cells)} cells over {cells['dataset'].nunique()} datasets")
        return text
    except Exception as e:
        logger.error(f"❌ Recompute failed: {e}")
        raise
