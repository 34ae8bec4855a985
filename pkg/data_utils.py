"""
Data Utilities for the Drift Report Viewer
Reads finished report files (tab-separated sections) and prepares them for display
"""

import io
import os
import warnings
from decimal import Decimal, ROUND_HALF_UP

import numpy as np
import pandas as pd

from drift_pipeline.drift_config import REPORT_COLUMNS
from drift_pipeline.evaluation.harness import TRACE_COLUMNS
from drift_pipeline.evaluation.reports import SWEEP_COLUMNS, DIFFERENCE_COLUMNS

REPORT_EXTENSIONS = (".tsv", ".txt")

# Column signature of each report section
SECTION_SIGNATURES = {
    "difference": DIFFERENCE_COLUMNS,
    "sweep": SWEEP_COLUMNS,
    "runs": REPORT_COLUMNS,
}


def safe_numeric_conversion(value, default=0.0):
    """
    Safely convert a report cell to float.

    Args:
        value: Input value (string, number, or missing)
        default: Value used when conversion fails

    Returns:
        float: Converted numeric value
    """
    if value is None or (not isinstance(value, str) and pd.isna(value)):
        return default
    if isinstance(value, str):
        cleaned = value.replace(',', '').replace('%', '').strip()
        if cleaned == '' or cleaned.lower() in ['nan', 'none', 'null']:
            return default
        try:
            return float(cleaned)
        except ValueError:
            return default
    if isinstance(value, (int, float, np.integer, np.floating, Decimal)):
        return float(value)
    return default


def format_percentage(value, decimals=2):
    """
    Format a fraction in [0, 1] as a percentage string (half-up rounding).

    Args:
        value: Fraction to format
        decimals: Number of decimal places

    Returns:
        str: e.g. 0.60404 -> '60.40%'
    """
    percent = Decimal(str(safe_numeric_conversion(value))) * 100
    quantum = Decimal(1).scaleb(-decimals)
    return f"{percent.quantize(quantum, rounding=ROUND_HALF_UP)}%"


def validate_dataframe_columns(df, required_columns, numeric_columns=None):
    """
    Validate DataFrame columns and convert numeric columns.

    Missing columns raise a warning, as the viewer still shows what it can.
    """
    if df.empty:
        return df

    missing_cols = [col for col in required_columns if col not in df.columns]
    if missing_cols:
        warnings.warn(f"Missing required columns: {missing_cols}")

    if numeric_columns:
        for col in numeric_columns:
            if col in df.columns:
                df[col] = df[col].apply(safe_numeric_conversion)

    return df


def split_report_sections(text):
    """Split report text into DataFrames, one per blank-line separated section"""
    frames = []
    for chunk in text.split("\n\n"):
        if chunk.strip():
            frames.append(pd.read_csv(io.StringIO(chunk), sep='\t'))
    return frames


def classify_section(frame):
    """Name a section by its column signature, 'summary' for mean/std rows"""
    columns = list(frame.columns)
    for name, signature in SECTION_SIGNATURES.items():
        if columns == signature:
            if name == "runs" and frame["repeat"].astype(str).isin(["mean", "std"]).all():
                return "summary"
            return name
    return "unknown"


def load_report_frames(source):
    """
    Load a report file into its sections.

    Args:
        source: path or uploaded file-like object

    Returns:
        dict: section name -> DataFrame
    """
    if hasattr(source, "read"):
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    else:
        with open(source, 'r', encoding='utf-8') as handle:
            text = handle.read()

    sections = {}
    for frame in split_report_sections(text):
        name = classify_section(frame)
        if name == "unknown":
            warnings.warn(f"Skipping report section with columns {list(frame.columns)}")
            continue
        numeric = [c for c in ("accuracy", "drifts", "annotated", "total", "hadam",
                               "hadam_baseline", "hadam_suds", "difference") if c in frame.columns]
        sections[name] = validate_dataframe_columns(frame, SECTION_SIGNATURES.get(name, REPORT_COLUMNS), numeric)
    return sections


def list_report_files(directory):
    """Report files in a directory, sorted by name"""
    if not os.path.isdir(directory):
        return []
    return sorted(
        os.path.join(directory, name)
        for name in os.listdir(directory)
        if name.lower().endswith(REPORT_EXTENSIONS)
    )


def run_summary_metrics(runs):
    """
    Headline numbers for a per-run table.

    Returns:
        dict: runs, mean accuracy, mean drifts, mean annotated fraction, mean HADAM
    """
    if runs.empty:
        return {"runs": 0, "accuracy": 0.0, "drifts": 0.0, "annotated_fraction": 0.0, "hadam": 0.0}
    fraction = runs["annotated"] / runs["total"].replace(0, np.nan)
    return {
        "runs": int(len(runs)),
        "accuracy": float(runs["accuracy"].mean()),
        "drifts": float(runs["drifts"].mean()),
        "annotated_fraction": float(fraction.fillna(0.0).mean()),
        "hadam": float(runs["hadam"].mean()),
    }


def load_trace_frame(source):
    """
    Load a per-step trace written by `drift_runner run --trace`.

    Returns:
        DataFrame with boolean scored/correct/fired columns
    """
    trace = pd.read_csv(source)
    missing = [col for col in TRACE_COLUMNS if col not in trace.columns]
    if missing:
        raise ValueError(f"Not a trace file, missing columns: {missing}")
    for col in ("scored", "correct", "fired"):
        trace[col] = trace[col].astype(str).str.lower().isin(["true", "1"])
    return trace
