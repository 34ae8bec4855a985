"""
Dataset loaders for benchmark drift streams.

Row order is stream order and is preserved. The label is the last column;
labels map to dense integer ids in first-seen order (CSV) or declared order
(ARFF nominal class).
"""

import io
import os
import re
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np
import pandas as pd
from scipy.io import arff

from drift_pipeline.drift_config import logger
from drift_pipeline.exceptions import DatasetFormatError, UnsupportedFormatError
from drift_pipeline.detectors.samples import Sample

DATASET_FORMATS = ("csv", "arff")

ATTRIBUTE_PATTERN = re.compile(r"^\s*@attribute\s+('[^']*'|\"[^\"]*\"|\S+)\s+(.+?)\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class DatasetFile:
    path: str
    format: str = "csv"
    header: bool = False

    @classmethod
    def from_path(cls, path, header=False):
        extension = os.path.splitext(path)[1].lower().lstrip(".")
        return cls(path, "arff" if extension == "arff" else "csv", header)


@dataclass(frozen=True)
class LoadedStream:
    samples: Tuple[Sample, ...]
    class_map: Dict[str, int] = field(default_factory=dict)
    n_features: int = 0
    name: str = ""

    def __len__(self):
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)


def _dataset_name(path):
    return os.path.splitext(os.path.basename(path))[0]


def load_csv(file):
    """
    Load a comma-separated stream, label in the last column.

    Args:
        file: DatasetFile or path (no header)

    Returns:
        LoadedStream with labels as dense ids in first-seen order
    """
    if isinstance(file, str):
        file = DatasetFile(file, "csv")
    try:
        frame = pd.read_csv(file.path, header=0 if file.header else None, dtype=str,
                            keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError as e:
        raise DatasetFormatError(f"{file.path}: empty file") from e
    except pd.errors.ParserError as e:
        raise DatasetFormatError(f"{file.path}: ragged rows ({e})") from e

    if frame.empty:
        raise DatasetFormatError(f"{file.path}: no data rows")
    if frame.shape[1] < 2:
        raise DatasetFormatError(f"{file.path}: needs at least one feature column and a label column")

    first_row = 2 if file.header else 1
    blank = (frame.isna() | (frame == "")).to_numpy()
    if blank.any():
        row, column = np.argwhere(blank)[0]
        raise DatasetFormatError(f"{file.path}: row {row + first_row} has a missing value in column {column + 1}")

    features = frame.iloc[:, :-1].apply(pd.to_numeric, errors="coerce")
    bad = features.isna().to_numpy()
    if bad.any():
        row, column = np.argwhere(bad)[0]
        cell = frame.iat[row, column]
        raise DatasetFormatError(f"{file.path}: row {row + first_row} column {column + 1} is not numeric: '{cell}'")

    class_map = {}
    for label in frame.iloc[:, -1]:
        class_map.setdefault(label, len(class_map))
    labels = frame.iloc[:, -1].map(class_map).to_numpy()

    X = features.to_numpy(dtype=float)
    samples = tuple(Sample(X[i], int(labels[i]), i) for i in range(len(X)))
    logger.info(f"📌 Loaded {len(samples)} rows, {X.shape[1]} features, {len(class_map)} classes from {file.path}")
    return LoadedStream(samples, class_map, X.shape[1], _dataset_name(file.path))


def _scan_arff(text, path):
    """Reject declared-but-unsupported constructs before handing the file to scipy"""
    in_data = False
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if in_data:
            if line.startswith("{"):
                raise UnsupportedFormatError(f"{path}:{line_number}: sparse ARFF data is not supported")
            continue
        if line.lower().startswith("@data"):
            in_data = True
            continue
        match = ATTRIBUTE_PATTERN.match(line)
        if match:
            kind = match.group(2).split()[0].lower()
            if kind in ("string", "date", "relational"):
                raise UnsupportedFormatError(f"{path}:{line_number}: {kind} attributes are not supported")
    if not in_data:
        raise DatasetFormatError(f"{path}: missing @data section")


def _decode(value):
    return value.decode("utf-8") if isinstance(value, bytes) else str(value)


def load_arff(file):
    """
    Load a dense ARFF stream: numeric and nominal attributes, nominal class last.

    Nominal features are one-hot encoded in declared value order. Class ids
    follow the declared order of the class attribute.
    """
    path = file.path if isinstance(file, DatasetFile) else file
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    _scan_arff(text, path)

    try:
        data, meta = arff.loadarff(io.StringIO(text))
    except NotImplementedError as e:
        raise UnsupportedFormatError(f"{path}: {e}") from e
    except (arff.ArffError, ValueError, IndexError) as e:
        raise DatasetFormatError(f"{path}: malformed ARFF ({e})") from e

    names = meta.names()
    types = meta.types()
    if len(names) < 2:
        raise DatasetFormatError(f"{path}: needs at least one feature attribute and a class attribute")
    if types[-1] != "nominal":
        raise DatasetFormatError(f"{path}: class attribute '{names[-1]}' must be nominal")
    if len(data) == 0:
        raise DatasetFormatError(f"{path}: no data rows")

    columns = []
    for name, kind in zip(names[:-1], types[:-1]):
        values = data[name]
        if kind == "numeric":
            column = np.asarray(values, dtype=float)
            if np.isnan(column).any():
                row = int(np.flatnonzero(np.isnan(column))[0]) + 1
                raise DatasetFormatError(f"{path}: data row {row} has a missing value for '{name}'")
            columns.append(column.reshape(-1, 1))
        elif kind == "nominal":
            declared = list(meta[name][1])
            decoded = [_decode(v) for v in values]
            if "?" in decoded:
                row = decoded.index("?") + 1
                raise DatasetFormatError(f"{path}: data row {row} has a missing value for '{name}'")
            one_hot = np.zeros((len(decoded), len(declared)))
            one_hot[np.arange(len(decoded)), [declared.index(v) for v in decoded]] = 1.0
            columns.append(one_hot)
        else:
            raise UnsupportedFormatError(f"{path}: {kind} attribute '{name}' is not supported")

    class_name = names[-1]
    class_map = {value: i for i, value in enumerate(meta[class_name][1])}
    raw_labels = [_decode(v) for v in data[class_name]]
    if "?" in raw_labels:
        raise DatasetFormatError(f"{path}: data row {raw_labels.index('?') + 1} has no class label")

    X = np.hstack(columns)
    samples = tuple(Sample(X[i], class_map[raw_labels[i]], i) for i in range(len(X)))
    logger.info(f"📌 Loaded {len(samples)} rows, {X.shape[1]} encoded features, {len(class_map)} classes from {path}")
    return LoadedStream(samples, class_map, X.shape[1], _dataset_name(path))


def load_dataset(file):
    """Dispatch on DatasetFile.format"""
    if file.format not in DATASET_FORMATS:
        raise UnsupportedFormatError(f"Unknown dataset format: {file.format}, expected one of {DATASET_FORMATS}")
    if file.format == "arff":
        return load_arff(file)
    return load_csv(file)
