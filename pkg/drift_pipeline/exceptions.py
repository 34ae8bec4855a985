"""
Exception hierarchy for the drift pipeline.
Bad-value failures also derive from ValueError so callers can catch either.
"""


class DriftPipelineError(Exception):
    """Base class for every error raised by the package"""


class DimensionMismatchError(DriftPipelineError, ValueError):
    """Feature vector length does not match the model or stream"""


class SingleClassError(DriftPipelineError, ValueError):
    """A binary fit or metric received only one class"""


class ConfigError(DriftPipelineError, ValueError):
    """Invalid or incompatible configuration"""


class ScheduleError(ConfigError):
    """Invalid drift schedule in a stream spec"""


class DatasetFormatError(DriftPipelineError, ValueError):
    """Malformed dataset file"""


class UnsupportedFormatError(DatasetFormatError):
    """Valid file using a feature the loaders do not support"""


class SelectionError(DriftPipelineError, ValueError):
    """A selector cannot produce a retraining set from its input"""


class MissingLabelError(DriftPipelineError, ValueError):
    """A supervised update received a sample without a label"""
