"""Unsupervised concept-drift detection with homogeneous retraining-sample selection."""

__version__ = "0.1.0"
