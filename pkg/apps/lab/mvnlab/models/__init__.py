"""
Data models for experiment requests and their reports.

Architecture:
- experiment.py: the validated run request
- reports.py: CSV-serializable report tables (metrics, properties, coherence)
"""

from .experiment import Command, ExperimentConfig
from .reports import (
    CoherenceReport,
    CoherenceRow,
    CsvReport,
    MetricReport,
    MetricRow,
    MetricVerdict,
    PropertyReport,
    PropertyRow,
    PropertyVerdict,
    csv_field,
)

__all__ = [
    # Requests
    "Command",
    "ExperimentConfig",
    # Reports
    "CsvReport",
    "MetricVerdict",
    "PropertyVerdict",
    "MetricRow",
    "MetricReport",
    "PropertyRow",
    "PropertyReport",
    "CoherenceRow",
    "CoherenceReport",
    "csv_field",
]
