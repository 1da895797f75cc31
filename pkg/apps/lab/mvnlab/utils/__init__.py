"""
Shared utilities.

- observability.py: stderr logging, structured extras, run IDs
- config_loader.py: bundled experiment defaults and user experiment files

``ExperimentConfigLoader`` depends on the models package, so it is imported from
``mvnlab.utils.config_loader`` directly rather than re-exported here.
"""

from .observability import JsonExtraFormatter, Observability

__all__ = [
    "Observability",
    "JsonExtraFormatter",
]
