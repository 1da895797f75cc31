"""Settings and bundled experiment defaults."""

from mvnlab.config.settings import LabSettings, get_settings

__all__ = ["LabSettings", "get_settings"]
