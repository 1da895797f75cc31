"""
Unit tests for the environment settings (mvnlab.config.settings).
"""

import pytest
from pydantic import ValidationError

import mvnlab.config
import mvnlab.config.settings
from mvnlab.config.settings import LabSettings, get_settings


class TestLabSettings:
    """Test that settings are read from the environment at call time."""

    def test_get_settings_rereads_environment(self, monkeypatch):
        """A variable set after import is seen by the next call."""
        monkeypatch.setenv("MVNLAB_THREADS", "3")
        monkeypatch.setenv("MVNLAB_DEFAULT_TOL", "1e-6")
        settings = get_settings()
        assert settings.threads == 3
        assert settings.default_tol == 1e-6

    def test_no_import_time_instance(self):
        """Nothing is frozen at import; only the class and the factory are exported."""
        assert not hasattr(mvnlab.config.settings, "settings")
        assert mvnlab.config.__all__ == ["LabSettings", "get_settings"]

    def test_threads_must_be_positive(self, monkeypatch):
        """MVNLAB_THREADS=0 is rejected."""
        monkeypatch.setenv("MVNLAB_THREADS", "0")
        with pytest.raises(ValidationError):
            LabSettings()
