"""
Environment settings for the lab runner.

Every field can be overridden with an ``MVNLAB_``-prefixed environment variable or a
``.env`` file in the working directory:

- ``MVNLAB_THREADS``: worker cap for independent experiment rows
- ``MVNLAB_LOG_LEVEL`` / ``MVNLAB_LOG_DIR``: logging (read by ``Observability``)
- ``MVNLAB_DEFAULT_SEED`` / ``MVNLAB_DEFAULT_TOL``: fallbacks when neither a config file nor a flag sets them
- ``MVNLAB_OUTPUT_DIR``: where reports go when no ``--out`` is given
"""

from __future__ import annotations

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class LabSettings(BaseSettings):
    """Runner configuration loaded from the environment."""

    model_config = SettingsConfigDict(
        env_prefix="MVNLAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    threads: int = Field(1, ge=1, description="Upper bound on worker threads")
    log_level: str = "INFO"
    log_dir: str | None = None
    default_seed: int = 0
    default_tol: float = Field(1e-8, gt=0.0)
    output_dir: str = "results"


def get_settings() -> LabSettings:
    """Fresh settings, re-reading the environment."""
    return LabSettings()


__all__ = ["LabSettings", "get_settings"]
