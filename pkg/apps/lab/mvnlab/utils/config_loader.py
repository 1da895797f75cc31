"""
Experiment configuration loading.

Bundled per-command defaults live in ``config/experiments.yaml``. A run request is
assembled from three layers, later ones winning: bundled defaults, an optional
user YAML file, and command-line overrides.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml

from mvnlab.models.experiment import Command, ExperimentConfig

_MODEL_FIELDS = {"command", "inputs", "out", "seed", "tol", "n_schedule", "t_values", "family", "spec"}


class ExperimentConfigLoader:
    """Loads and validates the bundled experiment defaults."""

    _config_cache: dict[str, Any] | None = None

    @classmethod
    def load_config(cls, force_reload: bool = False) -> dict[str, Any]:
        """Load the bundled defaults from YAML."""
        if cls._config_cache is not None and not force_reload:
            return cls._config_cache

        config_path = Path(__file__).parent.parent / "config" / "experiments.yaml"

        if not config_path.exists():
            raise FileNotFoundError(f"Experiment configuration file not found: {config_path}")

        with open(config_path, encoding="utf-8") as f:
            config = yaml.safe_load(f)

        # Validate required sections
        required_sections = ["commands", "metadata"]
        for section in required_sections:
            if section not in config:
                raise ValueError(f"Missing required section '{section}' in experiment configuration")

        missing = [c.value for c in Command if c.value not in config["commands"]]
        if missing:
            raise ValueError(f"No defaults for commands: {missing}")

        cls._config_cache = config
        return config

    @classmethod
    def get_command_defaults(cls, command: str) -> dict[str, Any]:
        """Defaults for one command, without its description."""
        config = cls.load_config()

        if command not in config["commands"]:
            available = list(config["commands"].keys())
            raise ValueError(f"Unknown command: {command}. Available commands: {available}")

        defaults = dict(config["commands"][command])
        defaults.pop("description", None)
        return defaults

    @classmethod
    def list_commands(cls) -> list[str]:
        config = cls.load_config()
        return list(config["commands"].keys())

    @classmethod
    def describe_command(cls, command: str) -> str:
        return cls.load_config()["commands"].get(command, {}).get("description", "")

    @classmethod
    def reload_configuration(cls) -> None:
        """Force reload of configuration from disk."""
        cls.load_config(force_reload=True)

    @staticmethod
    def load_experiment_file(path: str | Path) -> dict[str, Any]:
        """
        Read a user experiment file.

        Raises:
            FileNotFoundError: If the file does not exist
            ValueError: If the file is not a YAML mapping
        """
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Experiment config not found: {path}")
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ValueError(f"Experiment config {path} must be a mapping, got {type(data).__name__}")
        return data

    @classmethod
    def build(
        cls,
        command: str | None = None,
        config_path: str | Path | None = None,
        overrides: dict[str, Any] | None = None,
        fallbacks: dict[str, Any] | None = None,
    ) -> ExperimentConfig:
        """
        Merge defaults, file and overrides into a validated request.

        ``None`` overrides are ignored so unset flags never mask the file.
        ``fallbacks`` (environment settings) sit below the bundled defaults.

        Raises:
            ValueError: If no command is given anywhere
            pydantic.ValidationError: If the merged values are invalid
        """
        layers: list[dict[str, Any]] = []
        file_data = cls.load_experiment_file(config_path) if config_path else {}
        flags = {k: v for k, v in (overrides or {}).items() if v is not None}
        command = flags.get("command") or command or file_data.get("command")
        if not command:
            raise ValueError("no experiment command given")
        layers.append({k: v for k, v in (fallbacks or {}).items() if v is not None})
        layers.append(cls.get_command_defaults(command))
        layers.append(file_data)
        layers.append(flags)

        merged: dict[str, Any] = {}
        params: dict[str, Any] = {}
        for layer in layers:
            for key, value in layer.items():
                if key in _MODEL_FIELDS:
                    merged[key] = value
                elif key == "params" and isinstance(value, dict):
                    params.update(value)
                else:
                    params[key] = value
        merged["command"] = command
        merged["params"] = params
        return ExperimentConfig(**merged)


__all__ = ["ExperimentConfigLoader"]
