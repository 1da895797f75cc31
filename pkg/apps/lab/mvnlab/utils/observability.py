"""
Centralized logging configuration for mvnlab.

Simple setup for stderr logging with an optional rotating log file.
Structured fields passed through ``extra={...}`` are kept in the output as JSON,
and every experiment run carries a run ID for correlating its log lines.
"""

from __future__ import annotations

import json
import logging
import os
import sys
import uuid
from contextvars import ContextVar
from logging.handlers import RotatingFileHandler
from pathlib import Path

CONSOLE_FORMAT = "%(levelname)s: %(name)s: %(message)s"
FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

_STANDARD_ATTRS = frozenset(
    {
        "name",
        "msg",
        "args",
        "created",
        "filename",
        "funcName",
        "levelname",
        "levelno",
        "lineno",
        "module",
        "msecs",
        "message",
        "pathname",
        "process",
        "processName",
        "relativeCreated",
        "thread",
        "threadName",
        "taskName",
        "exc_info",
        "exc_text",
        "stack_info",
        "asctime",
    }
)


class JsonExtraFormatter(logging.Formatter):
    """
    Formatter that appends ``extra`` data as JSON to the log line.

    The standard formatter drops anything passed via ``extra``; this one keeps it
    so residuals, seeds and block indices stay visible.
    """

    def format(self, record: logging.LogRecord) -> str:
        """Format log record with extra data as JSON."""
        base_message = super().format(record)

        extra_data = {
            key: value
            for key, value in record.__dict__.items()
            if key not in _STANDARD_ATTRS and not key.startswith("_")
        }

        if extra_data:
            try:
                extra_json = json.dumps(extra_data, default=str, indent=None, sort_keys=True)
                return f"{base_message} | extra={extra_json}"
            except (TypeError, ValueError) as e:
                return f"{base_message} | extra={extra_data} [serialization_error: {e}]"

        return base_message


class Observability:
    """
    Centralized logging configuration for all mvnlab modules.

    Features:
    - stderr console handler in ``LEVEL: module: message`` form
    - optional rotating file handler (MVNLAB_LOG_DIR)
    - run ID tracking for correlating an experiment's log lines
    """

    _initialized = False

    _run_id_var: ContextVar[str] = ContextVar("run_id", default="")

    @classmethod
    def initialize(cls, force_reinit: bool = False) -> None:
        """
        Initialize logging for the process.

        Args:
            force_reinit: Force reinitialization even if already initialized
        """
        if cls._initialized and not force_reinit:
            return

        log_level = cls.get_log_level()
        level = getattr(logging, log_level, logging.INFO)

        root_logger = logging.getLogger("mvnlab")
        root_logger.setLevel(level)
        root_logger.handlers.clear()
        root_logger.propagate = False

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        console_handler.setFormatter(JsonExtraFormatter(CONSOLE_FORMAT))
        root_logger.addHandler(console_handler)

        log_dir = os.getenv("MVNLAB_LOG_DIR")
        if log_dir:
            log_path = Path(log_dir)
            log_path.mkdir(parents=True, exist_ok=True)
            log_filename = log_path / "mvnlab.log"
            # 10MB per file, keep 5 backups
            file_handler = RotatingFileHandler(log_filename, maxBytes=10 * 1024 * 1024, backupCount=5)
            file_handler.setLevel(level)
            file_handler.setFormatter(JsonExtraFormatter(FILE_FORMAT))
            root_logger.addHandler(file_handler)
            root_logger.debug("Logging to file: %s", log_filename)

        cls._initialized = True

    @classmethod
    def get_logger(cls, name: str) -> logging.Logger:
        """
        Get a logger for a module, ensuring logging is initialized.

        Args:
            name: Short module name (e.g. "topologies")

        Returns:
            Logger named ``mvnlab.<name>``
        """
        cls.initialize()
        return logging.getLogger(f"mvnlab.{name}")

    @classmethod
    def get_log_level(cls) -> str:
        """Get the configured log level."""
        return os.getenv("MVNLAB_LOG_LEVEL", "INFO").upper()

    @classmethod
    def set_run_id(cls, run_id: str | None = None) -> str:
        """
        Set the run ID for the current context.

        Args:
            run_id: Optional run ID. If None, generates a new UUID.

        Returns:
            str: The run ID that was set
        """
        if not run_id:
            run_id = str(uuid.uuid4())
        cls._run_id_var.set(run_id)
        return run_id

    @classmethod
    def get_run_id(cls) -> str:
        """Get the run ID for the current context, creating one if unset."""
        run_id = cls._run_id_var.get()
        if not run_id:
            run_id = cls.set_run_id()
        return run_id

    @classmethod
    def clear_run_id(cls) -> None:
        """Clear the run ID from the current context."""
        cls._run_id_var.set("")


__all__ = ["Observability", "JsonExtraFormatter"]
