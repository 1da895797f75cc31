"""
CSV emission for experiment reports.

Files are written atomically: rows go to a temporary file in the destination
directory, which is then renamed over the target.
"""

from __future__ import annotations

import csv
import io
import os
import sys
import tempfile
from pathlib import Path

from mvnlab.models.reports import CsvReport
from mvnlab.utils.observability import Observability

logger = Observability.get_logger("reporting")


def render_csv(report: CsvReport) -> str:
    """The report as CSV text (header first, CRLF line endings, RFC-4180 quoting)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(report.csv_header())
    writer.writerows(report.csv_rows())
    return buffer.getvalue()


def emit_report(report: CsvReport, path: str | Path | None = None) -> None:
    """
    Write ``report`` as CSV to ``path``, or to stdout when ``path`` is None.

    Raises:
        OSError: If the destination cannot be written
    """
    text = render_csv(report)
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    logger.info("Report written", extra={"path": str(target), "rows": len(report.rows)})


def sibling_path(path: str | Path | None, suffix: str) -> Path | None:
    """``results/run.csv`` with suffix ``coherence`` → ``results/run.coherence.csv``."""
    if path is None:
        return None
    path = Path(path)
    return path.with_name(f"{path.stem}.{suffix}{path.suffix or '.csv'}")


__all__ = ["render_csv", "emit_report", "sibling_path"]
