"""
Orchestrators - experiment dispatch and report output.

- experiment_runner: one handler per command, exit-code mapping
- reporting: atomic CSV emission

Orchestrators hold no mathematics of their own; they coordinate the library modules.
"""

from mvnlab.orchestrators.experiment_runner import HANDLERS, RunOutcome, run_experiment
from mvnlab.orchestrators.reporting import emit_report, render_csv

__all__ = [
    "HANDLERS",
    "RunOutcome",
    "run_experiment",
    "emit_report",
    "render_csv",
]
