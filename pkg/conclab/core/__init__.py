"""Core module for conclab.

This module contains the exception hierarchy, run configuration, the bound
report model, seeded replication streams and report persistence.
"""

from .config import (
    HardyConfig,
    LawConfig,
    MonteCarloPlan,
    RunConfig,
    ScenarioConfig,
    load_run_config,
    worker_count,
)
from .persistence import FileReportSaver, ReportSaver, write_table
from .report import BoundReport
from .streams import replicate, replication_rng

__all__ = [
    "BoundReport",
    "FileReportSaver",
    "HardyConfig",
    "LawConfig",
    "MonteCarloPlan",
    "ReportSaver",
    "RunConfig",
    "ScenarioConfig",
    "load_run_config",
    "replicate",
    "replication_rng",
    "worker_count",
    "write_table",
]
