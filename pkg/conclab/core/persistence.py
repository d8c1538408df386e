"""Report persistence for conclab runs.

This module provides the saver interface and the file-based implementation
that writes bound reports as JSON and CSV, plus the plot-ready tables of the
curve, simulate and constants commands. Every file is written under a
temporary name and renamed once complete, so a failed run leaves no partial
output behind.
"""

import csv
import io
import json
import logging
import math
import os
import tempfile
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

from conclab.core.report import BoundReport

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ["bound_id", "n", "lhs", "stderr", "rhs", "pass", "seed", "runtime_ms"]
CURVE_COLUMNS = ["bound_id", "n", "lhs", "stderr", "rhs", "ratio"]
SPECTRA_COLUMNS = ["replication", "rank", "eigenvalue"]
TRAJECTORY_COLUMNS = ["n", "w1", "shape", "ratio"]


def format_value(value: Any) -> str:
    """Format one CSV cell: 17 significant digits, ``inf``, ``true/false``."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return "%.17g" % value
    if value is None:
        return ""
    try:
        return format_value(float(value))
    except (TypeError, ValueError):
        return str(value)


def _stage(path: Path, text: str) -> str:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except BaseException:
        _discard(tmp)
        raise
    return tmp


def _discard(path: Union[str, Path]) -> None:
    if os.path.exists(path):
        os.unlink(path)


def _atomic_write(path: Path, text: str) -> None:
    tmp = _stage(path, text)
    try:
        os.replace(tmp, path)
    except BaseException:
        _discard(tmp)
        raise


def _atomic_write_all(files: Sequence[Tuple[Path, str]]) -> None:
    """Write every file or none: all texts are staged before any replace."""
    staged: List[Tuple[str, Path]] = []
    try:
        for path, text in files:
            staged.append((_stage(path, text), path))
    except BaseException:
        for tmp, _ in staged:
            _discard(tmp)
        raise
    replaced: List[Path] = []
    try:
        for tmp, path in staged:
            os.replace(tmp, path)
            replaced.append(path)
    except BaseException:
        for tmp, path in staged:
            _discard(tmp)
        for path in replaced:
            _discard(path)
        raise


def render_table(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render a CSV table with UNIX newlines."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buffer.getvalue()


def write_table(
    path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[Any]]
) -> Path:
    """Write a CSV table atomically and return its path."""
    path = Path(path)
    _atomic_write(path, render_table(header, rows))
    logger.debug(f"[PERSIST] wrote {path}")
    return path


class ReportSaver(ABC):
    """Abstract base class for saving and loading bound reports.

    Concrete implementations decide where reports live (files, databases).
    """

    @abstractmethod
    def save(self, reports: Sequence[BoundReport]) -> None:
        """Persist the reports of one run.

        Args:
            reports: Reports in catalog order.

        Raises:
            NotImplementedError: If not implemented by concrete subclass.
        """
        pass

    @abstractmethod
    def load(self) -> List[BoundReport]:
        """Load the reports of the last saved run.

        Returns:
            The saved reports, or an empty list when nothing was saved.

        Raises:
            NotImplementedError: If not implemented by concrete subclass.
        """
        pass


class FileReportSaver(ReportSaver):
    """Writes reports.json and reports.csv into an output directory.

    Attributes:
        out_dir: Directory receiving the files.
        record_runtime: When False, runtime_ms is written as 0 so CSV output is
            byte-stable across reruns.

    Example:
        >>> saver = FileReportSaver("results")
        >>> saver.save([report])
        >>> saver.load()[0].bound_id
        'COR_6_2'
    """

    json_name = "reports.json"
    csv_name = "reports.csv"

    def __init__(self, out_dir: Union[str, Path], record_runtime: bool = True) -> None:
        """Initialize the saver.

        Args:
            out_dir: Output directory; created on first save.
            record_runtime: Whether measured runtimes go into the CSV.
        """
        self.out_dir = Path(out_dir)
        self.record_runtime = record_runtime

    @property
    def json_path(self) -> Path:
        return self.out_dir / self.json_name

    @property
    def csv_path(self) -> Path:
        return self.out_dir / self.csv_name

    def render_json(self, reports: Sequence[BoundReport]) -> str:
        """Render reports as a JSON array with stable field order."""
        payload = [report.to_json_dict() for report in reports]
        return json.dumps(payload, indent=2, allow_nan=False) + "\n"

    def render_csv(self, reports: Sequence[BoundReport]) -> str:
        """Render the one-row-per-report CSV."""
        rows = [
            [
                r.bound_id,
                r.n,
                r.lhs_estimate,
                r.lhs_stderr,
                r.rhs_value,
                r.passed,
                r.seed,
                float(round(r.runtime_ms, 3)) if self.record_runtime else 0,
            ]
            for r in reports
        ]
        return render_table(REPORT_COLUMNS, rows)

    def save(self, reports: Sequence[BoundReport]) -> None:
        """Write both report files.

        Raises:
            ValueError: If a report cannot be serialized.
            OSError: If the output directory is not writable; neither file is
                left behind from this call.
        """
        try:
            json_text = self.render_json(reports)
        except (TypeError, ValueError) as e:
            raise ValueError(f"Failed to serialize reports: {e}")
        csv_text = self.render_csv(reports)

        _atomic_write_all([(self.json_path, json_text), (self.csv_path, csv_text)])
        logger.info(f"[PERSIST] saved {len(reports)} reports to {self.out_dir}")

    def load(self) -> List[BoundReport]:
        """Load reports.json back into BoundReport objects.

        Raises:
            json.JSONDecodeError: If the file is corrupt.
        """
        if not self.json_path.exists():
            return []
        with open(self.json_path, encoding="utf-8") as handle:
            payload = json.load(handle)
        return [BoundReport(**_restore_floats(item)) for item in payload]

    def save_curves(self, rows: Iterable[Sequence[Any]]) -> Path:
        """Write curves.csv (bound_id, n, lhs, stderr, rhs, ratio)."""
        return write_table(self.out_dir / "curves.csv", CURVE_COLUMNS, rows)

    def save_spectra(self, rows: Iterable[Sequence[Any]]) -> Path:
        """Write spectra.csv (replication, rank, eigenvalue)."""
        return write_table(self.out_dir / "spectra.csv", SPECTRA_COLUMNS, rows)

    def save_trajectory(self, rows: Iterable[Sequence[Any]]) -> Path:
        """Write trajectory.csv (n, w1, shape, ratio)."""
        return write_table(self.out_dir / "trajectory.csv", TRAJECTORY_COLUMNS, rows)

    def save_constants(
        self, header: Sequence[str], rows: Iterable[Sequence[Any]]
    ) -> Path:
        """Write constants.csv with the given header."""
        return write_table(self.out_dir / "constants.csv", header, rows)


def _restore_floats(item: Dict[str, Any]) -> Dict[str, Any]:
    restored = dict(item)
    for key in ("lhs_estimate", "lhs_stderr", "rhs_value", "lower_value"):
        if isinstance(restored.get(key), str):
            restored[key] = float(restored[key])
    return restored
