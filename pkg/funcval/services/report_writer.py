"""
Report Writer

Serializes verification reports and growth tables as JSON or CSV, to a
file or to stdout. Column orders are fixed.
"""

import csv
import io
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from funcval.api.models.request import ReportFormat
from funcval.api.models.response import GrowthRow, Report
from funcval.core.logging import get_logger

logger = get_logger(__name__)

RECORD_COLUMNS = ["name", "inputs_digest", "expected", "got", "gap", "passed", "detail"]
GROWTH_COLUMNS = ["t", "psi0", "psi1", "psi2", "psi0_hat", "psi1_hat", "psi2_hat"]


def _csv(columns: Sequence[str], rows: List[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: "" if row.get(key) is None else row[key] for key in columns})
    return buffer.getvalue()


class ReportWriter:
    """Report serialization"""

    def render_report(self, report: Report, fmt: Optional[ReportFormat] = None) -> str:
        """
        Report text in the requested format

        Args:
            report: Report to serialize
            fmt: json or csv; defaults to the format the report was run with

        Returns:
            JSON document, or CSV with one row per record
        """
        fmt = fmt or report.format
        if fmt == ReportFormat.CSV:
            return _csv(RECORD_COLUMNS, [record.model_dump() for record in report.records])
        return report.model_dump_json(indent=2) + "\n"

    def render_table(self, rows: List[GrowthRow]) -> str:
        """CSV growth table with the fixed column order"""
        return _csv(GROWTH_COLUMNS, [row.model_dump() for row in rows])

    def emit(self, text: str, out: Optional[str] = None) -> None:
        """
        Write text to a path, or to stdout when no path is given

        Raises:
            OSError: The output file cannot be written
        """
        if out is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        try:
            Path(out).write_text(text, encoding="utf-8")
            logger.info(f"Wrote {len(text)} bytes to {out}")
        except OSError as e:
            logger.error(f"Failed to write {out}: {e}", exc_info=True)
            raise


# Global writer instance
report_writer = ReportWriter()
