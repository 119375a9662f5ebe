"""
Export functionality for computation results.

Writes JSON reports and CSV tables (signed ledgers, Ehrhart counts, suite results).
"""

import csv
import json
import logging
import os
from datetime import datetime
from typing import Any, Dict, Optional, Sequence

from core.signed import SignedInteriorResult

logger = logging.getLogger(__name__)


def render_json(payload: Dict[str, Any], indent: Optional[int] = None) -> str:
    """
    Deterministic JSON text.

    Compact separators when indent is None, key order as built.
    """
    if indent is None:
        return json.dumps(payload, separators=(",", ":"), ensure_ascii=False)
    return json.dumps(payload, indent=indent, ensure_ascii=False)


class Exporter:
    """Exporter for reports and tables."""

    def __init__(self, output_dir: Optional[str] = None):
        """Initialize exporter.

        Args:
            output_dir: Output directory for exports. If None, uses current directory.
        """
        self.output_dir = output_dir or os.getcwd()
        os.makedirs(self.output_dir, exist_ok=True)

    def _path(self, filename: Optional[str], stem: str, extension: str) -> str:
        if filename is None:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            filename = f"{stem}_{timestamp}.{extension}"
        return os.path.join(self.output_dir, filename)

    def export_report_json(
        self,
        payload: Dict[str, Any],
        filename: Optional[str] = None,
        indent: Optional[int] = 2
    ) -> str:
        """Write a JSON report.

        Args:
            payload: Report data
            filename: Output filename. If None, generates timestamp-based name.
            indent: JSON indentation, None for a single line

        Returns:
            Path to exported file
        """
        file_path = self._path(filename, "report", "json")
        try:
            with open(file_path, "w", encoding="utf-8") as f:
                f.write(render_json(payload, indent))
                f.write("\n")
            logger.info(f"Exported JSON report: {file_path}")
            return file_path
        except OSError as e:
            logger.error(f"Failed to export JSON report: {e}")
            raise

    def export_ledger_csv(self, result: SignedInteriorResult, filename: Optional[str] = None) -> str:
        """Write the grouped rows of a signed-interior ledger.

        Returns:
            Path to exported file
        """
        rows = [
            [row.size, row.sign, row.multiplicity, row.polynomial.to_text(), row.contribution.to_text()]
            for row in result.rows()
        ]
        rows.append(["total", "", "", "", result.polynomial.to_text()])
        return self._write_csv(
            filename, "ledger", ["deleted", "sign", "multiplicity", "polynomial", "contribution"], rows
        )

    def export_counts_csv(
        self,
        counts: Sequence[int],
        filename: Optional[str] = None
    ) -> str:
        """Write lattice point counts, one row per dilation factor."""
        return self._write_csv(filename, "ehrhart", ["s", "points"], list(enumerate(counts)))

    def export_suite_csv(self, result, filename: Optional[str] = None) -> str:
        """Write one row per verified case of a BatchVerifyResult."""
        rows = []
        for case, report in result.results:
            rows.append([
                case.name,
                "pass" if report.equal else "FAIL",
                report.crossings,
                report.seifert_circles,
                report.morton_bound,
                "" if report.max_z_degree is None else report.max_z_degree,
                report.exponent,
                report.signed_interior.to_text(),
                report.top.to_text(),
            ])
        for name, message in result.errors:
            rows.append([name, "ERROR", "", "", "", "", "", "", message])
        header = [
            "case", "status", "crossings", "circles", "morton_bound",
            "max_z_degree", "exponent", "signed_interior", "top",
        ]
        return self._write_csv(filename, "suite", header, rows)

    def _write_csv(self, filename: Optional[str], stem: str, header, rows) -> str:
        file_path = self._path(filename, stem, "csv")
        try:
            with open(file_path, "w", newline="", encoding="utf-8") as f:
                writer = csv.writer(f)
                writer.writerow(header)
                writer.writerows(rows)
            logger.info(f"Exported {len(rows)} rows to CSV: {file_path}")
            return file_path
        except OSError as e:
            logger.error(f"Failed to export to CSV: {e}")
            raise
