import csv
import io
import json
from pathlib import Path
from typing import Union

from freemax.objects.configs.rate_reference import RateReference
from freemax.objects.reports.convergence_report import ConvergenceReport
from freemax.objects.reports.convergence_row import ConvergenceRow
from freemax.services.report_writer_service import CSV_COLUMNS, ReportWriterService


class ConvergenceReportFactory:

    @staticmethod
    def from_strings(csv_text: str, json_text: str) -> ConvergenceReport:
        reader = csv.DictReader(io.StringIO(csv_text))
        if reader.fieldnames is None or list(reader.fieldnames) != CSV_COLUMNS:
            raise ValueError(f"Unexpected CSV header {reader.fieldnames}; expected {CSV_COLUMNS}")

        rows = []
        for record in reader:
            row = {column: (float(value) if value != "" else None) for column, value in record.items() if column != "n"}
            row["n"] = int(record["n"])
            rows.append(ConvergenceRow.model_validate(row))

        summary = json.loads(json_text)
        return ConvergenceReport(
            entry_name=summary["entry_name"],
            alpha=summary["alpha"],
            rate_reference=RateReference(summary["rate_reference"]),
            per_n=rows,
            fitted_slope=summary["fitted_slope"],
            constant=summary["C"],
            bound_satisfied=summary["bound_satisfied"],
            bound_holds_from=summary.get("bound_holds_from")
        )

    @staticmethod
    async def from_files(csv_path: Union[str, Path], json_path: Union[str, Path]) -> ConvergenceReport:
        csv_text = await ReportWriterService.read_text(csv_path)
        json_text = await ReportWriterService.read_text(json_path)
        return ConvergenceReportFactory.from_strings(csv_text, json_text)
