import csv
import io
import json
import math
from pathlib import Path
from typing import Optional, Union

import aiofiles

from freemax._app_config import FreeMaxAppConfig
from freemax.objects.reports.convergence_report import ConvergenceReport

CSV_COLUMNS = ["n", "sup_error", "argmax_x", "A_n", "B_n", "g_at_norm", "n_inv", "theorem_bound"]


def format_number(value: Optional[float], digits: int = FreeMaxAppConfig.machine_digits) -> str:
    if value is None:
        return ""
    return format(value, f".{digits}g")


class ReportWriterService:

    @staticmethod
    def render_csv(report: ConvergenceReport, digits: int = FreeMaxAppConfig.machine_digits) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in report.per_n:
            writer.writerow([str(row.n)] + [format_number(getattr(row, column), digits) for column in CSV_COLUMNS[1:]])
        return buffer.getvalue()

    @staticmethod
    def render_json(report: ConvergenceReport) -> str:
        summary = {
            "entry_name": report.entry_name,
            "alpha": report.alpha,
            "rate_reference": report.rate_reference.value,
            "fitted_slope": report.fitted_slope,
            "bound_satisfied": report.bound_satisfied,
            "C": report.constant,
            "bound_holds_from": report.bound_holds_from,
            "theorem_bounds": [[row.n, row.theorem_bound] for row in report.per_n]
        }
        return json.dumps(summary, indent=2) + "\n"

    @staticmethod
    def render_plot(report: ConvergenceReport) -> str:
        lines = ["# log_n log_sup_error"]
        for row in report.per_n:
            log_error = math.log(row.sup_error) if row.sup_error > 0 else -math.inf
            lines.append(f"{format_number(math.log(row.n))} {format_number(log_error)}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def render_human(report: ConvergenceReport) -> str:
        digits = FreeMaxAppConfig.human_digits
        lines = [
            f"{report.entry_name}  alpha={format_number(report.alpha, digits)}  reference={report.rate_reference.value}",
            "  ".join(f"{column:>14}" for column in CSV_COLUMNS)
        ]
        for row in report.per_n:
            cells = [str(row.n)] + [format_number(getattr(row, column), digits) for column in CSV_COLUMNS[1:]]
            lines.append("  ".join(f"{cell:>14}" for cell in cells))
        lines.append(
            f"slope={format_number(report.fitted_slope, digits)}  C={format_number(report.constant, digits)}  "
            f"bound_satisfied={report.bound_satisfied}  bound_holds_from={report.bound_holds_from}"
        )
        return "\n".join(lines) + "\n"

    @staticmethod
    async def write_text(path: Union[str, Path], text: str) -> None:
        async with aiofiles.open(path, mode="w", encoding="utf-8", newline="\n") as file:
            await file.write(text)

    @staticmethod
    async def read_text(path: Union[str, Path]) -> str:
        async with aiofiles.open(path, mode="r", encoding="utf-8") as file:
            return await file.read()

    @staticmethod
    async def write_report(report: ConvergenceReport, prefix: Union[str, Path]) -> list[Path]:
        """Writes <prefix>.csv, <prefix>.json and <prefix>.plot.dat."""
        prefix = Path(prefix)
        outputs = {
            prefix.with_name(prefix.name + ".csv"): ReportWriterService.render_csv(report),
            prefix.with_name(prefix.name + ".json"): ReportWriterService.render_json(report),
            prefix.with_name(prefix.name + ".plot.dat"): ReportWriterService.render_plot(report)
        }

        for path, text in outputs.items():
            await ReportWriterService.write_text(path, text)

        return list(outputs.keys())
