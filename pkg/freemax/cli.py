import argparse
import asyncio
import csv
import io
import json
import logging
import sys
from typing import Any, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from freemax._app_config import FreeMaxAppConfig
from freemax.freemax import FreeMax
from freemax.objects.configs.command_verb import CommandVerb
from freemax.objects.configs.output_format import OutputFormat
from freemax.objects.configs.rate_reference import RateReference
from freemax.objects.factories.experiment_config_factory import ExperimentConfigFactory
from freemax.resolvers.distribution_name_resolver import DistributionNameResolver
from freemax.resolvers.output_format_resolver import OutputFormatResolver
from freemax.services.report_writer_service import ReportWriterService, format_number

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VIOLATED = 3


class _BoundViolated(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="freemax", description="Free extreme value limits of free max-convolution powers")
    parser.add_argument("--format", choices=[fmt.value for fmt in OutputFormat], default=None, help="Output format; human on a terminal, csv otherwise")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging on stderr")

    subparsers = parser.add_subparsers(dest="verb", required=True)

    subparsers.add_parser(CommandVerb.List.value, help="List catalog distributions")

    norming = subparsers.add_parser(CommandVerb.Norming.value, help="Norming constants a_n, b_n")
    _add_distribution_arguments(norming)
    norming.add_argument("--n", type=int, required=True)

    density = subparsers.add_parser(CommandVerb.Density.value, help="Density w_n of the normalized free power")
    _add_distribution_arguments(density)
    density.add_argument("--n", type=int, required=True)
    density.add_argument("--x", type=float, required=True)

    von_mises = subparsers.add_parser(CommandVerb.VonMises.value, help="von Mises functional and envelope table")
    _add_distribution_arguments(von_mises)
    von_mises.add_argument("--xmin", type=float, required=True)
    von_mises.add_argument("--xmax", type=float, required=True)
    von_mises.add_argument("--points", type=int, default=100)
    von_mises.add_argument("--n-grid", type=_int_list, default=[100, 1000, 10000, 100000])
    von_mises.add_argument("--auto-envelope", action="store_true")
    von_mises.add_argument("--output", default=None, help="Write the table to this path instead of stdout")

    lemmas = subparsers.add_parser(CommandVerb.Lemmas.value, help="Gap and sandwich inequalities between limit laws")
    lemmas.add_argument("--which", required=True, choices=["frechet_gap", "x_weighted_gap", "u_gap", "sandwich"])
    lemmas.add_argument("--alpha1", type=float)
    lemmas.add_argument("--alpha2", type=float)
    lemmas.add_argument("--a", type=float)
    _add_distribution_arguments(lemmas, required=False)
    lemmas.add_argument("--n", type=int)
    lemmas.add_argument("--xmin", type=float)
    lemmas.add_argument("--xmax", type=float)
    lemmas.add_argument("--points", type=int, default=1000)

    converge = subparsers.add_parser(CommandVerb.Converge.value, help="Sup-norm density convergence experiment")
    _add_distribution_arguments(converge)
    converge.add_argument("--nmin", type=int, required=True)
    converge.add_argument("--nmax", type=int, required=True)
    converge.add_argument("--per-decade", type=int, default=4)
    converge.add_argument("--grid", type=int, default=FreeMaxAppConfig.default_grid_points)
    converge.add_argument("--domain", type=_interval, default=None, help="Compact interval a,b inside the theorem domain")
    converge.add_argument("--reference", choices=[reference.value for reference in RateReference], default=RateReference.MaxOfBoth.value)
    converge.add_argument("--output", default=None, help="Prefix for <prefix>.csv, <prefix>.json and <prefix>.plot.dat")

    witness = subparsers.add_parser(CommandVerb.Witness.value, help="Point where the free Weibull density is missed by at least 1")
    witness.add_argument("--alpha", type=float, required=True)
    witness.add_argument("--n", type=int, required=True)

    return parser


def _add_distribution_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--dist", required=required, help="Catalog distribution name")
    parser.add_argument("--alpha", type=float, help="Tail parameter of frechet, log_logistic, weibull, endpoint_power, stretched_gumbel")
    parser.add_argument("--k", type=float, help="Scale K of endpoint_power")
    parser.add_argument("--omega", type=float, help="Right endpoint of endpoint_power")


def _int_list(text: str) -> list[int]:
    return [int(item) for item in text.split(",") if item.strip() != ""]


def _interval(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"Expected a,b, got {text!r}")
    return float(parts[0]), float(parts[1])


def _params(arguments: argparse.Namespace) -> tuple[float, ...]:
    values = []
    for name in DistributionNameResolver.parameter_names(arguments.dist):
        value = getattr(arguments, name)
        if value is None:
            raise ValueError(f"{arguments.dist} needs --{name}")
        values.append(value)
    return tuple(values)


def _format_cell(value: Any, output_format: OutputFormat) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    digits = FreeMaxAppConfig.human_digits if output_format == OutputFormat.Human else FreeMaxAppConfig.machine_digits
    return format_number(float(value), digits)


def _render(records: list[dict[str, Any]], output_format: OutputFormat) -> str:
    if output_format == OutputFormat.Json:
        payload = records[0] if len(records) == 1 else records
        return json.dumps(payload, indent=2) + "\n"

    cells = [{key: _format_cell(value, output_format) for key, value in record.items()} for record in records]
    if output_format == OutputFormat.Csv:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(cells[0].keys()), lineterminator="\n")
        writer.writeheader()
        writer.writerows(cells)
        return buffer.getvalue()

    if len(cells) == 1:
        return "".join(f"{key}: {value}\n" for key, value in cells[0].items())
    keys = list(cells[0].keys())
    lines = ["  ".join(f"{key:>14}" for key in keys)]
    lines += ["  ".join(f"{str(record[key]):>14}" for key in keys) for record in cells]
    return "\n".join(lines) + "\n"


def _run(arguments: argparse.Namespace, output_format: OutputFormat) -> str:
    free_max = FreeMax()
    verb = CommandVerb(arguments.verb)

    if verb == CommandVerb.List:
        records = [
            {
                "name": name,
                "parameters": " ".join(DistributionNameResolver.parameter_names(name)),
                "regime": entry.regime.tag.value,
                "alpha": entry.alpha,
                "example": entry.name
            }
            for name, entry in zip(DistributionNameResolver.canonical_names(), free_max.catalog())
        ]
        return _render(records, output_format)

    if verb == CommandVerb.Norming:
        pair = free_max.norming(arguments.dist, _params(arguments), arguments.n)
        return _render([{"n": pair.n, "a": pair.a, "b": pair.b, "residual": pair.residual, "unique": pair.unique}], output_format)

    if verb == CommandVerb.Density:
        value, window = free_max.density(arguments.dist, _params(arguments), arguments.n, arguments.x)
        return _render([{"n": arguments.n, "x": arguments.x, "w_n": value, "A_n": window.a_lower, "B_n": window.b_upper}], output_format)

    if verb == CommandVerb.VonMises:
        x_grid = np.linspace(arguments.xmin, arguments.xmax, arguments.points)
        report = free_max.von_mises(arguments.dist, _params(arguments), x_grid, arguments.n_grid, arguments.auto_envelope)
        records = [{"x": x, "h": h, "g": g} for (x, h), (_, g) in zip(report.h_values, report.envelope_values)]
        text = _render(records, output_format)
        if arguments.output is not None:
            asyncio.run(ReportWriterService.write_text(arguments.output, text))
            text = ""
        summary = _render([{
            "monotone_ok": report.monotone_ok,
            "domination_ok": report.domination_ok,
            "certified": report.certified,
            **{f"g_at_norm_{n}": value for n, value in report.envelope_at_norm}
        }], OutputFormat.Human)
        sys.stderr.write(summary)
        return text

    if verb == CommandVerb.Lemmas:
        return _run_lemma(free_max, arguments, output_format)

    if verb == CommandVerb.Converge:
        n_list = ExperimentConfigFactory.decade_grid(arguments.nmin, arguments.nmax, arguments.per_decade)
        report = free_max.converge({
            "distribution": arguments.dist,
            "params": _params(arguments),
            "n_list": n_list,
            "grid_points": arguments.grid,
            "domain_override": arguments.domain,
            "rate_reference": arguments.reference
        })
        if arguments.output is not None:
            paths = asyncio.run(free_max.write_report(report, arguments.output))
            logger.info("Wrote %s", ", ".join(str(path) for path in paths))

        if output_format == OutputFormat.Json:
            return ReportWriterService.render_json(report)
        if output_format == OutputFormat.Human:
            return ReportWriterService.render_human(report)
        return ReportWriterService.render_csv(report)

    result = free_max.witness(arguments.alpha, arguments.n)
    text = _render([result.model_dump()], output_format)
    if not result.holds:
        raise _BoundViolated(text)
    return text


def _run_lemma(free_max: FreeMax, arguments: argparse.Namespace, output_format: OutputFormat) -> str:
    which = arguments.which
    if which in ("frechet_gap", "x_weighted_gap"):
        if arguments.alpha1 is None or arguments.alpha2 is None:
            raise ValueError(f"{which} needs --alpha1 and --alpha2")
        check = free_max.frechet_gap(arguments.alpha1, arguments.alpha2) if which == "frechet_gap" else free_max.x_weighted_gap(arguments.alpha1, arguments.alpha2)
        violated, record = check.violated, check.model_dump()
    elif which == "u_gap":
        if arguments.a is None:
            raise ValueError("u_gap needs --a")
        check = free_max.u_gap(arguments.a)
        violated, record = check.violated, check.model_dump()
    else:
        if arguments.dist is None or arguments.n is None or arguments.xmin is None or arguments.xmax is None:
            raise ValueError("sandwich needs --dist, --n, --xmin and --xmax")
        x_grid = np.linspace(arguments.xmin, arguments.xmax, arguments.points)
        holds = free_max.sandwich(arguments.dist, _params(arguments), arguments.n, x_grid)
        violated, record = not holds, {"n": arguments.n, "holds": holds}

    text = _render([{"which": which, **record}], output_format)
    if violated:
        raise _BoundViolated(text)
    return text


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        arguments = parser.parse_args(argv)
    except SystemExit as exit_request:
        return EXIT_OK if exit_request.code in (0, None) else EXIT_INVALID

    level = logging.WARNING
    if arguments.verbose == 1:
        level = logging.INFO
    elif arguments.verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)

    try:
        output_format = OutputFormatResolver.resolve(arguments.format, sys.stdout)
        sys.stdout.write(_run(arguments, output_format))
    except _BoundViolated as violation:
        sys.stdout.write(str(violation))
        logger.warning("Asserted bound violated")
        return EXIT_VIOLATED
    except (ValueError, ValidationError, OSError) as error:
        sys.stderr.write(f"freemax: {error}\n")
        return EXIT_INVALID

    return EXIT_OK
