"""Command-line front end: ``weylwalk analyze|verify|regions|enumerate|classify``.

Reports go to stdout (or ``--output``) as JSON or CSV; logs go to stderr.
Exit codes: 0 success, 1 validation error, 2 budget error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional, Sequence, TextIO

from .container import Container, build_container
from .domain import LoadedModel, PjEvaluation, format_rational
from .errors import BudgetError, DomainError, ValidationError
from .logging import ServiceLogger, setup_logging
from .oracle.domain import DpMode
from .reports import Tolerances
from .services import arithmetic_for
from .settings import Settings, load_settings

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_BUDGET = 2

logger = ServiceLogger("cli")


class _Parser(argparse.ArgumentParser):
    """Usage errors become validation errors so exit code 2 stays reserved for budgets."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ValidationError(f"{self.prog}: {message}")


def _add_common(parser: argparse.ArgumentParser, default: object) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--input", "-i", default=default, help="model JSON file; stdin when omitted or '-'")
    source.add_argument("--model", default=default, help="name of a bundled model under MODELS_DIR")
    parser.add_argument("--output", "-o", default=default, help="write the report here instead of stdout")
    parser.add_argument(
        "--mode", default=default, choices=[mode.value for mode in DpMode], help="arithmetic for the oracle"
    )
    parser.add_argument("--budget", type=int, default=default, help="memory budget in bytes for the oracle")
    parser.add_argument("--log-level", default=default, help="overrides WEYLWALK_LOG_LEVEL")


def build_parser() -> argparse.ArgumentParser:
    # Shared flags go before or after the subcommand; the subcommand copy only sets what was given.
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, argparse.SUPPRESS)

    parser = _Parser(prog="weylwalk", description="Asymptotics of weighted reflectable orthant walks.")
    _add_common(parser, None)
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    analyze = commands.add_parser("analyze", parents=[common], help="asymptotic formula and its ingredients")
    analyze.add_argument(
        "--pj-evaluation",
        choices=[choice.value for choice in PjEvaluation],
        default=PjEvaluation.AT_POINT.value,
    )

    verify = commands.add_parser("verify", parents=[common], help="compare the formula with exact counts")
    verify.add_argument("--nmax", type=int)
    verify.add_argument("--tol-gamma", type=float)
    verify.add_argument("--tol-exp", type=float)
    verify.add_argument("--excursions", action="store_true", help="also check the excursion exponent")
    verify.add_argument("--evaluation", action="store_true", help="also check the weighted evaluation identity")

    regions = commands.add_parser("regions", parents=[common], help="base, exponent and constant over a grid")
    regions.add_argument("--grid", help="e.g. 'geom:1/4:2:5' or '1/2,1,2;1/3,1,3'")

    enumerate_cmd = commands.add_parser("enumerate", parents=[common], help="walk counts as CSV")
    enumerate_cmd.add_argument("--nmax", type=int)
    enumerate_cmd.add_argument("--by-endpoint", action="store_true")

    commands.add_parser("classify", parents=[common], help="central, symmetric or factored weighting")
    return parser


def _settings_for(args: argparse.Namespace) -> Settings:
    settings = load_settings()
    overrides = {}
    if args.budget is not None:
        overrides["budget_bytes"] = args.budget
    if args.mode is not None:
        overrides["dp_mode"] = args.mode
    if args.log_level is not None:
        overrides["log_level"] = args.log_level
    return settings.model_copy(update=overrides) if overrides else settings


def _load_model(args: argparse.Namespace, container: Container, stdin: TextIO) -> LoadedModel:
    if args.model and args.input:
        raise ValidationError("--model and --input are mutually exclusive")
    if args.model:
        return container.loader.named(args.model)
    if args.input and args.input != "-":
        return container.loader.from_path(args.input)
    return container.loader.from_text(stdin.read(), name="stdin")


def _csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _run(args: argparse.Namespace, container: Container, stdin: TextIO) -> str:
    settings = container.settings
    model = _load_model(args, container, stdin)
    mode = DpMode(args.mode or settings.dp_mode)

    if args.command == "classify":
        report = container.classification_service.classify(model, arithmetic_for(mode))
        return report.model_dump_json(indent=2)

    if args.command == "analyze":
        analysis = container.analysis_service.analyze(model, arithmetic_for(mode), PjEvaluation(args.pj_evaluation))
        return analysis.model_dump_json(indent=2)

    if args.command == "verify":
        tolerances = Tolerances(
            gamma=args.tol_gamma if args.tol_gamma is not None else settings.tol_gamma,
            exponent=args.tol_exp if args.tol_exp is not None else settings.tol_exp,
        )
        verification = container.verification_service.verify(
            model,
            n_max=args.nmax,
            mode=DpMode(args.mode) if args.mode else None,
            tolerances=tolerances,
            budget_bytes=args.budget,
            check_excursions=args.excursions,
            check_evaluation=args.evaluation,
        )
        return verification.model_dump_json(indent=2)

    if args.command == "regions":
        region_report = container.region_service.regions(model, args.grid)
        header = [f"a{axis + 1}" for axis in range(model.dimension)] + ["cell", "base", "exponent", "gamma_even"]
        rows: List[List[str]] = [
            [format_rational(a) for a in row.alpha]
            + ["|".join(row.cells), format_rational(row.base), format_rational(row.exponent), repr(row.gamma_even)]
            for row in region_report.rows
        ]
        return _csv(header, rows)

    enumeration = container.enumeration_service.enumerate(
        model,
        n_max=args.nmax,
        by_endpoint=args.by_endpoint,
        mode=DpMode(args.mode) if args.mode else None,
        budget_bytes=args.budget,
    )
    return _csv(enumeration.header, enumeration.rows)


def _emit(text: str, output: Optional[str], stdout: TextIO) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        stdout.write(text)


def main(
    argv: Optional[Sequence[str]] = None,
    *,
    stdin: Optional[TextIO] = None,
    stdout: Optional[TextIO] = None,
    container: Optional[Container] = None,
) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if container is None:
            settings = _settings_for(args)
            setup_logging(settings.log_level)
            container = build_container(settings)
        output = _run(args, container, stdin)
    except BudgetError as exc:
        logger.error("budget exceeded", detail=exc.detail)
        _emit(_error_json(exc), None, stdout)
        return EXIT_BUDGET
    except DomainError as exc:
        logger.error("request rejected", error=exc.kind)
        _emit(_error_json(exc), None, stdout)
        return EXIT_VALIDATION
    _emit(output, args.output, stdout)
    return EXIT_OK


def _error_json(exc: DomainError) -> str:
    return json.dumps(exc.to_payload(), default=str)


if __name__ == "__main__":
    sys.exit(main())
