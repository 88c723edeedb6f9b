"""Main CLI entry point for alexdec."""

import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import logger
from .__version__ import __author__, __date__, __version__
from .config import Config, KnotRecord, load_config_from_file, merge_configs
from .constants import (
    EXIT_DISAGREEMENT,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_USAGE,
    KNOT_FILE_FORMATS,
    OUTPUT_FORMATS,
    REPORT_SCHEMA_VERSION,
)
from .knot_io import load_bundled_corpus, parse_knot_file, select_knots
from .logger import setup_logging
from .pipeline import alexander_for, analyze_corpus, build_representations
from .report_generator import (
    build_report_document,
    generate_all_reports,
    poly_key,
    print_summary_report,
    render_json,
    representation_to_dict,
    format_representations,
    write_json_report,
)
from .utils import AlexdecError

COMMANDS = ("alexander", "decompose", "verify", "rep")


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common_options() -> argparse.ArgumentParser:
    common = CliParser(add_help=False)

    # Input
    common.add_argument(
        "--knot-file",
        default=argparse.SUPPRESS,
        help="JSON or CSV file of Seifert matrices (default: bundled corpus)",
    )
    common.add_argument(
        "--knot-format",
        choices=KNOT_FILE_FORMATS,
        default=argparse.SUPPRESS,
        help="Knot file format (default: from the file extension)",
    )
    common.add_argument(
        "--knot",
        dest="knots",
        action="append",
        default=argparse.SUPPRESS,
        help="Knot name to process; repeat for several (default: all)",
    )

    # Output options
    common.add_argument(
        "--format",
        dest="output_format",
        choices=OUTPUT_FORMATS,
        default=argparse.SUPPRESS,
        help="Report format on stdout (default: text)",
    )
    common.add_argument(
        "--output-dir",
        default=argparse.SUPPRESS,
        help="Also write JSON and CSV reports into this directory",
    )
    common.add_argument(
        "--no-timing",
        action="store_true",
        default=argparse.SUPPRESS,
        help="Omit timings so reports are byte-identical across runs",
    )
    common.add_argument(
        "--logfile-dir",
        default=argparse.SUPPRESS,
        help="Directory for log files (default: no log file)",
    )

    # Computation options
    common.add_argument(
        "--max-n",
        type=int,
        default=argparse.SUPPRESS,
        help="Highest filtration level (default: multiplicity + 2 per root class)",
    )
    common.add_argument(
        "--seed",
        type=int,
        default=argparse.SUPPRESS,
        help="Seed for the randomized homomorphism check (default: 0)",
    )
    common.add_argument(
        "--trials",
        type=int,
        default=argparse.SUPPRESS,
        help="Random pairs per homomorphism check (default: 100)",
    )
    common.add_argument(
        "--level",
        type=int,
        default=argparse.SUPPRESS,
        help="Representation level n for 'rep' (default: 2)",
    )
    common.add_argument(
        "--verify-snf",
        action="store_true",
        default=argparse.SUPPRESS,
        help="Check the Smith form certificate U*A*W = D",
    )

    # Execution options
    common.add_argument(
        "--debug",
        action="store_true",
        default=argparse.SUPPRESS,
        help="Enable debug logging",
    )
    common.add_argument(
        "--parallel",
        type=int,
        default=argparse.SUPPRESS,
        help="Number of knots processed concurrently (default: 1)",
    )
    common.add_argument(
        "--config",
        default=argparse.SUPPRESS,
        help="Load configuration from JSON file (CLI args override file values)",
    )
    return common


def create_parser() -> argparse.ArgumentParser:
    """Create argument parser with all CLI options."""
    description = f"""Alexander module decomposition and metabelian representations
---------------------------------------------------------------
author: {__author__}
version: {__version__}
date: {__date__}
"""
    common = _common_options()
    parser = CliParser(
        prog="alexdec",
        description=description,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  alexdec alexander --knot 3_1
  alexdec decompose --knot 10_99
  alexdec verify --format json --no-timing
  alexdec rep --knot 10_99 --level 3 --trials 500
  alexdec verify --knot-file knots.csv --output-dir reports --parallel 4
        """,
    )
    parser.add_argument(
        "--version",
        "-v",
        action="version",
        version=f"%(prog)s {__version__}",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    subparsers.add_parser(
        "alexander", parents=[common], help="Print the normalized Alexander polynomial"
    )
    subparsers.add_parser(
        "decompose", parents=[common], help="Decompose the Alexander module by the filtration"
    )
    subparsers.add_parser(
        "verify", parents=[common], help="Decompose and cross-check with the Smith form"
    )
    subparsers.add_parser(
        "rep", parents=[common], help="Build metabelian representations at one level"
    )
    return parser


def load_records(config: Config, knot_format: Optional[str] = None) -> List[KnotRecord]:
    """Load the requested knots from the knot file or the bundled corpus."""
    log = logger.get_logger(__name__)
    if config.knot_file:
        records = parse_knot_file(config.knot_file, knot_format)
    else:
        log.info("Using the bundled knot corpus")
        records = load_bundled_corpus()
    return select_knots(records, config.knots)


def run_alexander(config: Config, records: Sequence[KnotRecord]) -> int:
    results = [(r.name, alexander_for(r)) for r in records]
    if config.output_format == "json":
        document = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "command": "alexander",
            "knots": [
                {
                    "name": name,
                    "alexander": poly_key(alexander.delta),
                    "alexander_unit": {"sign": alexander.sign, "t_power": alexander.t_power},
                }
                for name, alexander in results
            ],
        }
        sys.stdout.write(render_json(document))
    elif len(results) == 1:
        print(results[0][1].delta)
    else:
        for name, alexander in results:
            print(f"{name}: {alexander.delta}")
    return EXIT_OK


def run_decompose(config: Config, records: Sequence[KnotRecord], command: str) -> int:
    with_oracle = command == "verify"
    reports = analyze_corpus(records, config, with_oracle=with_oracle)
    document = build_report_document(
        reports, command, config.seed, include_timing=not config.no_timing
    )

    generated_files: List[str] = []
    if config.output_dir:
        generated_files = generate_all_reports(document, reports, config.output_dir)

    if config.output_format == "json":
        sys.stdout.write(render_json(document))
    else:
        print_summary_report(reports, generated_files)

    if not all(r.agrees for r in reports):
        logger.get_logger(__name__).warning("Decompositions disagree")
        return EXIT_DISAGREEMENT
    return EXIT_OK


def run_rep(config: Config, records: Sequence[KnotRecord]) -> int:
    if len(records) != 1:
        print("Error: 'rep' needs exactly one --knot", file=sys.stderr)
        return EXIT_USAGE
    reps = build_representations(records[0], config)
    document: Dict[str, Any] = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "command": "rep",
        "seed": config.seed,
        "trials": config.trials,
        "representations": [representation_to_dict(rep) for rep in reps],
    }
    if config.output_dir:
        write_json_report(document, config.output_dir, "alexdec_rep")

    if config.output_format == "json":
        sys.stdout.write(render_json(document))
    else:
        print(format_representations(reps))
    return EXIT_OK if all(rep.passed for rep in reps) else EXIT_DISAGREEMENT


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    parser = create_parser()
    try:
        cli_args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config_file_data = None
        if getattr(cli_args, "config", None):
            config_file_data = load_config_from_file(cli_args.config)
        config = merge_configs(vars(cli_args), config_file_data)
    except (FileNotFoundError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    setup_logging(config.debug, config.logfile_dir)
    log = logger.get_logger(__name__)
    log.info(f"alexdec {__version__} starting: {cli_args.command}")

    try:
        records = load_records(config, getattr(cli_args, "knot_format", None))
        if cli_args.command == "alexander":
            return run_alexander(config, records)
        if cli_args.command == "rep":
            return run_rep(config, records)
        return run_decompose(config, records, cli_args.command)

    except KeyboardInterrupt:
        print("\nOperation cancelled by user", file=sys.stderr)
        return EXIT_USAGE
    except AlexdecError as e:
        print(f"Error: {e}", file=sys.stderr)
        log.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except FileNotFoundError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        log.exception("Unhandled exception")
        return EXIT_DISAGREEMENT


if __name__ == "__main__":
    sys.exit(main())
