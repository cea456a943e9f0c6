"""
Command-line front end of the Fuchsian apparent-singularity engine.
Runs locally and writes a JSON report to stdout or --output.

Usage:
    python run_local.py solve --sample 3 --seed 7
    python run_local.py solve --config config.json --output solved.json
    python run_local.py verify --equation solved.json
    python run_local.py discriminant --sample 3 --blocks --factor --minors --degree q1
    python run_local.py intersect --seed 11
    python run_local.py blowup --point intersect.json
    python run_local.py confvand --nodes "0:2,1:3,inf:1"

Exit codes: 0 success, 1 validation or consistency failure, 2 structured degenerate case.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import engine_service
from fuchsian_app.constants import DEFAULT_INTERSECT_K, EXIT_FAILURE, INTERSECT_SAMPLES
from fuchsian_app.types import Command, FuchsianError, G1Convention

logger = logging.getLogger(__name__)


def print_header(text: str):
    """Print a formatted header."""
    print("\n" + "=" * 80, file=sys.stderr)
    print(f"  {text}", file=sys.stderr)
    print("=" * 80 + "\n", file=sys.stderr)


def print_section(title: str):
    """Print a section header."""
    print(f"\n{'─' * 80}", file=sys.stderr)
    print(f"  {title}", file=sys.stderr)
    print(f"{'─' * 80}\n", file=sys.stderr)


# ---------------------------------------------------------------------------
# Arguments
# ---------------------------------------------------------------------------

def _add_config_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    source = parser.add_mutually_exclusive_group(required=required)
    source.add_argument("--config", help="JSON configuration file (or a report that embeds one)")
    source.add_argument("--sample", type=int, metavar="N", help="draw a random valid configuration of order N")
    parser.add_argument("--seed", type=int, help="RNG seed (default FUCHSIAN_SEED)")


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--g1", choices=[c.value for c in G1Convention], help="G1 convention (default FUCHSIAN_G1_CONVENTION)")
    parser.add_argument("--output", help="write the JSON report here instead of stdout")
    parser.add_argument("--save", action="store_true", help="also store the report under FUCHSIAN_REPORT_DIR")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="run_local.py",
        description="Exact construction and discriminant analysis of third-order Fuchsian equations.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser(Command.SOLVE.value, help="solve system (T) for G, H and I")
    _add_config_arguments(solve)
    _add_common_arguments(solve)

    verify = commands.add_parser(Command.VERIFY.value, help="check exponents and apparentness of a solved equation")
    verify.add_argument("--equation", required=True, help="equation JSON or solve report ('-' reads stdin)")
    verify.add_argument("--config", help="configuration file (defaults to the one embedded in a solve report)")
    verify.add_argument("--order", type=int, help="Frobenius truncation order")
    verify.add_argument("--output", help="write the JSON report here instead of stdout")
    verify.add_argument("--save", action="store_true", help="also store the report under FUCHSIAN_REPORT_DIR")

    disc = commands.add_parser(Command.DISCRIMINANT.value, help="sigma_1, its block expansion, factorizations and minors")
    _add_config_arguments(disc)
    _add_common_arguments(disc)
    disc.add_argument("--blocks", action="store_true", help="Laplace block expansion of sigma_1")
    disc.add_argument("--factor", action="store_true", help="chi/phi factorizations of sigma_1 and sigma_f (n = 3)")
    disc.add_argument("--minors", action="store_true", help="minors of M_b with their pinned ratios")
    disc.add_argument("--degree", action="append", default=[], metavar="VAR", help="degree probe of sigma_1 in VAR (e.g. q1)")
    disc.add_argument("--samples", type=int, help="interpolation samples for --degree")

    intersect = commands.add_parser(Command.INTERSECT.value, help="rational points of V_1 and V-hat in the (p1, p2) plane")
    _add_config_arguments(intersect, required=False)
    _add_common_arguments(intersect)
    intersect.add_argument("--k", type=int, default=DEFAULT_INTERSECT_K, help="minor index defining V-hat")
    intersect.add_argument("--samples", type=int, default=INTERSECT_SAMPLES, help="interpolation samples in p2")

    blowup = commands.add_parser(Command.BLOWUP.value, help="the family of equations over an intersection point")
    blowup.add_argument("--point", help="intersect report or point configuration (default: a planted point)")
    blowup.add_argument("--index", type=int, default=0, help="which certified point of an intersect report")
    blowup.add_argument("--seed", type=int, help="seed for the planted point when --point is omitted")
    blowup.add_argument("--k", type=int, default=DEFAULT_INTERSECT_K, help="minor index defining V-hat")
    blowup.add_argument("--order", type=int, help="Frobenius truncation order")
    _add_common_arguments(blowup)

    confvand = commands.add_parser(Command.CONFVAND.value, help="print a confluent Vandermonde matrix and its determinant")
    confvand.add_argument("--nodes", required=True, help="comma-separated x:multiplicity, 'inf:1' for infinity")
    confvand.add_argument("--output", help="write the JSON report here instead of stdout")
    return parser


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _read_json(path: str) -> Dict[str, Any]:
    if path == "-":
        return json.loads(sys.stdin.read())
    return engine_service.load_json(path)


def _dispatch(args: argparse.Namespace) -> Dict[str, Any]:
    command = Command(args.command)

    if command is Command.SOLVE:
        config, source, seed = engine_service.resolve_config(config_path=args.config, sample_n=args.sample, seed=args.seed)
        return engine_service.run_solve(config, source, seed, args.g1, args.output, args.save)

    if command is Command.VERIFY:
        config = engine_service.as_config(engine_service.load_json(args.config)) if args.config else None
        return engine_service.run_verify(_read_json(args.equation), config, args.equation, args.order, args.output, args.save)

    if command is Command.DISCRIMINANT:
        config, source, seed = engine_service.resolve_config(config_path=args.config, sample_n=args.sample, seed=args.seed)
        return engine_service.run_discriminant(
            config, source, seed, args.g1,
            blocks=args.blocks, factor=args.factor, minors=args.minors,
            degree=args.degree, samples=args.samples,
            output_path=args.output, save=args.save,
        )

    if command is Command.INTERSECT:
        if args.config is None and args.sample is None:
            config, seed = engine_service.planted_base(args.seed, args.g1)
            source = f"planted:seed={seed}"
        else:
            config, source, seed = engine_service.resolve_config(config_path=args.config, sample_n=args.sample, seed=args.seed)
        return engine_service.run_intersect(config, source, seed, args.k, args.g1, args.samples, args.output, args.save)

    if command is Command.BLOWUP:
        if args.point:
            point = engine_service.point_from(engine_service.load_json(args.point), args.index)
            source = args.point
        else:
            base, seed = engine_service.planted_base(args.seed, args.g1)
            intersection = engine_service.run_intersect(base, f"planted:seed={seed}", seed, args.k, args.g1)
            point = engine_service.point_from(intersection, args.index)
            source = f"planted:seed={seed}"
        return engine_service.run_blowup(point, source, args.k, args.g1, args.order, args.output, args.save)

    return engine_service.run_confvand(args.nodes, args.output)


def _emit(report: Dict[str, Any], output: Optional[str]) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
        print(f"✓ Report saved to {output}", file=sys.stderr)
    else:
        print(text)


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point. Returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    print_header(f"FUCHSIAN ENGINE - {args.command.upper()}")
    try:
        report = _dispatch(args)
    except FuchsianError as exc:
        logger.error("%s failed: %s", args.command, exc, exc_info=True)
        report = engine_service.error_report(Command(args.command), exc)
    except Exception as exc:
        logger.exception("%s failed unexpectedly", args.command)
        report = {"command": args.command, "error": type(exc).__name__, "message": str(exc), "exit_code": EXIT_FAILURE}

    _emit(report, getattr(args, "output", None))
    print_section(f"exit code {report['exit_code']}")
    return report["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
