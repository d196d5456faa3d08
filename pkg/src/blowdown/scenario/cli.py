"""
Command line interface.

Exit codes: 0 on success, 1 if the arguments or a scenario don't parse or a stage
fails, 2 if a computed value disagrees with what was declared or expected, and 3 for
anything else.
"""

from __future__ import annotations
import argparse
import logging
import sys
from typing import Optional, Sequence

from blowdown import __version__
from blowdown.scenario.acceptance import run_acceptance
from blowdown.scenario.pipeline import (
    MismatchError,
    Report,
    RunOptions,
    StageError,
    run,
    verify_config,
)
from blowdown.scenario.report import render_machine, render_text
from blowdown.scenario.schema import (
    BUILTINS,
    Scenario,
    ScenarioError,
    load_builtin,
    load_scenario,
)


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISMATCH = 2
EXIT_INTERNAL = 3


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        message = f"expected an integer, got {text!r}"
        raise argparse.ArgumentTypeError(message) from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _add_scenario_arguments(parser: argparse.ArgumentParser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("path", nargs="?", help="path to a scenario file (YAML)")
    source.add_argument(
        "--builtin", choices=BUILTINS, help="run a scenario which ships with blowdown"
    )
    parser.add_argument(
        "--format",
        choices=("text", "machine"),
        default="text",
        help="human-readable text, or deterministic JSON",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="blowdown",
        description=(
            "Exact bookkeeping for rational blowdowns of plumbings in blown-up CP2."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="logging level, by default WARNING",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    run_parser = subparsers.add_parser(
        "run", help="certify, blow up, plumb, and rationally blow down"
    )
    _add_scenario_arguments(run_parser)
    run_parser.add_argument(
        "--seed",
        type=_non_negative_int,
        default=0,
        help="seed for the sign-lemma sampler",
    )
    run_parser.add_argument(
        "--samples",
        type=_non_negative_int,
        default=10_000,
        help="accepted sign-lemma samples. 0 skips the sampler",
    )
    run_parser.add_argument(
        "--expect", default=None, help="expected homeomorphism type, e.g., CP2#8-CP2"
    )

    verify_parser = subparsers.add_parser(
        "verify-config", help="only certify the curves' contacts"
    )
    _add_scenario_arguments(verify_parser)

    acceptance_parser = subparsers.add_parser(
        "acceptance", help="check the built-in scenarios against published values"
    )
    acceptance_parser.add_argument(
        "--all", action="store_true", help="run every criterion (the default)"
    )
    acceptance_parser.add_argument("--seed", type=_non_negative_int, default=0)
    acceptance_parser.add_argument("--samples", type=_non_negative_int, default=10_000)
    return parser


def _load(args: argparse.Namespace) -> Scenario:
    if args.builtin is not None:
        return load_builtin(args.builtin)
    return load_scenario(args.path)


def _emit(report: Report, format: str):
    render = render_machine if format == "machine" else render_text
    sys.stdout.write(render(report))


def _run(args: argparse.Namespace) -> int:
    scenario = _load(args)
    options = RunOptions(seed=args.seed, samples=args.samples, expect=args.expect)
    report = run(scenario, options)
    _emit(report, args.format)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def _verify_config(args: argparse.Namespace) -> int:
    scenario = _load(args)
    certification = verify_config(scenario)
    _emit(
        Report(
            scenario=scenario.name,
            options=RunOptions(samples=0),
            certification=certification,
        ),
        args.format,
    )
    return EXIT_OK


def _acceptance(args: argparse.Namespace) -> int:
    results = run_acceptance(seed=args.seed, samples=args.samples)
    for result in results:
        print(result)
    failed = sum(not result.passed for result in results)
    print(f"{len(results) - failed} passed, {failed} failed")
    return EXIT_OK if not failed else EXIT_MISMATCH


_COMMANDS = {"run": _run, "verify-config": _verify_config, "acceptance": _acceptance}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level, format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        return _COMMANDS[args.command](args)
    except (ScenarioError, StageError) as exception:
        print(f"error: {exception}", file=sys.stderr)
        return EXIT_INVALID
    except MismatchError as exception:
        print(f"mismatch: {exception}", file=sys.stderr)
        return EXIT_MISMATCH
    except Exception as exception:
        logger.exception("Internal error")
        name = type(exception).__name__
        print(f"internal error: {name}: {exception}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
