"""Command-line interface for conclab."""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from conclab.core.config import LawConfig, RunConfig, load_run_config
from conclab.core.exceptions import (
    ConcLabError,
    ConfigurationError,
    MissingScenarioConstantError,
    ScenarioError,
    UnknownBoundError,
)
from conclab.core.persistence import FileReportSaver
from conclab.core.report import BoundReport
from conclab.distributions.library import build_distribution
from conclab.functional.hardy import hardy_table_row
from conclab.functional.measures import MeasureModel
from conclab.verifier.engine import VerificationRun, build_scenario, curve, exit_code
from conclab.verifier.registry import validate_bounds
from conclab.verifier.trajectory import sample_trajectory

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

USAGE_ERRORS = (
    ConfigurationError,
    UnknownBoundError,
    ScenarioError,
    MissingScenarioConstantError,
    ValidationError,
)

CONSTANTS_COLUMNS = [
    "law",
    "A0",
    "A1",
    "pi_lower",
    "pi_upper",
    "B0",
    "B1",
    "lsi_lower",
    "lsi_upper",
    "H",
    "sigma2_cheeger",
]


def _int_list(text: str) -> List[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got '{text}'")


def _str_list(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML run configuration")
    common.add_argument("--seed", type=int, help="64-bit master seed")
    common.add_argument("--out", help="output directory")
    common.add_argument("--bounds", type=_str_list, help="comma-separated bound ids")
    common.add_argument("--n", type=_int_list, help="comma-separated n values")
    common.add_argument("--reps", type=int, help="Monte Carlo replications")
    common.add_argument("--slack", type=float, help="slack in standard errors")
    common.add_argument("--c0", type=float, help="lower Hardy bracket constant")
    common.add_argument("--c1", type=float, help="upper Hardy bracket constant")
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="root log level",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    """The conclab argument parser with its four subcommands."""
    parser = argparse.ArgumentParser(
        description="Empirical verification of concentration bounds",
        prog="conclab",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    common = _common_flags()

    subparsers.add_parser(
        "verify", parents=[common], help="Run catalog entries and write reports"
    )
    subparsers.add_parser(
        "constants", parents=[common], help="Tabulate Hardy and Cheeger constants"
    )
    curve_parser = subparsers.add_parser(
        "curve", parents=[common], help="Write decay curves over the n-sweep"
    )
    curve_parser.add_argument(
        "--trajectory",
        action="store_true",
        help="also write W1 along one nested sample path",
    )
    subparsers.add_parser(
        "simulate", parents=[common], help="Dump sampled spectra"
    )
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "seed": args.seed,
        "out": args.out,
        "bounds": args.bounds,
        "n": args.n,
        "replications": args.reps,
        "slack_sigmas": args.slack,
        "c0": args.c0,
        "c1": args.c1,
    }


def _print_reports(reports: Sequence[BoundReport]) -> None:
    for r in reports:
        status = "pass" if r.passed else "FAIL"
        note = "" if r.asserted else " (not asserted)"
        print(
            f"{r.bound_id:<20} n={r.n:<6} lhs={r.lhs_estimate:.6g} "
            f"se={r.lhs_stderr:.3g} rhs={r.rhs_value:.6g} {status}{note}"
        )


def cmd_verify(config: RunConfig) -> int:
    """Run the configured bounds; exit 0 iff every asserted entry passes."""
    bounds = validate_bounds(config.bounds)
    if not bounds:
        raise ConfigurationError("no bounds configured (--bounds or 'bounds:')")
    scenario = build_scenario(config)
    saver = FileReportSaver(config.out, record_runtime=config.record_runtime)
    run = VerificationRun.from_ids(bounds, saver=saver)
    reports = run.execute(scenario, config.plan())
    _print_reports(reports)
    return exit_code(reports)


def _law_label(law: LawConfig) -> str:
    if not law.params:
        return law.law
    params = ";".join(f"{k}={v}" for k, v in sorted(law.params.items()))
    return f"{law.law}({params})"


def cmd_constants(config: RunConfig) -> int:
    """Write constants.csv with one Hardy/Cheeger row per law."""
    laws = config.constants_laws or [config.scenario.law]
    rows = []
    for law in laws:
        model = MeasureModel.from_distribution(
            build_distribution(law.law, **law.params)
        )
        rows.append(
            [_law_label(law), *hardy_table_row(model, config.hardy.c0, config.hardy.c1)]
        )
    path = FileReportSaver(config.out).save_constants(CONSTANTS_COLUMNS, rows)
    print(f"wrote {len(rows)} rows to {path}")
    return EXIT_OK


def _sweep_n(config: RunConfig) -> int:
    sweep = config.sweep()
    if not sweep:
        raise ScenarioError("curve needs an n-sweep (--n or 'n_sweep:')")
    return config.n[0] if config.n else sweep[0]


def cmd_curve(config: RunConfig, trajectory: bool = False) -> int:
    """Write curves.csv (and trajectory.csv) over the n-sweep."""
    bounds = validate_bounds(config.bounds)
    if not bounds and not trajectory:
        raise ConfigurationError("no bounds configured for the curve")
    n = _sweep_n(config)
    scenario = build_scenario(config, n)
    plan = config.plan(n)
    saver = FileReportSaver(config.out)

    rows: List[list] = []
    for bound_id in bounds:
        rows.extend(curve(bound_id, plan, scenario))
    points = sample_trajectory(scenario, plan) if trajectory else []

    if bounds:
        print(f"wrote {len(rows)} rows to {saver.save_curves(rows)}")
    if trajectory:
        path = saver.save_trajectory([p.as_row() for p in points])
        print(f"wrote {len(points)} rows to {path}")
    return EXIT_OK


def cmd_simulate(config: RunConfig) -> int:
    """Write spectra.csv: sorted sampled spectra (or sorted samples)."""
    scenario = build_scenario(config)
    plan = config.plan()
    rows = [
        [replication, rank, value]
        for replication, row in enumerate(scenario.sample(plan))
        for rank, value in enumerate(sorted(row))
    ]
    path = FileReportSaver(config.out).save_spectra(rows)
    print(f"wrote {plan.replications} samples of size {plan.n} to {path}")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_OK

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    try:
        config = load_run_config(args.config, _overrides(args))
        if args.command == "verify":
            return cmd_verify(config)
        if args.command == "constants":
            return cmd_constants(config)
        if args.command == "curve":
            return cmd_curve(config, trajectory=args.trajectory)
        return cmd_simulate(config)
    except USAGE_ERRORS as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ConcLabError as e:
        logger.error(f"[CLI-{args.command}] {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except Exception as e:
        logger.exception(f"[CLI-{args.command}] unexpected error")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
