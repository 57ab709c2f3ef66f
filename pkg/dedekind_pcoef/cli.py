import argparse
import json
import logging
import sys
from typing import List

import yaml

from dedekind_pcoef.collections import KNOWN_CLASS_COUNTS, CliCommand, ComputationMethod, ReportFormat
from dedekind_pcoef.config import (
    DEFAULT_MAX_N_CLASSES,
    DEFAULT_ORACLE_SAMPLE_SEED,
    DEFAULT_REPORT_FORMAT,
    DEFAULT_SHARD_COUNT,
    DEFAULT_WORKERS,
)
from dedekind_pcoef.engine import compute, consistency_matrix, oracle_check
from dedekind_pcoef.exceptions import CapabilityException, ConsistencyException, DedekindException
from dedekind_pcoef.lattice import (
    SystemInstance,
    connector_number,
    count_solutions,
    decompose_connections,
    enumerate_classes,
    p_general,
    reduce_instance,
)
from dedekind_pcoef.run_config import RunConfig
from dedekind_pcoef.tables import reproduce_tables
from dedekind_pcoef.utils import engine_logger


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dedekind-pcoef",
        description="Dedekind numbers from P-coefficient formulas over the antichain lattice",
    )
    parser.add_argument("--log-level", default="WARNING", help="The log level (stderr). Defaults to WARNING")
    parser.add_argument(
        "--format",
        choices=[str(f) for f in ReportFormat],
        default=str(DEFAULT_REPORT_FORMAT),
        help="The report format (stdout)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    cmd = commands.add_parser(str(CliCommand.Compute), help="Compute a Dedekind number by one formula")
    cmd.add_argument("--method", choices=[str(m) for m in ComputationMethod], required=True)
    cmd.add_argument("--n", type=int, required=True, help="The base set size")
    cmd.add_argument("--workers", type=int, default=DEFAULT_WORKERS)
    cmd.add_argument("--reduce-symmetry", action="store_true", help="Sum the outer variable over classes")
    cmd.add_argument("--checkpoint", default=None, help="Checkpoint file, resumed if it exists")
    cmd.add_argument("--shards", type=int, default=DEFAULT_SHARD_COUNT)
    cmd.add_argument("--stop-after", type=int, default=None, help="Stop after this many shards")

    cmd = commands.add_parser(str(CliCommand.Consistency), help="Compare every method on D(0)..D(max_n)")
    cmd.add_argument("--max-n", type=int, default=6)

    cmd = commands.add_parser(str(CliCommand.PCoef), help="Evaluate the P-coefficient of one system")
    cmd.add_argument("--n", type=int, required=True, help="The base set size")
    cmd.add_argument("--alpha", required=True, help="The meet right hand side, e.g. {12,3}")
    cmd.add_argument(
        "--beta",
        action="append",
        required=True,
        help="A join right hand side, repeated in pair order 12, 13, .., 23, ..",
    )
    cmd.add_argument("--normalize", action="store_true", help="Absorb comparable sets instead of failing")
    cmd.add_argument("--oracle", action="store_true", help="Also count the solutions by search")
    cmd.add_argument("--unrestricted", action="store_true", help="Search over all of D_n (with --oracle)")

    cmd = commands.add_parser(str(CliCommand.Classes), help="Count the antichain classes under permutations")
    cmd.add_argument("--n", type=int, required=True, help="The base set size")

    cmd = commands.add_parser(str(CliCommand.OracleCheck), help="Certify P-coefficients against the oracle")
    cmd.add_argument("--n", type=int, required=True, help="The base set size")
    cmd.add_argument("--r", type=int, required=True, help="The number of variables")
    cmd.add_argument("--samples", type=int, default=None, help="Random systems, exhaustive if omitted")
    cmd.add_argument("--seed", type=int, default=DEFAULT_ORACLE_SAMPLE_SEED)

    commands.add_parser(str(CliCommand.Tables), help="Reproduce the worked formula tables")
    return parser


def run_compute(args) -> dict:
    config = RunConfig(
        ComputationMethod(args.method),
        args.n,
        workers=args.workers,
        reduce_symmetry=args.reduce_symmetry,
        checkpoint_path=args.checkpoint,
        shard_count=args.shards,
        stop_after=args.stop_after,
    )
    return compute(config).as_dict()


def run_pcoef(args) -> dict:
    inst = SystemInstance.parse(args.alpha, args.beta, args.n, normalize=args.normalize)
    report = {
        "system": str(inst),
        "r": inst.r,
        "p": str(p_general(inst)),
        "reduction": reduce_instance(inst).as_dict(),
    }
    if inst.is_alpha_below_all():
        report["literal_connections"] = repr(decompose_connections(inst))
        if inst.r == 2:
            report["connector_number"] = connector_number(inst.alpha, inst.betas[0])
    if args.oracle:
        report["oracle"] = str(count_solutions(inst, unrestricted=args.unrestricted))
    return report


def run_classes(args) -> dict:
    if args.n > DEFAULT_MAX_N_CLASSES:
        raise CapabilityException(
            f"Class enumeration is capped at n <= {DEFAULT_MAX_N_CLASSES}",
            cap_name="max_n_classes",
            cap_value=DEFAULT_MAX_N_CLASSES,
        )
    classes = enumerate_classes(args.n, max_n=DEFAULT_MAX_N_CLASSES)
    report = {
        "n": args.n,
        "classes": len(classes),
        "antichains": str(sum(c.orbit_size for c in classes)),
        "representatives": [
            {"representative": str(c.representative), "orbit_size": c.orbit_size} for c in classes
        ],
    }
    if args.n < len(KNOWN_CLASS_COUNTS) and len(classes) != KNOWN_CLASS_COUNTS[args.n]:
        raise ConsistencyException(
            f"Found {len(classes)} classes for n={args.n}, expected {KNOWN_CLASS_COUNTS[args.n]}",
            context=report,
        )
    return report


def execute(args) -> dict:
    command = CliCommand(args.command)
    if command == CliCommand.Compute:
        return run_compute(args)
    if command == CliCommand.Consistency:
        return {"consistency": consistency_matrix(args.max_n)}
    if command == CliCommand.PCoef:
        return run_pcoef(args)
    if command == CliCommand.Classes:
        return run_classes(args)
    if command == CliCommand.OracleCheck:
        return oracle_check(args.n, args.r, samples=args.samples, seed=args.seed)
    return {"tables": reproduce_tables()}


def write_report(report: dict, report_format: ReportFormat, stream=None):
    stream = stream or sys.stdout
    if report_format == ReportFormat.Json:
        stream.write(json.dumps(report, indent=2) + "\n")
    else:
        stream.write(yaml.safe_dump(report, sort_keys=False))


def main(argv: List[str] = None) -> int:
    """The command line entry point.

    Returns:
        int: The exit status, 0 on success, the exception exit code on failure.
    """
    args = create_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), stream=sys.stderr)
    report_format = ReportFormat(args.format)
    try:
        report = execute(args)
    except DedekindException as ex:
        engine_logger.error(f"{ex.__class__.__name__}: {ex}")
        error = {"error": ex.__class__.__name__, "message": str(ex)}
        if isinstance(ex, CapabilityException) and ex.cap_name is not None:
            error["cap"] = {"name": ex.cap_name, "value": ex.cap_value}
        if isinstance(ex, ConsistencyException):
            error["context"] = ex.context
        write_report(error, report_format)
        return ex.exit_code
    write_report(report, report_format)
    return 0
