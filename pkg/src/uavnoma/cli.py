"""Command-line entry point: ``uavnoma {dof,sweep,single}``.

Exit codes: 0 success, 2 config error, 3 feasibility or solver error,
4 interference-verification failure.
"""

import argparse
import json
import sys

from .errors import (
    AssumptionViolated,
    ConfigError,
    InfeasibleZF,
    InterferenceVerificationError,
    InvalidStreamCount,
    RankDeficiency,
    SizeSumMismatch,
    SolverError,
)
from .simulation import DOF_COLUMNS, MODES, SimConfig, rows_to_csv, run_dof_experiment, run_rate_sweep, run_single

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_INTERFERENCE = 0, 2, 3, 4


def _parser():
    parser = argparse.ArgumentParser(prog="uavnoma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file (defaults used when omitted)")
        p.add_argument("--seed", type=int, help="overrides master_seed from the config")
        p.add_argument("--out", help="output path (stdout when omitted)")

    common(sub.add_parser("dof", help="maximum-DoF table versus antenna count (CSV)"))
    sweep = sub.add_parser("sweep", help="sum rate versus transmit power (CSV)")
    common(sweep)
    sweep.add_argument("--modes", default=",".join(MODES),
                       help="comma-separated association modes (default: %(default)s)")
    sweep.add_argument("--workers", type=int, default=1, help="worker processes")
    single = sub.add_parser("single", help="one solved channel draw (JSON record)")
    common(single)
    single.add_argument("--power-dbm", type=float, default=30.0, help="UAV power budget (default: %(default)s)")
    single.add_argument("--mode", choices=MODES, help="association mode (default: from config)")
    return parser


def _load(args):
    config = SimConfig.load(args.config) if args.config else SimConfig()
    if args.seed is not None:
        if not 0 <= args.seed < 2 ** 64:
            raise ConfigError("--seed must be an unsigned 64-bit integer")
        config = config.replace(master_seed=args.seed)
    return config


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    args = _parser().parse_args(argv)
    try:
        config = _load(args)
        if args.command == "dof":
            text = rows_to_csv(run_dof_experiment(config), DOF_COLUMNS)
        elif args.command == "sweep":
            modes = [m.strip() for m in args.modes.split(",") if m.strip()]
            text = run_rate_sweep(config, modes, n_workers=args.workers).to_csv()
        else:
            record = run_single(config, config.master_seed, args.power_dbm, args.mode)
            text = json.dumps(record, indent=2, allow_nan=False) + "\n"
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InterferenceVerificationError as exc:
        print(f"interference verification failed: {exc}", file=sys.stderr)
        return EXIT_INTERFERENCE
    except (AssumptionViolated, InvalidStreamCount, InfeasibleZF, RankDeficiency,
            SizeSumMismatch, SolverError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    _emit(text, args.out)
    return EXIT_OK


def main():
    sys.exit(run())
