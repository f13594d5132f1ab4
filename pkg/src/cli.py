"""
Teleportation Fidelity CLI
Evaluate fidelities, optimize local Gaussian CP maps and sweep squeezing
"""
import argparse
import errno
import sys
from pathlib import Path
from typing import List, Optional

from loguru import logger

from src.config import Settings
from src.gaussian.channels import (
    ChannelParams,
    make_tmsv_noisy,
    parse_channel_spec,
    parse_input_spec,
    parse_sweep_family,
)
from src.gaussian.covariance import OneModeCovariance
from src.optimization.candidates import OptimizationResult, Side
from src.optimization.numeric import optimize_numeric_fallback
from src.optimization.one_sided import optimize_one_sided
from src.optimization.two_sided import optimize_swap_two_sided
from src.reporting.report import (
    dump_json,
    fidelity_report,
    optimization_report,
    print_fidelity_report,
    print_optimization_report,
    verify_fidelities,
    verify_optimization,
)
from src.reporting.sweep import SWEEP_MODES, SweepSpec, run_sweep, write_sweep
from src.utils.errors import ComputationalError, PreconditionError, ValidationError

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_USAGE = 2
EXIT_VERIFY_FAILED = 3

LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>"
)


class UsageError(ValidationError):
    """Bad command-line usage"""


class CliArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as a single 'error:' line"""

    def error(self, message: str):
        raise UsageError(message)


def setup_logging(log_level: str = "INFO", log_file: Optional[str] = None):
    """Configure logging: stderr always, rotating file sink when requested"""
    logger.remove()
    logger.add(sys.stderr, format=LOG_FORMAT, level=log_level)
    if log_file:
        logger.add(log_file, rotation="10 MB", retention="7 days", level=log_level)


def _common_options() -> argparse.ArgumentParser:
    common = CliArgumentParser(add_help=False)
    common.add_argument("--channel", help="channel JSON, inline or @file")
    common.add_argument("--out", type=Path, help="write the result to this path")
    common.add_argument("--verify", action="store_true", help="cross-check by phase-space quadrature")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized steps")
    common.add_argument("--format", choices=["text", "json"], default="text", help="stdout format")
    common.add_argument("--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="logging level")
    common.add_argument("--log-file", default=None, help="also log to this file")
    return common


def build_parser() -> CliArgumentParser:
    common = _common_options()
    parser = CliArgumentParser(
        prog="cvteleport",
        description="Continuous-variable teleportation fidelities and optimal local Gaussian CP maps",
    )
    commands = parser.add_subparsers(dest="command", parser_class=CliArgumentParser)

    fidelity = commands.add_parser("fidelity", parents=[common], help="evaluate F and/or the swap fidelity")
    fidelity.add_argument("--input", help="input state: coherent, vacuum or JSON (inline or @file)")
    fidelity.add_argument("--swap", action="store_true", help="report the swap (operation) fidelity")

    optimize = commands.add_parser("optimize", parents=[common], help="find the optimal local CP map")
    optimize.add_argument("--target", choices=["coherent", "swap"], default="coherent")
    optimize.add_argument("--input", help="pure input state; overrides the coherent target")
    optimize.add_argument("--side", choices=[s.value for s in Side], default=Side.BOB.value)
    optimize.add_argument("--symplectic-only", action="store_true", help="restrict to noiseless maps")
    optimize.add_argument("--numeric", action="store_true", help="force the numeric optimizer")

    sweep = commands.add_parser("sweep", parents=[common], help="sweep the squeezing r")
    sweep.add_argument("--b0", type=float, default=None, help="added noise (default 0.5, or from --channel)")
    sweep.add_argument("--r-min", type=float, default=0.0)
    sweep.add_argument("--r-max", type=float, default=1.0)
    sweep.add_argument("--r-steps", type=int, default=101)
    sweep.add_argument("--target", choices=["coherent", "swap"], default="coherent")
    sweep.add_argument("--side", choices=[s.value for s in Side], default=Side.BOB.value)
    sweep.add_argument("--modes", default=",".join(sorted(SWEEP_MODES)),
                       help="comma-separated subset of optimal_cp,symplectic_only,none")
    sweep.add_argument("--workers", type=int, default=None, help="parallel rows")
    return parser


def _require_channel(args):
    if not args.channel:
        raise UsageError(f"{args.command} needs --channel")
    return parse_channel_spec(args.channel)


def _emit(report: dict, args, printer) -> None:
    if args.format == "json":
        print(dump_json(report))
    else:
        printer(report)
    if args.out:
        args.out.write_text(dump_json(report) + "\n", encoding="utf-8")
        logger.info(f"Report saved to {args.out}")


def _check_out_dir(out: Optional[Path]) -> None:
    """Fail before any work when --out cannot be created"""
    if out is None:
        return
    parent = out.expanduser().resolve().parent
    if not parent.exists():
        raise FileNotFoundError(errno.ENOENT, "output directory does not exist", str(parent))
    if not parent.is_dir():
        raise NotADirectoryError(errno.ENOTDIR, "output location is not a directory", str(parent))


def cmd_fidelity(args, settings: Settings) -> int:
    """
    Closed-form fidelities of one channel

    Without --input or --swap both the coherent and the swap fidelity are
    reported.

    Args:
        args: Parsed arguments of the fidelity subcommand
        settings: Environment settings (quadrature grid and tolerance)

    Returns:
        EXIT_OK; failures propagate as exceptions mapped to exit codes by main
    """
    _check_out_dir(args.out)
    gamma = _require_channel(args)
    d: Optional[OneModeCovariance] = parse_input_spec(args.input) if args.input else None
    include_swap = args.swap
    if d is None and not include_swap:
        d, include_swap = OneModeCovariance.coherent(), True

    report = fidelity_report(gamma, d, include_swap)
    if args.verify:
        report["verification"] = verify_fidelities(
            gamma, d, include_swap, settings.verify_points, settings.verify_tolerance
        )
    _emit(report, args, print_fidelity_report)
    if args.verify and not report["verification"]["passed"]:
        raise VerificationFailed("closed-form fidelity disagrees with quadrature")
    return EXIT_OK


def _run_optimizer(args, gamma, d: Optional[OneModeCovariance], seed: int, settings: Settings) -> OptimizationResult:
    side = Side(args.side)
    if args.numeric or (side is Side.BOTH and d is not None):
        return optimize_numeric_fallback(
            gamma, d, side,
            starts=settings.fallback_starts,
            max_iter=settings.fallback_max_iter,
            seed=seed,
            symplectic_only=args.symplectic_only,
        )
    if side is Side.BOTH:
        if args.symplectic_only:
            raise UsageError("--symplectic-only is not available with --side both")
        return optimize_swap_two_sided(gamma)
    return optimize_one_sided(gamma, d, side, symplectic_only=args.symplectic_only, seed=seed)


def cmd_optimize(args, settings: Settings) -> int:
    """
    Optimal local map for a channel and target

    Args:
        args: Parsed arguments of the optimize subcommand
        settings: Environment settings (fallback starts, seed, verification)

    Returns:
        EXIT_OK; VerificationFailed is raised when --verify disagrees
    """
    _check_out_dir(args.out)
    gamma = _require_channel(args)
    if args.target == "swap":
        if args.input:
            raise UsageError("--input cannot be combined with --target swap")
        d = None
    else:
        d = parse_input_spec(args.input) if args.input else OneModeCovariance.coherent()

    seed = settings.seed if args.seed is None else args.seed
    result = _run_optimizer(args, gamma, d, seed, settings)
    logger.info(f"Winner: {result.best.kind.value} ({result.best.side.value}), fidelity={result.fidelity:.12g}")

    report = optimization_report(result)
    if args.verify:
        report["verification"] = verify_optimization(
            gamma, result, settings.verify_points, settings.verify_tolerance
        )
    _emit(report, args, print_optimization_report)
    if args.verify and not report["verification"]["passed"]:
        raise VerificationFailed("optimized fidelity disagrees with quadrature")
    return EXIT_OK


def cmd_sweep(args, settings: Settings) -> int:
    """
    Fidelity against squeezing for the noisy two-mode squeezed vacuum family

    Args:
        args: Parsed arguments of the sweep subcommand; --out is required
        settings: Environment settings (worker count, verification)

    Returns:
        EXIT_OK after the CSV and its JSON sidecar are written
    """
    if args.out is None:
        raise UsageError("sweep needs --out")
    _check_out_dir(args.out)
    b0 = args.b0
    if args.channel:
        family_b0 = parse_sweep_family(args.channel)
        if b0 is not None and abs(b0 - family_b0) > 0:
            raise UsageError(f"--b0 {b0} conflicts with channel b0 {family_b0}")
        b0 = family_b0
    modes = frozenset(m.strip() for m in args.modes.split(",") if m.strip())
    spec = SweepSpec(
        b0=0.5 if b0 is None else b0,
        r_min=args.r_min,
        r_max=args.r_max,
        r_steps=args.r_steps,
        target=args.target,
        side=args.side,
        modes=modes,
    )
    workers = settings.workers if args.workers is None else args.workers
    table = run_sweep(spec, workers=workers)
    sidecar = write_sweep(spec, table, args.out)

    if args.verify:
        _verify_sweep_rows(spec, table, settings)
    if args.format == "json":
        print(dump_json({"csv": str(args.out), "metadata": str(sidecar), "rows": len(table)}))
    else:
        print(f"Wrote {len(table)} rows to {args.out} (metadata: {sidecar})")
    return EXIT_OK


def _verify_sweep_rows(spec: SweepSpec, table, settings: Settings) -> None:
    """Quadrature check of the do-nothing column at the sweep endpoints"""
    d = OneModeCovariance.coherent() if spec.target == "coherent" else None
    for r in (spec.r_min, spec.r_max):
        gamma = make_tmsv_noisy(ChannelParams(r=r, b0=spec.b0))
        verification = verify_fidelities(gamma, d, d is None, settings.verify_points, settings.verify_tolerance)
        if not verification["passed"]:
            raise VerificationFailed(f"sweep row r={r} disagrees with quadrature")


class VerificationFailed(Exception):
    """A --verify cross-check exceeded its tolerance"""


_COMMANDS = {"fidelity": cmd_fidelity, "optimize": cmd_optimize, "sweep": cmd_sweep}


def _fail(code: int, message: str) -> int:
    print(f"error: {' '.join(str(message).split())}", file=sys.stderr)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point; returns the process exit code"""
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required: fidelity, optimize or sweep")
        settings = Settings.from_env()
        setup_logging(args.log_level or settings.log_level, args.log_file or settings.log_file)
        return _COMMANDS[args.command](args, settings)
    except VerificationFailed as exc:
        return _fail(EXIT_VERIFY_FAILED, f"verification failed: {exc}")
    except (ValidationError, PreconditionError) as exc:
        return _fail(EXIT_USAGE, exc)
    except ComputationalError as exc:
        return _fail(EXIT_COMPUTATION, f"computation failed: {exc}")
    except OSError as exc:
        return _fail(EXIT_COMPUTATION, f"I/O error: {exc}")
    except ValueError as exc:
        return _fail(EXIT_USAGE, exc)


if __name__ == "__main__":
    sys.exit(main())
