"""Main entry point for the DecoChain command-line interface."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Final

from . import __version__, paths
from .calibration import DEFAULT_BRACKET
from .config import RunConfig, load_config
from .errors import NumericalError
from .logging_utils import setup_logging
from .model import CaseId, validate
from .templates import DEFAULT_CONFIG_YAML
from .workflow import BATH_PRODUCT_PARAM, calibrate, reproduce_figure, run_diffusion, run_gamma, sweep

logger = logging.getLogger(__name__)

EXIT_OK: Final[int] = 0
EXIT_UNEXPECTED: Final[int] = 1
EXIT_USAGE: Final[int] = 2
EXIT_NUMERICAL: Final[int] = 3

_DEFAULT_OUTPUTS: Final[dict[str, str]] = {"diffusion": "diffusion.csv", "gamma": "gamma.csv"}

# (flag, config key, type)
_PARAM_FLAGS: Final[tuple[tuple[str, str, type], ...]] = (
    ("--omega", "omega", float),
    ("--omega-B", "omega_B", float),
    ("--lambda", "lambda", float),
    ("--gamma0", "gamma0", float),
    ("--kT", "kT", float),
    ("--sigma", "sigma", float),
    ("--sigma-A", "sigma_A", float),
    ("--sigma-p0", "sigma_p0", float),
    ("--hbar", "hbar", float),
    ("--mass-A", "mass_A", float),
    ("--mass-B", "mass_B", float),
    ("--cutoff", "cutoff", float),
    ("--bath-product", "bath_product", float),
    ("--horizon", "horizon", float),
    ("--points", "points", int),
    ("--epsilon", "epsilon", float),
    ("--workers", "workers", int),
    ("--separation", "coherence_separation", float),
)


def _common_parser() -> argparse.ArgumentParser:
    """Return the parent parser holding the flags every computing command accepts."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Flat JSON or YAML configuration file; flags override its keys.")
    common.add_argument("--debug", action="store_true", help="Enable debug level logging.")
    for flag, key, kind in _PARAM_FLAGS:
        common.add_argument(flag, dest=key, type=kind, default=None)
    common.add_argument("--method", choices=["closed_form", "quadrature", "both"], default=None)
    common.add_argument("--prefactor-scope", dest="prefactor_scope", choices=["both", "first_only"], default=None)
    common.add_argument("--cases", nargs="+", choices=[c.value for c in CaseId], default=None, help="Cases to evaluate (default: a b c d).")
    return common


def _build_parser() -> argparse.ArgumentParser:
    """Build the DecoChain argument parser with one subparser per command."""
    parser = argparse.ArgumentParser(prog="decochain", description="Decoherence of a subsystem coupled to a bath through an intermediate oscillator")
    parser.add_argument("-v", "--version", action="version", version=f"DecoChain {__version__}", help="Show the version number and exit.")
    common = _common_parser()
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    init_parser = subparsers.add_parser("init", help="Write a default configuration file.")
    init_parser.add_argument("path", nargs="?", default=".", help="Directory to write decochain.yaml into (default: current directory).")
    init_parser.add_argument("--debug", action="store_true", help="Enable debug level logging.")

    diffusion_parser = subparsers.add_parser("diffusion", parents=[common], help="Sample D(t) for each case.")
    diffusion_parser.add_argument("--out", default=None, help="Output CSV (default: diffusion.csv).")

    gamma_parser = subparsers.add_parser("gamma", parents=[common], help="Sample Gamma(t) and estimate decoherence times.")
    gamma_parser.add_argument("--out", default=None, help="Output CSV (default: gamma.csv); a JSON sidecar is written next to it.")

    figure_parser = subparsers.add_parser("reproduce-figure", parents=[common], help="Write the panel datasets of a reference figure.")
    figure_parser.add_argument("--id", dest="figure_id", type=int, required=True, choices=[1, 2, 3, 4])
    figure_parser.add_argument("--out", required=True, help="Output directory for fig<id>_<panel>.csv files.")

    calibrate_parser = subparsers.add_parser("calibrate-lambda", parents=[common], help="Find the coupling that gives a target decoherence time.")
    calibrate_parser.add_argument("--case", required=True, choices=[c.value for c in CaseId])
    calibrate_parser.add_argument("--target", type=float, required=True, help="Target threshold decoherence time.")
    calibrate_parser.add_argument("--bracket", type=float, nargs=2, default=list(DEFAULT_BRACKET), metavar=("LOW", "HIGH"))
    calibrate_parser.add_argument("--out", default=None, help="Optional CSV for the per-case table.")

    sweep_parser = subparsers.add_parser("sweep", parents=[common], help="Recompute decoherence times over values of one parameter.")
    sweep_parser.add_argument("--param", required=True, help=f"A model parameter name or '{BATH_PRODUCT_PARAM}'.")
    sweep_parser.add_argument("--values", type=float, nargs="+", required=True)
    sweep_parser.add_argument("--out", required=True, help="Output CSV.")

    return parser


def _init_project(target_path: str) -> int:
    """Write the default configuration into target_path unless one already exists."""
    path = Path(target_path).resolve()
    if not path.is_dir():
        logger.error("Path is not a directory: %s", path)
        return EXIT_USAGE
    config_file = path / paths.CONFIG_FILE_NAME
    if config_file.exists():
        logger.warning("Configuration file already exists at: %s", config_file)
        return EXIT_OK
    paths.atomic_write_text(config_file, DEFAULT_CONFIG_YAML)
    logger.info("Created default configuration at: %s", config_file)
    return EXIT_OK


def _build_config(args: argparse.Namespace) -> RunConfig:
    """Merge the optional config file with command-line overrides."""
    file_data = load_config(args.config) if args.config else {}
    overrides: dict[str, Any] = {key: getattr(args, key) for _, key, _ in _PARAM_FLAGS}
    overrides.update(method=args.method, prefactor_scope=args.prefactor_scope, cases=args.cases)
    return RunConfig.from_sources(file_data, overrides)


def _output_path(args: argparse.Namespace, config: RunConfig) -> Path:
    return Path(args.out or config.output or _DEFAULT_OUTPUTS[args.command])


def _log_dir(args: argparse.Namespace) -> Path:
    """Return the directory whose logs/ subfolder receives the debug log."""
    if args.command == "reproduce-figure":
        return Path(args.out)
    if args.command == "init":
        return Path(args.path)
    out = getattr(args, "out", None)
    return Path(out).parent if out else Path.cwd()


def _dispatch(args: argparse.Namespace) -> int:
    """Run the selected command and return its exit code."""
    if args.command == "init":
        return _init_project(args.path)

    config = _build_config(args)
    validate(config.params)
    if args.command in _DEFAULT_OUTPUTS:
        runner = run_diffusion if args.command == "diffusion" else run_gamma
        runner(config, _output_path(args, config), debug=args.debug)
    elif args.command == "reproduce-figure":
        reproduce_figure(args.figure_id, config, Path(args.out))
    elif args.command == "calibrate-lambda":
        calibrate(config, CaseId(args.case), args.target, bracket=tuple(args.bracket), output=Path(args.out) if args.out else None)
    elif args.command == "sweep":
        sweep(config, args.param, args.values, Path(args.out))
    return EXIT_OK


def main(argv: list[str] | None = None) -> None:
    """
    Run the main entry point for the DecoChain command-line interface.

    Exit codes: 0 success, 2 usage or configuration error, 3 numerical
    failure, 1 anything unexpected.
    """
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        sys.exit(EXIT_USAGE)

    setup_logging(version=__version__, debug=args.debug, output_dir=_log_dir(args))

    try:
        code = _dispatch(args)
    except (ValueError, FileNotFoundError) as e:
        logger.error("Invalid input: %s", e)  # noqa: TRY400
        sys.exit(EXIT_USAGE)
    except NumericalError as e:
        logger.error("Numerical failure: %s", e)  # noqa: TRY400
        sys.exit(EXIT_NUMERICAL)
    except Exception:
        logger.exception("An unexpected error occurred")
        sys.exit(EXIT_UNEXPECTED)

    if code != EXIT_OK:
        sys.exit(code)
    logger.info("Done.")


if __name__ == "__main__":
    main()
