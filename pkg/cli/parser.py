"""Argument parser of the command-line front end."""

import argparse
from typing import Dict, Optional, Sequence, get_args

from schemas.sweeps import FreeParameter
from utils.exceptions import ConfigError

COMMANDS = ("gamma", "sweep-g", "sweep-beta", "sweep-delta", "wopt-profile", "optimize-delays", "validate")
GATES = ("identity", "optimal", "delay", "linear")


def parse_assignments(items: Optional[Sequence[str]]) -> Dict[str, str]:
    """Parse KEY=VALUE words into a dict; malformed words raise ConfigError."""
    result: Dict[str, str] = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"expected KEY=VALUE, got {item!r}")
        result[key.strip()] = value.strip()
    return result


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors raise ConfigError instead of exiting."""

    def error(self, message: str):
        raise ConfigError(f"{self.prog}: {message}")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="INI run configuration")
    parser.add_argument("--out", help="Output file (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"), help="Table format")
    parser.add_argument("--tol", type=float, help="Absolute quadrature tolerance")
    parser.add_argument("--log-level", help="Log level (default from REORDER_LOG_LEVEL)")


def _point(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--params", nargs="+", metavar="KEY=VALUE",
                        help="Cascade parameters, e.g. delta=10 beta=0 g=2")
    parser.add_argument("--delta", type=float, help="Exciton detuning")
    parser.add_argument("--beta", type=float, help="Cross-generation color mismatch")
    parser.add_argument("--g", type=float, help="Width ratio gamma_u/gamma")


def _gate(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--gate", choices=GATES, help="Gate family")
    parser.add_argument("--tau1", type=float, help="Delay on photon 1 (units of 1/gamma)")
    parser.add_argument("--tau2", type=float, help="Delay on photon 2 (units of 1/gamma)")
    parser.add_argument("--slope1", type=float, help="Linear phase slope on photon 1")
    parser.add_argument("--slope2", type=float, help="Linear phase slope on photon 2")
    parser.add_argument("--phase0", type=float, help="Constant gate phase in radians")


def _y2(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--drop-y2", dest="drop_y2", action="store_true", default=None,
                       help="Replace y2 by its bound (large-|delta| regime)")
    group.add_argument("--keep-y2", dest="drop_y2", action="store_false", help="Integrate y2")


def _grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--points", type=int, help="Grid size")
    parser.add_argument("--range", nargs=2, type=float, metavar=("LO", "HI"), help="Grid range")


def build_parser() -> CommandParser:
    """Parser with one subcommand per operation."""
    parser = CommandParser(
        prog="reorder",
        description="Entanglement of biexciton-cascade photon pairs restored by spectral phase gates.",
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    gamma = commands.add_parser("gamma", help="Negativity at one parameter point")
    _common(gamma)
    _point(gamma)
    _gate(gamma)
    _y2(gamma)
    gamma.add_argument("--symmetrize", action="store_true", default=None, help="Symmetrize W over photon exchange")
    gamma.add_argument("--full", action="store_true",
                       help="Full-diagram pipeline with numerical norms ([levels] required)")

    for axis, text in (("g", "width ratio g"), ("beta", "color mismatch beta"), ("delta", "detuning delta")):
        sweep = commands.add_parser(f"sweep-{axis}", help=f"Sweep gamma over the {text}")
        _common(sweep)
        _point(sweep)
        _gate(sweep)
        _y2(sweep)
        _grid(sweep)
        sweep.add_argument("--symmetrize", action="store_true", default=None,
                           help="Symmetrize W over photon exchange")
        sweep.add_argument("--workers", type=int, help="Worker threads")
        if axis == "g":
            sweep.add_argument("--log-spacing", action="store_true", default=None, help="Geometric grid")

    profile = commands.add_parser("wopt-profile", help="Phase of W_opt along kappa2 next to the delay phase")
    _common(profile)
    _grid(profile)

    optimize = commands.add_parser("optimize-delays", help="Maximize gamma over delay or slope parameters")
    _common(optimize)
    _point(optimize)
    _y2(optimize)
    optimize.add_argument("--free", nargs="+", choices=get_args(FreeParameter), metavar="NAME",
                          help="Free parameters (tau1 tau2 or slope1 slope2)")
    optimize.add_argument("--range", nargs=2, type=float, metavar=("LO", "HI"),
                          help="Bounds applied to every free parameter")
    optimize.add_argument("--grid-points", type=int, help="Grid points per free parameter")
    optimize.add_argument("--max-evaluations", type=int, help="Evaluation budget")
    optimize.add_argument("--workers", type=int, help="Worker threads for the grid stage")

    validate = commands.add_parser("validate", help="Run the oracle suite")
    _common(validate)
    validate.add_argument("--samples", type=int, help="Random points of the negativity check")
    validate.add_argument("--seed", type=int, help="Seed of the random points")
    return parser
