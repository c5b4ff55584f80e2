"""Command-line front end package for gamma evaluations, sweeps and validation."""

from cli.config_loader import load_config
from cli.parser import build_parser

__all__ = [
    "build_parser",
    "load_config"
]
