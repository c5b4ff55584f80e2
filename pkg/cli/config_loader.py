"""INI run-configuration loader with strict section and key checking."""

import configparser
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union
from loguru import logger
from pydantic import ValidationError

from schemas.config import RunConfig
from utils.exceptions import ConfigError

SECTION_KEYS: Dict[str, Tuple[str, ...]] = {
    "levels": ("e_u", "e_x", "e_y", "e_0", "gamma", "gamma_u"),
    "params": ("delta", "beta", "g"),
    "gate": ("gate", "kind", "tau1", "tau2", "slope1", "slope2", "phase0"),
    "quadrature": ("abs_tol", "max_subdivisions", "K", "truncation_factor", "richardson_check"),
    "sweep": ("range", "points", "log_spacing", "drop_y2", "symmetrize", "workers"),
    "optimize": ("free", "tau1", "tau2", "slope1", "slope2", "grid_points", "max_evaluations", "rel_tol",
                 "drop_y2", "workers"),
    "output": ("format", "path"),
}
REQUIRED_KEYS: Dict[str, Tuple[str, ...]] = {
    "levels": ("e_u", "e_x", "e_y", "gamma", "gamma_u"),
    "params": ("delta", "beta", "g"),
}
RANGE_KEYS = {"range", "tau1", "tau2", "slope1", "slope2"}


def _strip(value: str) -> str:
    value = value.strip()
    if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
        return value[1:-1].strip()
    return value


def parse_pair(text: str, what: str, section: Optional[str] = None) -> Tuple[float, float]:
    """Parse "LO HI" (space or comma separated) into two floats."""
    parts = text.replace(",", " ").split()
    try:
        if len(parts) != 2:
            raise ValueError
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise ConfigError(f"{what} must be two numbers 'LO HI', got {text!r}", section=section)


def _section_dict(parser: configparser.ConfigParser, name: str) -> Dict[str, Union[str, list, tuple, dict]]:
    raw = {key: _strip(value) for key, value in parser.items(name)}
    allowed = set(SECTION_KEYS[name])
    unknown = set(raw) - allowed
    if unknown:
        raise ConfigError(
            f"unknown keys in [{name}]: {', '.join(sorted(unknown))}",
            unknown_keys=unknown,
            section=name,
        )
    missing = [key for key in REQUIRED_KEYS.get(name, ()) if key not in raw]
    if missing:
        raise ConfigError(f"section [{name}] is missing {', '.join(missing)}", section=name)

    data: Dict[str, Union[str, list, tuple, dict]] = dict(raw)
    if name == "gate" and "gate" in data:
        if "kind" in data and data["kind"] != data["gate"]:
            raise ConfigError(f"[gate] gives gate={raw['gate']!r} and kind={raw['kind']!r}", section=name)
        data["kind"] = data.pop("gate")
    if name == "quadrature" and "K" in data:
        data["truncation_halfwidth"] = data.pop("K")
    if name == "sweep" and "range" in data:
        data["range"] = parse_pair(raw["range"], "range", name)
    if name == "optimize":
        bounds = {key: parse_pair(raw[key], key, name) for key in RANGE_KEYS & set(raw)}
        for key in bounds:
            data.pop(key)
        data["bounds"] = bounds
        if "free" in raw:
            data["free"] = raw["free"].replace(",", " ").split()
    return data


def load_config(path: Union[str, Path]) -> RunConfig:
    """
    Load and validate an INI run configuration.

    Args:
        path: Configuration file

    Returns:
        Validated RunConfig

    Raises:
        ConfigError: If the file is unreadable, a section or key is unknown,
            a referenced section is incomplete, or a value fails validation
    """
    path = Path(path)
    # Keys are case-sensitive ("K")
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as e:
        raise ConfigError(f"cannot read configuration {path}: {e}")
    except configparser.Error as e:
        raise ConfigError(f"malformed configuration {path}: {e}")

    unknown_sections: List[str] = [name for name in parser.sections() if name not in SECTION_KEYS]
    if unknown_sections:
        raise ConfigError(
            f"unknown sections: {', '.join(unknown_sections)}",
            unknown_keys=unknown_sections,
            section=unknown_sections[0],
        )

    data = {name: _section_dict(parser, name) for name in parser.sections()}
    try:
        config = RunConfig(**data)
    except ValidationError as e:
        first = e.errors()[0]
        section = str(first["loc"][0]) if first["loc"] else None
        raise ConfigError(f"invalid configuration {path}: {e}", section=section)
    logger.info(f"Loaded configuration {path} with sections {parser.sections()}")
    return config
