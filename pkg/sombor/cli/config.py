import json
from typing import Any
from typing import Literal
from typing import TypedDict

from sombor.bounds import EQUALITY_TOLERANCE
from sombor.enumeration import INTERNAL_ORDER_CAP
from sombor.graph import Family
from sombor.indices import IndexKind


class ConfigError(Exception):
    pass


class RunConfig(TypedDict):
    command: str
    # Path, "-" for standard input, or None when the graphs come from elsewhere
    input: str | None
    family: str | None
    n: int | None
    ell: int | None
    index: list[str]
    format: Literal["json", "csv", "human"]
    workers: int
    tol: float
    smax: int
    dedup: bool
    exhaustive: bool
    constraint: Literal["connected", "tree", "cyclomatic"]
    direction: Literal["min", "max"] | None
    debug: bool


DEFAULTS: dict[str, Any] = {
    "input": None,
    "family": None,
    "n": None,
    "ell": None,
    "index": [],
    "format": "json",
    "workers": 1,
    "tol": EQUALITY_TOLERANCE,
    "smax": 500,
    "dedup": False,
    "exhaustive": False,
    "constraint": "connected",
    "direction": None,
    "debug": False,
}


def load_config_file(path: str) -> dict[str, Any]:
    try:
        with open(path, "r") as f:
            config = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Failed to load configuration file {path}: {e}")

    if not isinstance(config, dict):
        raise ConfigError(f"Configuration file {path} must hold a JSON object")

    unknown = set(config) - set(DEFAULTS)
    if unknown:
        raise ConfigError(f"Unknown configuration keys in {path}: {sorted(unknown)}")

    return config


def build_config(
    command: str, file_values: dict[str, Any], flag_values: dict[str, Any]
) -> RunConfig:
    """Defaults, then the configuration file, then flags given on the command line."""
    merged = {**DEFAULTS, **file_values, **flag_values, "command": command}

    if isinstance(merged["index"], str):
        merged["index"] = [merged["index"]]

    config = RunConfig(**merged)  # type: ignore[typeddict-item]
    validate_config(config)

    return config


def validate_config(config: RunConfig) -> None:
    if config["tol"] <= 0:
        raise ConfigError(f"Tolerance must be positive, got {config['tol']}")

    if config["workers"] < 1:
        raise ConfigError(f"Worker count must be at least 1, got {config['workers']}")

    if config["smax"] < 3:
        raise ConfigError(f"--smax must be at least 3, got {config['smax']}")

    if config["n"] is not None and config["n"] < 1:
        raise ConfigError(f"--n must be positive, got {config['n']}")

    if (
        config["exhaustive"]
        and config["n"] is not None
        and config["n"] > INTERNAL_ORDER_CAP
    ):
        raise ConfigError(
            f"Exhaustive runs are capped at n = {INTERNAL_ORDER_CAP}, got {config['n']}"
        )

    families = {f.value for f in Family}
    if config["family"] is not None and config["family"] not in families:
        raise ConfigError(f"Unknown family {config['family']!r}")

    for name in config["index"]:
        if name.upper() not in IndexKind.__members__:
            raise ConfigError(f"Unknown index {name!r}")

    if config["format"] not in ("json", "csv", "human"):
        raise ConfigError(f"Unknown output format {config['format']!r}")
