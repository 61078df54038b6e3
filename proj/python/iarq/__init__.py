"""Python bindings for the iarq simulator."""

import json

from ._core import (
    ConfigError,
    InputError,
    UsageError,
    alignment_probability,
    cli,
    db_to_linear,
    derive_seed,
    erf_inv,
    preset_names,
    theta0_from_pc,
)
from . import _core

__all__ = [
    "ConfigError",
    "InputError",
    "UsageError",
    "alignment_probability",
    "cli",
    "db_to_linear",
    "derive_seed",
    "erf_inv",
    "preset_config",
    "preset_names",
    "run",
    "theta0_from_pc",
]


def preset_config(name, desk_scale=True, policy="importance"):
    """Config dict for a preset, ready to edit and pass to run()."""
    return json.loads(_core.preset_config(name, desk_scale, policy))


def run(config):
    """Run one simulation. Returns a dict with "summary", "curve_csv" and "decisions_csv"."""
    return json.loads(_core.run_config(json.dumps(config)))
