"""Experiment config files: TOML (or JSON, interchangeably) -> typed scenarios.

Schema (version 1):

    version = 1
    [functions]            # name -> expression string (keys p, q, v, f0, ...)
    f = "5*exp(-12.566370614359172*t^2)"
    [output]
    path = "reports"
    formats = ["json", "csv"]
    [scenarios.<name>]
    type = "hy-scaling" | "translation-limit" | "ft-bound" | "pitt-verify"
         | "hl-variable"
    ...typed parameters (n, p, q, alpha, gamma, grids, schedules)...

Grids are tables {start, stop, points, spacing = "log"|"linear"}.
"""

from __future__ import annotations

import json

import numpy as np

try:
    import tomllib as _toml
except ModuleNotFoundError:  # Python 3.10
    import tomli as _toml

from .funcdsl import ScalarFn, parse

__all__ = ["ConfigError", "load_config", "Config"]

_SCENARIO_TYPES = {"hy-scaling", "translation-limit", "ft-bound",
                   "pitt-verify", "hl-variable"}


class ConfigError(ValueError):
    pass


def _read(path: str) -> dict:
    with open(path, "rb") as fh:
        raw = fh.read()
    text = raw.decode("utf-8")
    if text.lstrip().startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON config: {e}") from e
    try:
        return _toml.loads(text)
    except _toml.TOMLDecodeError as e:
        raise ConfigError(f"invalid TOML config: {e}") from e


def build_grid(spec) -> np.ndarray:
    if isinstance(spec, (list, tuple)):
        if len(spec) < 2:
            raise ConfigError("explicit grids need at least 2 points")
        return np.asarray([float(x) for x in spec])
    if not isinstance(spec, dict):
        raise ConfigError(f"bad grid spec {spec!r}")
    try:
        start = float(spec["start"])
        stop = float(spec["stop"])
        points = int(spec["points"])
    except KeyError as e:
        raise ConfigError(f"grid spec missing {e}") from e
    spacing = spec.get("spacing", "log")
    if points < 2:
        raise ConfigError("grids need points >= 2")
    if spacing == "log":
        if start <= 0:
            raise ConfigError("log grids need start > 0")
        return np.geomspace(start, stop, points)
    if spacing == "linear":
        return np.linspace(start, stop, points)
    raise ConfigError(f"unknown spacing {spacing!r}")


class Config:
    def __init__(self, version: int, functions: dict, scenarios: dict,
                 output: dict):
        self.version = version
        self.functions = functions  # name -> ScalarFn
        self.scenarios = scenarios  # name -> params dict (with "type")
        self.output = output

    def function(self, ref: str, where: str) -> ScalarFn:
        """Resolve a function reference: a name from [functions] or an
        inline expression."""
        if ref in self.functions:
            return self.functions[ref]
        try:
            return ScalarFn(ref)
        except ValueError as e:
            raise ConfigError(
                f"{where}: {ref!r} is neither a defined function name nor a "
                f"parseable expression ({e})") from e


def load_config(path: str) -> Config:
    data = _read(path)
    if not isinstance(data, dict):
        raise ConfigError("config root must be a table")
    version = data.get("version")
    if version != 1:
        raise ConfigError(f"unsupported config version {version!r}")
    functions = {}
    for name, src in (data.get("functions") or {}).items():
        if not isinstance(src, str):
            raise ConfigError(f"function {name!r} must be a string expression")
        try:
            parse(src)
        except ValueError as e:
            raise ConfigError(f"function {name!r}: {e}") from e
        functions[name] = ScalarFn(src)
    scenarios = data.get("scenarios") or {}
    if not isinstance(scenarios, dict) or not scenarios:
        raise ConfigError("config defines no scenarios")
    for name, block in scenarios.items():
        if not isinstance(block, dict):
            raise ConfigError(f"scenario {name!r} must be a table")
        stype = block.get("type")
        if stype not in _SCENARIO_TYPES:
            raise ConfigError(
                f"scenario {name!r}: unknown type {stype!r} "
                f"(expected one of {sorted(_SCENARIO_TYPES)})")
    output = data.get("output") or {}
    formats = output.get("formats", ["json", "csv"])
    bad = set(formats) - {"json", "csv"}
    if bad:
        raise ConfigError(f"unknown output formats {sorted(bad)}")
    output = {"path": output.get("path", "reports"), "formats": formats}
    return Config(1, functions, scenarios, output)
