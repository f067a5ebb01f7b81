"""Run configuration files.

Grammar (UTF-8, one assignment per line, a TOML subset)::

    # comment
    kappa_a = 1.0
    phi = "1.5pi"                 # radians, or "<number>pi"
    axis1 = "phi"
    axis1_range = [0, "2pi", 629] # start, stop, number of points (inclusive)
    axis2 = "lambda"
    axis2_values = [0.4, 0.605]
    pairs = ["ab", "ac"]
    out = "results"
    workers = 4
    format = "both"               # csv | json | both
    plot = true

Values are JSON scalars or flat lists. ``lambda`` is accepted for the
``lam`` field of :class:`SystemParams`. Missing occupations default to 0.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ParameterError
from .model import SystemParams
from .sweep import AXIS_NAMES, SweepSpec

__all__ = ["RunConfig", "parse_config", "load_config", "parse_number", "FORMATS"]

FORMATS = ("csv", "json", "both")

_PARAM_KEYS = {
    "kappa_a": "kappa_a",
    "kappa_b": "kappa_b",
    "gamma_c": "gamma_c",
    "lambda": "lam",
    "lam": "lam",
    "phi": "phi",
    "g_a": "g_a",
    "g_b": "g_b",
    "nbar_a": "nbar_a",
    "nbar_b": "nbar_b",
    "nbar_c": "nbar_c",
}
_REQUIRED = ("kappa_a", "kappa_b", "gamma_c", "lam", "phi", "g_a", "g_b")
_OTHER_KEYS = {
    "axis1", "axis1_values", "axis1_range",
    "axis2", "axis2_values", "axis2_range",
    "pairs", "out", "workers", "format", "plot", "plot_columns",
}
_PI_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*$")


def parse_number(value) -> float:
    """Parse a real number or a ``"<number>pi"`` string (``"pi"``, ``"-0.5pi"``, ``"1.5*pi"``)."""
    if isinstance(value, bool):
        raise ValueError(f"expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        m = _PI_RE.match(value)
        if m:
            coeff = m.group(1)
            return (float(coeff) if coeff is not None else 1.0) * math.pi
        try:
            return float(value)
        except ValueError:
            pass
    raise ValueError(f"expected a number or '<number>pi', got {value!r}")


@dataclass(frozen=True)
class RunConfig:
    params: SystemParams
    axis1: tuple | None = None
    axis2: tuple | None = None
    pairs: tuple = ("ab",)
    out: str = "results"
    workers: int = 1
    format: str = "csv"
    plot: bool = False
    plot_columns: tuple = ("E_N", "G_fwd", "G_bwd")

    def sweep_spec(self) -> SweepSpec:
        if self.axis1 is None:
            raise ConfigError(["a sweep needs 'axis1' with 'axis1_values' or 'axis1_range'"])
        return SweepSpec(base=self.params, axis1=self.axis1, axis2=self.axis2, pairs=self.pairs)


def _strip_comment(line: str) -> str:
    in_str = False
    for i, ch in enumerate(line):
        if ch == '"':
            in_str = not in_str
        elif ch == "#" and not in_str:
            return line[:i]
    return line


def _decode(raw: str):
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw  # bare token such as 1.5pi


def _grid(entries: dict, axis: str, lines: dict, problems: list):
    name_key, values_key, range_key = axis, f"{axis}_values", f"{axis}_range"
    if name_key not in entries:
        for k in (values_key, range_key):
            if k in entries:
                problems.append(f"line {lines[k]}: '{k}' given without '{name_key}'")
        return None
    name = entries[name_key]
    if name == "lambda":
        name = "lam"
    if name not in AXIS_NAMES:
        problems.append(f"line {lines[name_key]}: '{name_key}' names unknown parameter {name!r}")
    if (values_key in entries) == (range_key in entries):
        problems.append(
            f"line {lines[name_key]}: '{name_key}' needs exactly one of '{values_key}' or '{range_key}'"
        )
        return None
    if values_key in entries:
        key = values_key
        raw = entries[key]
        if not isinstance(raw, list):
            problems.append(f"line {lines[key]}: '{key}' must be a list")
            return None
        try:
            values = [parse_number(v) for v in raw]
        except ValueError as exc:
            problems.append(f"line {lines[key]}: '{key}': {exc}")
            return None
    else:
        key = range_key
        raw = entries[key]
        if not isinstance(raw, list) or len(raw) != 3:
            problems.append(f"line {lines[key]}: '{key}' must be [start, stop, points]")
            return None
        try:
            start, stop = parse_number(raw[0]), parse_number(raw[1])
        except ValueError as exc:
            problems.append(f"line {lines[key]}: '{key}': {exc}")
            return None
        num = raw[2]
        if isinstance(num, bool) or not isinstance(num, int) or num < 1:
            problems.append(f"line {lines[key]}: '{key}' point count must be a positive integer")
            return None
        values = np.linspace(start, stop, num).tolist()
    if not values:
        problems.append(f"line {lines[key]}: '{key}' grid is empty")
        return None
    diffs = np.diff(values)
    if len(values) > 1 and not (np.all(diffs > 0) or np.all(diffs < 0)):
        problems.append(f"line {lines[key]}: '{key}' grid must be strictly monotone")
        return None
    return (name, tuple(values))


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration document.

    Raises
    ------
    ConfigError
        Listing every problem found, each naming its key and line.
    """
    problems: list[str] = []
    entries: dict = {}
    lines: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = _strip_comment(line).strip()
        if not body:
            continue
        key, sep, raw = body.partition("=")
        key = key.strip()
        if not sep or not key:
            problems.append(f"line {lineno}: expected 'key = value', got {line.strip()!r}")
            continue
        if key not in _PARAM_KEYS and key not in _OTHER_KEYS:
            problems.append(f"line {lineno}: unknown key '{key}'")
            continue
        if key in entries:
            problems.append(f"line {lineno}: duplicate key '{key}' (first set on line {lines[key]})")
            continue
        raw = raw.strip()
        if not raw:
            problems.append(f"line {lineno}: key '{key}' has no value")
            continue
        entries[key] = _decode(raw)
        lines[key] = lineno

    values = {}
    for key, field_name in _PARAM_KEYS.items():
        if key not in entries:
            continue
        if field_name in values:
            problems.append(f"line {lines[key]}: '{key}' duplicates another spelling of '{field_name}'")
            continue
        try:
            values[field_name] = parse_number(entries[key])
        except ValueError as exc:
            problems.append(f"line {lines[key]}: key '{key}': {exc}")
    axis1 = _grid(entries, "axis1", lines, problems)
    axis2 = _grid(entries, "axis2", lines, problems)
    swept = {a[0] for a in (axis1, axis2) if a is not None}
    if "nbar_all" in swept:
        swept |= {"nbar_a", "nbar_b", "nbar_c"}
    for field_name in _REQUIRED:
        if field_name not in values:
            given = any(k in entries for k, f in _PARAM_KEYS.items() if f == field_name)
            if field_name in swept or given:
                continue
            shown = "lambda" if field_name == "lam" else field_name
            problems.append(f"missing required key '{shown}'")

    extra = {}
    if "pairs" in entries:
        pairs = entries["pairs"]
        if isinstance(pairs, str):
            pairs = [pairs]
        if not isinstance(pairs, list) or not pairs or not all(isinstance(p, str) for p in pairs):
            problems.append(f"line {lines['pairs']}: 'pairs' must be a non-empty list of labels")
        else:
            extra["pairs"] = tuple(pairs)
    if "out" in entries:
        if not isinstance(entries["out"], str):
            problems.append(f"line {lines['out']}: 'out' must be a string")
        else:
            extra["out"] = entries["out"]
    if "workers" in entries:
        w = entries["workers"]
        if isinstance(w, bool) or not isinstance(w, int) or w < 1:
            problems.append(f"line {lines['workers']}: 'workers' must be a positive integer")
        else:
            extra["workers"] = w
    if "format" in entries:
        if entries["format"] not in FORMATS:
            problems.append(f"line {lines['format']}: 'format' must be one of {FORMATS}")
        else:
            extra["format"] = entries["format"]
    if "plot" in entries:
        if not isinstance(entries["plot"], bool):
            problems.append(f"line {lines['plot']}: 'plot' must be true or false")
        else:
            extra["plot"] = entries["plot"]
    if "plot_columns" in entries:
        cols = entries["plot_columns"]
        if not isinstance(cols, list) or not all(isinstance(c, str) for c in cols):
            problems.append(f"line {lines['plot_columns']}: 'plot_columns' must be a list of names")
        else:
            extra["plot_columns"] = tuple(cols)

    if problems:
        raise ConfigError(problems)

    # swept parameters still need a placeholder inside the base parameter set
    for field_name in _REQUIRED:
        if field_name not in values:
            values[field_name] = {"kappa_a": 1.0, "kappa_b": 1.0, "gamma_c": 1.0}.get(field_name, 0.0)
    try:
        params = SystemParams(**values)
    except ParameterError as exc:
        raise ConfigError([str(exc)]) from None
    config = RunConfig(params=params, axis1=axis1, axis2=axis2, **extra)
    if axis1 is not None:
        config.sweep_spec()  # validates pairs and axes together
    return config


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
