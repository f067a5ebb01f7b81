"""Evaluate the steady-state pipeline over one- or two-dimensional parameter grids.

Every grid point is an independent pure computation, so points are farmed out
to a process pool and gathered back in index order; the assembled result does
not depend on the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from .errors import ConfigError, NumericalError, StabilityError
from .lyapunov import steady_state, verify_physicality
from .measures import CorrelationReport, correlation_report, normalize_pair
from .model import SystemParams, check_stability

__all__ = [
    "AXIS_NAMES",
    "SweepSpec",
    "PointResult",
    "SweepResult",
    "apply_axis",
    "evaluate_point",
    "run_sweep",
]

#: ``nbar_all`` sets the occupations of all three modes at once.
AXIS_NAMES = tuple(f.name for f in fields(SystemParams)) + ("nbar_all",)


def apply_axis(params: SystemParams, name: str, value: float) -> SystemParams:
    if name == "nbar_all":
        return params.replace(nbar_a=value, nbar_b=value, nbar_c=value)
    return params.replace(**{name: value})


def _check_axis(label, axis, problems):
    if axis is None:
        return None
    try:
        name, values = axis
    except (TypeError, ValueError):
        problems.append(f"{label}: expected (name, values), got {axis!r}")
        return None
    if name not in AXIS_NAMES:
        problems.append(f"{label}: unknown parameter {name!r}")
    values = tuple(float(x) for x in values)
    if not values:
        problems.append(f"{label}: grid is empty")
    elif not all(math.isfinite(x) for x in values):
        problems.append(f"{label}: grid contains non-finite values")
    else:
        diffs = np.diff(values)
        if len(values) > 1 and not (np.all(diffs > 0) or np.all(diffs < 0)):
            problems.append(f"{label}: grid must be strictly monotone")
    return (name, values)


@dataclass(frozen=True)
class SweepSpec:
    """A base parameter set plus one or two grid axes and the pairs to report."""

    base: SystemParams
    axis1: tuple
    axis2: tuple | None = None
    pairs: tuple = ("ab",)

    def __post_init__(self):
        problems = []
        object.__setattr__(self, "axis1", _check_axis("axis1", self.axis1, problems))
        object.__setattr__(self, "axis2", _check_axis("axis2", self.axis2, problems))
        if self.axis1 is not None and self.axis2 is not None and self.axis1[0] == self.axis2[0]:
            problems.append("axis1 and axis2 name the same parameter")
        pairs = []
        for p in self.pairs:
            try:
                pairs.append(normalize_pair(p))
            except ValueError as exc:
                problems.append(str(exc))
        pairs = tuple(pairs)
        if not self.pairs:
            problems.append("at least one mode pair is required")
        object.__setattr__(self, "pairs", pairs)
        if problems:
            raise ConfigError(problems)

    def grid(self) -> list[tuple[float, float | None]]:
        """Grid coordinates in row-major order (axis1 outer, axis2 inner)."""
        inner = self.axis2[1] if self.axis2 is not None else (None,)
        return [(x, y) for x in self.axis1[1] for y in inner]

    def params_at(self, x: float, y: float | None) -> SystemParams:
        p = apply_axis(self.base, self.axis1[0], x)
        if self.axis2 is not None:
            p = apply_axis(p, self.axis2[0], y)
        return p


@dataclass(frozen=True)
class PointResult:
    axis1: float
    axis2: float | None
    stable: bool
    max_real_part: float
    reports: dict = field(default_factory=dict)
    min_symplectic: float = math.nan

    def report(self, pair) -> CorrelationReport | None:
        return self.reports.get(normalize_pair(pair))


def evaluate_point(params: SystemParams, pairs=("ab",)) -> tuple[bool, float, dict, float]:
    """Stability, measures for every pair, and the smallest symplectic eigenvalue.

    Unstable or near-marginal points yield ``(False, max_re, {}, nan)``.
    """
    stab = check_stability(params)
    if not stab.stable:
        return False, stab.max_real_part, {}, math.nan
    try:
        v = steady_state(params)
    except StabilityError:
        return False, stab.max_real_part, {}, math.nan
    spectrum = verify_physicality(v)
    if not spectrum.physical:
        raise NumericalError(
            f"unphysical steady state (min symplectic eigenvalue {spectrum.min_eigenvalue!r}) "
            f"for {params!r}"
        )
    reports = {p: correlation_report(v, p) for p in pairs}
    return True, stab.max_real_part, reports, spectrum.min_eigenvalue


def _evaluate_task(task):
    params, pairs = task
    return evaluate_point(params, pairs)


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    points: tuple

    def __len__(self):
        return len(self.points)

    @property
    def axis1_values(self) -> np.ndarray:
        return np.array([p.axis1 for p in self.points])

    @property
    def stable(self) -> np.ndarray:
        return np.array([p.stable for p in self.points])

    def column(self, pair, name: str) -> np.ndarray:
        """Values of a report attribute for one pair; NaN at unstable points.

        ``name`` is a ``CorrelationReport`` field (``e_n``, ``g_fwd``, ...) or one
        of ``n_first``, ``n_second``, ``abs_corr``.
        """
        pair = normalize_pair(pair)
        out = []
        for p in self.points:
            rep = p.reports.get(pair)
            if rep is None:
                out.append(math.nan)
            elif name in ("n_first", "n_second", "abs_corr"):
                out.append(getattr(rep.moments, name))
            else:
                out.append(getattr(rep, name))
        return np.array(out, dtype=object if name == "regime" else float)

    def regimes(self, pair="ab") -> list[str]:
        pair = normalize_pair(pair)
        return [p.reports[pair].regime if p.stable else "unstable" for p in self.points]


def run_sweep(spec: SweepSpec, workers: int = 1, chunksize: int | None = None) -> SweepResult:
    """Evaluate every grid point of ``spec``.

    Unstable points are reported as rows with ``stable=False`` and no measures.
    The output is identical for any ``workers``.
    """
    if workers < 1:
        raise ConfigError([f"workers must be >= 1, got {workers!r}"])
    coords = spec.grid()
    tasks = [(spec.params_at(x, y), spec.pairs) for x, y in coords]
    if workers == 1 or len(tasks) < 2:
        raw = [_evaluate_task(t) for t in tasks]
    else:
        if chunksize is None:
            chunksize = max(1, len(tasks) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            raw = list(pool.map(_evaluate_task, tasks, chunksize=chunksize))
    points = tuple(
        PointResult(x, y, stable, max_re, reports, nu_min)
        for (x, y), (stable, max_re, reports, nu_min) in zip(coords, raw)
    )
    return SweepResult(spec, points)
