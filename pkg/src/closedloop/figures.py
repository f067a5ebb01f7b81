"""Parameter sets and sweeps behind each published figure.

All rates are in units of ``kappa = kappa_a = kappa_b = 1``. Where a caption
gives no numeric axis range (Figs. 3-6) the default range below is read off the
plots and can be overridden with ``axis_range``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .model import SystemParams
from .sweep import SweepResult, SweepSpec, run_sweep

__all__ = ["FIGURE_IDS", "FigureDef", "FigureRun", "figure_definition", "reproduce_figure"]

PHI_POINTS = 629
FIGURE_POINTS = 400

HALF_PI = 0.5 * math.pi
THREE_HALF_PI = 1.5 * math.pi


def phase_label(phi: float) -> str:
    return f"{phi / math.pi:g}pi"


@dataclass(frozen=True)
class FigureDef:
    fig_id: str
    title: str
    axis: str
    axis_range: tuple[float, float]
    points: int
    pairs: tuple
    series: tuple  # (label, SystemParams)


def _loop(**kw) -> SystemParams:
    base = dict(kappa_a=1.0, kappa_b=1.0, gamma_c=2.0, lam=0.0, phi=0.0, g_a=3.2, g_b=5.0)
    base.update(kw)
    return SystemParams(**base)


def _fig2(lam):
    return (f"lambda={lam:g}", _loop(lam=lam))


def _fig3_series(lams, phis):
    return tuple(
        (f"phi={phase_label(phi)},lambda={lam:g}", _loop(g_a=8.3, g_b=10.0, lam=lam, phi=phi))
        for phi in phis
        for lam in lams
    )


def _fig5_series(phi):
    return (
        ("direct-only", _loop(g_a=0.0, g_b=0.0, gamma_c=5.0, phi=phi)),
        ("interfering", _loop(g_a=8.3, g_b=10.0, gamma_c=5.0, phi=phi)),
    )


def _fig6_series():
    return tuple(
        (f"lambda={lam:g}", _loop(g_a=8.3, g_b=10.0, gamma_c=5.0, lam=lam, phi=THREE_HALF_PI))
        for lam in (0.0, 1.5)
    )


_FIGURES = {
    "2a": FigureDef("2a", "a-b correlations vs phase, lambda=0.4", "phi", (0.0, 2 * math.pi),
                    PHI_POINTS, ("ab",), (_fig2(0.4),)),
    "2b": FigureDef("2b", "a-b correlations vs phase, lambda=0.605", "phi", (0.0, 2 * math.pi),
                    PHI_POINTS, ("ab",), (_fig2(0.605),)),
    "3": FigureDef("3", "a-b correlations vs gamma_c for several lambda", "gamma_c", (0.1, 20.0),
                   FIGURE_POINTS, ("ab",),
                   _fig3_series((0.0, 0.5, 1.0, 1.5), (HALF_PI, THREE_HALF_PI))),
    "4": FigureDef("4", "steering for gamma_c << kappa", "gamma_c", (0.01, 0.5),
                   FIGURE_POINTS, ("ab",), _fig3_series((0.0, 1.0), (THREE_HALF_PI,))),
    "5a": FigureDef("5a", "direct path only vs interfering channels, phi=pi/2", "lam", (0.0, 2.7),
                    FIGURE_POINTS, ("ab",), _fig5_series(HALF_PI)),
    "5b": FigureDef("5b", "direct path only vs interfering channels, phi=3pi/2", "lam", (0.0, 2.7),
                    FIGURE_POINTS, ("ab",), _fig5_series(THREE_HALF_PI)),
    "6a": FigureDef("6a", "thermal noise on mode c only", "nbar_c", (0.0, 3.0),
                    FIGURE_POINTS, ("ab",), _fig6_series()),
    "6b": FigureDef("6b", "thermal noise on all modes", "nbar_all", (0.0, 3.0),
                    FIGURE_POINTS, ("ab",), _fig6_series()),
    "7": FigureDef("7", "pairs (a,b) and (a,c) vs phase", "phi", (0.0, 2 * math.pi),
                   PHI_POINTS, ("ab", "ac"), (("lambda=0.4", _loop(lam=0.4, gamma_c=15.0)),)),
}

FIGURE_IDS = tuple(_FIGURES)


def figure_definition(fig_id: str) -> FigureDef:
    try:
        return _FIGURES[str(fig_id).lower()]
    except KeyError:
        raise ContractError(f"unknown figure id {fig_id!r}; known: {', '.join(FIGURE_IDS)}") from None


@dataclass(frozen=True)
class FigureRun:
    definition: FigureDef
    series: dict  # label -> SweepResult

    def __getitem__(self, label) -> SweepResult:
        return self.series[label]


def reproduce_figure(fig_id: str, workers: int = 1, points: int | None = None,
                     axis_range: tuple[float, float] | None = None) -> FigureRun:
    """Run every series of a figure over its independent variable."""
    fig = figure_definition(fig_id)
    lo, hi = axis_range if axis_range is not None else fig.axis_range
    grid = np.linspace(lo, hi, points or fig.points)
    series = {}
    for label, base in fig.series:
        spec = SweepSpec(base=base, axis1=(fig.axis, grid), pairs=fig.pairs)
        series[label] = run_sweep(spec, workers=workers)
    return FigureRun(fig, series)
