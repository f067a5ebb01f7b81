"""System parameters, drift/diffusion matrices and stability analysis.

Quadrature ordering throughout the package is ``(X_a, Y_a, X_b, Y_b, X_c, Y_c)``
with ``X_j = (j + j^dagger)/sqrt(2)``, so the vacuum variance is 1/2.

The two modes ``a`` and ``b`` interact directly through a two-mode squeezing
term of strength ``lam`` and phase ``phi``, and indirectly through mode ``c``
(parametric coupling ``g_a`` to ``a``, beam-splitter coupling ``g_b`` to ``b``).
The phases of ``g_a`` and ``g_b`` are absorbed into ``phi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

import numpy as np
from scipy import constants

from .errors import NumericalError, ParameterError

__all__ = [
    "SystemParams",
    "StabilityReport",
    "build_drift_matrix",
    "build_diffusion_matrix",
    "check_stability",
    "routh_hurwitz_conditions",
    "thermal_occupation",
    "is_quarter_phase",
    "STABILITY_TOL",
    "PHASE_TOL",
]

#: ``max_real_part < -STABILITY_TOL`` is stable; ``|max_real_part| <= STABILITY_TOL`` is marginal.
STABILITY_TOL = 1e-12
#: Tolerance for recognising ``phi = pi/2 + n*pi``.
PHASE_TOL = 1e-9

TWO_PI = 2.0 * math.pi

_RATES = ("kappa_a", "kappa_b", "gamma_c")
_COUPLINGS = ("lam", "g_a", "g_b")
_OCCUPATIONS = ("nbar_a", "nbar_b", "nbar_c")


@dataclass(frozen=True)
class SystemParams:
    """One instance of the three-mode closed-loop system.

    All rates share one (arbitrary) unit; the figures use units of ``kappa_a``.

    Attributes
    ----------
    kappa_a, kappa_b, gamma_c : float
        Damping rates of modes a, b, c. Strictly positive.
    lam : float
        Direct two-mode squeezing strength between a and b.
    phi : float
        Relative phase between the direct and the mode-c-mediated path (radians).
    g_a : float
        Parametric (a^dagger c^dagger) coupling between a and c.
    g_b : float
        Beam-splitter (b c^dagger) coupling between b and c.
    nbar_a, nbar_b, nbar_c : float
        Mean thermal occupations of the three baths.
    """

    kappa_a: float
    kappa_b: float
    gamma_c: float
    lam: float = 0.0
    phi: float = 0.0
    g_a: float = 0.0
    g_b: float = 0.0
    nbar_a: float = 0.0
    nbar_b: float = 0.0
    nbar_c: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                raise ParameterError(f"{f.name} must be a real number, got {value!r}") from None
            if not math.isfinite(value):
                raise ParameterError(f"{f.name} must be finite, got {value!r}")
            object.__setattr__(self, f.name, value)
        for name in _RATES:
            if getattr(self, name) <= 0.0:
                raise ParameterError(f"{name} must be > 0, got {getattr(self, name)!r}")
        for name in _COUPLINGS + _OCCUPATIONS:
            if getattr(self, name) < 0.0:
                raise ParameterError(f"{name} must be >= 0, got {getattr(self, name)!r}")

    @property
    def phase(self) -> float:
        """``phi`` reduced to ``[0, 2*pi)``."""
        return self.phi % TWO_PI

    def replace(self, **changes) -> "SystemParams":
        return replace(self, **changes)

    def scaled(self, s: float) -> "SystemParams":
        """Multiply every rate and coupling by ``s`` (occupations and phase untouched)."""
        if s <= 0:
            raise ParameterError(f"scale factor must be > 0, got {s!r}")
        return replace(self, **{n: getattr(self, n) * s for n in _RATES + _COUPLINGS})

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def build_drift_matrix(params: SystemParams) -> np.ndarray:
    """Return the 6x6 real drift matrix ``M`` of ``du/dt = M u + noise``."""
    ka, kb, gc = params.kappa_a, params.kappa_b, params.gamma_c
    ga, gb = params.g_a, params.g_b
    ls = params.lam * math.sin(params.phi)
    lc = params.lam * math.cos(params.phi)
    coeff = np.array(
        [
            [ka, 0.0, -ls, lc, 0.0, ga],
            [0.0, ka, lc, ls, ga, 0.0],
            [-ls, lc, kb, 0.0, 0.0, -gb],
            [lc, ls, 0.0, kb, gb, 0.0],
            [0.0, ga, 0.0, -gb, gc, 0.0],
            [ga, 0.0, gb, 0.0, 0.0, gc],
        ]
    )
    return -coeff


def build_diffusion_matrix(params: SystemParams) -> np.ndarray:
    """Return the diagonal diffusion matrix ``D``.

    Each mode contributes ``(2*nbar + 1) * rate`` on both of its quadratures.
    """
    diag = []
    for rate, nbar in (
        (params.kappa_a, params.nbar_a),
        (params.kappa_b, params.nbar_b),
        (params.gamma_c, params.nbar_c),
    ):
        if nbar < 0:
            raise ParameterError(f"thermal occupation must be >= 0, got {nbar!r}")
        diag += [(2.0 * nbar + 1.0) * rate] * 2
    return np.diag(diag)


def is_quarter_phase(phi: float, tol: float = PHASE_TOL) -> bool:
    """True when ``phi`` lies within ``tol`` of ``pi/2 + n*pi``."""
    offset = (phi - math.pi / 2) % math.pi
    return min(offset, math.pi - offset) <= tol


def routh_hurwitz_conditions(params: SystemParams) -> tuple[float, float]:
    """Left-hand sides of the two closed-form stability inequalities.

    Valid only at ``phi = pi/2 + n*pi``; both values must be positive for stability.
    """
    ka, kb, gc = params.kappa_a, params.kappa_b, params.gamma_c
    ga2, gb2, l2 = params.g_a**2, params.g_b**2, params.lam**2
    first = ka * kb * gc - ga2 * kb + gb2 * ka - l2 * gc
    second = (
        (ka + kb) * (ka + gc) * (kb + gc)
        - ga2 * (ka + gc)
        + gb2 * (kb + gc)
        - l2 * (ka + kb)
    )
    return first, second


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    max_real_part: float
    marginal: bool
    routh_hurwitz_applicable: bool
    routh_hurwitz_stable: bool | None = None
    routh_hurwitz_disagrees: bool = False
    eigenvalues: tuple = ()


def check_stability(params: SystemParams) -> StabilityReport:
    """Decide stability from the eigenvalues of the drift matrix.

    The eigenvalue verdict is authoritative. At ``phi = pi/2 + n*pi`` the
    closed-form Routh-Hurwitz inequalities are evaluated as well and any
    disagreement is flagged, never used to override.
    """
    m = build_drift_matrix(params)
    try:
        eig = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue computation failed for drift matrix\n{m!r}") from exc
    if not np.all(np.isfinite(eig)):
        raise NumericalError(f"non-finite eigenvalues for drift matrix\n{m!r}")
    max_re = float(np.max(eig.real))
    stable = max_re < -STABILITY_TOL
    marginal = abs(max_re) <= STABILITY_TOL

    applicable = is_quarter_phase(params.phi)
    rh_stable = None
    disagrees = False
    if applicable:
        first, second = routh_hurwitz_conditions(params)
        rh_stable = bool(first > 0 and second > 0)
        disagrees = (rh_stable != stable) and not marginal
    return StabilityReport(
        stable=stable,
        max_real_part=max_re,
        marginal=marginal,
        routh_hurwitz_applicable=applicable,
        routh_hurwitz_stable=rh_stable,
        routh_hurwitz_disagrees=disagrees,
        eigenvalues=tuple(complex(e) for e in eig),
    )


def thermal_occupation(frequency: float, temperature: float) -> float:
    """Bose-Einstein occupation of a bath mode.

    Parameters
    ----------
    frequency : float
        Angular frequency in rad/s. Must be positive.
    temperature : float
        Temperature in kelvin. Zero gives exactly 0.
    """
    if not frequency > 0:
        raise ParameterError(f"frequency must be > 0, got {frequency!r}")
    if temperature < 0:
        raise ParameterError(f"temperature must be >= 0, got {temperature!r}")
    if temperature == 0:
        return 0.0
    x = constants.hbar * frequency / (constants.k * temperature)
    if x > 700.0:
        return 0.0
    return 1.0 / math.expm1(x)
