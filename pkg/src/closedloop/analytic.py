"""Closed-form steady-state moments of the (a, b) pair.

Available only at ``phi = pi/2 + n*pi`` where ``sin(phi) = +1`` (destructive
interference) or ``-1`` (constructive), and only with modes a and b at zero
temperature; the thermal occupation of mode c enters as ``nbar_c``. These
expressions serve as an independent check of the numerical Lyapunov path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ContractError, StabilityError
from .model import SystemParams, is_quarter_phase

__all__ = [
    "AnalyticMoments",
    "analytic_moments",
    "denominator_factors",
    "tmss_only_moments",
    "tmss_only_steering_conditions",
]


@dataclass(frozen=True)
class AnalyticMoments:
    n_a: float
    n_b: float
    corr: complex
    de: float


def denominator_factors(params: SystemParams) -> tuple[float, float]:
    """The two factors whose product is the common denominator ``De``.

    Both are negative exactly when the closed-form stability conditions hold.
    """
    ka, kb, gc = params.kappa_a, params.kappa_b, params.gamma_c
    ga2, gb2, l2 = params.g_a**2, params.g_b**2, params.lam**2
    first = kb * ga2 - ka * gb2 - gc * ka * kb + gc * l2
    second = (ka + gc) * ga2 - (kb + gc) * gb2 + (l2 - (ka + gc) * (kb + gc)) * (ka + kb)
    return first, second


def _sign_of_sin(phi: float) -> float:
    if not is_quarter_phase(phi):
        raise ContractError(
            f"closed-form moments need phi = pi/2 + n*pi, got phi = {phi!r}"
        )
    return 1.0 if math.sin(phi) > 0 else -1.0


def analytic_moments(params: SystemParams) -> AnalyticMoments:
    """Closed-form ``<a^dagger a>``, ``<b^dagger b>`` and ``<ab>``.

    Raises
    ------
    ContractError
        If ``phi`` is not ``pi/2 + n*pi`` or modes a, b are thermal.
    StabilityError
        If the denominator ``De`` is not positive.
    """
    if params.nbar_a != 0.0 or params.nbar_b != 0.0:
        raise ContractError("closed-form moments assume nbar_a = nbar_b = 0")
    s = _sign_of_sin(params.phi)
    ka, kb, gc = params.kappa_a, params.kappa_b, params.gamma_c
    ga, gb, lam, n = params.g_a, params.g_b, params.lam, params.nbar_c
    ga2, gb2, l2 = ga * ga, gb * gb, lam * lam
    ksum = ka + kb + gc
    cross = ka * gb2 - kb * ga2

    num_a = (
        ga2 * gb2 * ksum * kb
        + ga2 * gc * (n + 1) * (cross + kb * (kb + gc) * (ka + kb))
        + l2 * (kb * (cross + gc * (ka + gc) * (kb + gc)) + gc * (n + 1) * (ksum * gb2 - gc * ga2))
        - l2 * l2 * kb * gc
        - 2 * lam * n * kb * gc * ga * gb * ksum * s
    )
    num_b = (
        ga2 * gb2 * ksum * ka
        + gb2 * gc * n * (cross + ka * (ka + gc) * (ka + kb))
        + l2 * (ka * (cross + gc * (ka + gc) * (kb + gc)) + gc * n * (ksum * ga2 - gc * gb2))
        - l2 * l2 * ka * gc
        - 2 * lam * (n + 1) * ka * gc * ga * gb * ksum * s
    )
    num_ab = -(
        ga * gb * ka * (kb * ga2 + (kb + gc) * (gb2 + kb * gc))
        + ga * gb * gc * n * (cross + ka * kb * (ka + kb + 2 * gc))
        + lam * s * (
            kb * kb * ka * ga2
            - ka * (gb2 + kb * gc) * (ka + gc) * (kb + gc)
            - gc * n * ksum * (ka * gb2 + kb * ga2)
        )
        + l2 * lam * s * ka * kb * gc
        + l2 * ga * gb * gc * (ka * (n + 1) + kb * n)
    )
    f1, f2 = denominator_factors(params)
    de = f1 * f2
    if not de > 0:
        raise StabilityError(f"closed-form denominator De = {de!r} is not positive; no steady state")
    return AnalyticMoments(num_a / de, num_b / de, complex(num_ab / de, 0.0), de)


def tmss_only_moments(params: SystemParams) -> AnalyticMoments:
    """Moments when only the direct path exists (``g_a = g_b = 0``), valid at any phase."""
    if params.g_a != 0.0 or params.g_b != 0.0:
        raise ContractError("direct-path formulas need g_a = g_b = 0")
    if params.nbar_a != 0.0 or params.nbar_b != 0.0:
        raise ContractError("direct-path formulas assume nbar_a = nbar_b = 0")
    ka, kb, lam = params.kappa_a, params.kappa_b, params.lam
    gap = ka * kb - lam * lam
    if not gap > 0:
        raise StabilityError("direct-path system needs lam^2 < kappa_a * kappa_b")
    den = (ka + kb) * gap
    corr = ka * kb * lam * complex(math.sin(params.phi), -math.cos(params.phi)) / den
    return AnalyticMoments(kb * lam * lam / den, ka * lam * lam / den, corr, den)


def tmss_only_steering_conditions(params: SystemParams) -> tuple[bool, bool]:
    """Sign conditions for a->b and b->a steering with the direct path only."""
    if params.g_a != 0.0 or params.g_b != 0.0:
        raise ContractError("direct-path steering conditions need g_a = g_b = 0")
    ka, kb, lam = params.kappa_a, params.kappa_b, params.lam
    gap = ka * kb - lam * lam
    if not gap > 0:
        raise StabilityError("direct-path system needs lam^2 < kappa_a * kappa_b")
    return (kb - ka) * gap > 0, (ka - kb) * gap > 0
