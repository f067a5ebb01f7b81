"""Pairwise entanglement and Gaussian steering of the steady state.

Conventions: vacuum variance is 1/2, so the Renyi-2 steering measure is
evaluated on ``2 V`` (a covariance matrix with vacuum variance 1 would drop the
factor 2). For a pair ``(first, second)`` the *forward* direction is
first -> second, i.e. the first mode is the steering party.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ContractError, NumericalError

__all__ = [
    "PAIRS",
    "REGIMES",
    "ReducedCM",
    "PairMoments",
    "CriterionFlags",
    "CorrelationReport",
    "normalize_pair",
    "reduce_pair",
    "det2",
    "det4",
    "log_negativity",
    "gaussian_steering",
    "moments_from_cm",
    "hz_criteria",
    "classify_regime",
    "correlation_report",
]

_MODE_INDEX = {"a": 0, "b": 1, "c": 2}
PAIRS = ("ab", "ac", "bc")
REGIMES = ("two-way", "one-way-forward", "one-way-backward", "no-way")

CLAMP_TOL = 1e-9
CRITERION_TOL = 1e-9
REGIME_TOL = 1e-12


def normalize_pair(pair) -> str:
    """Accept ``"ab"``, ``"a,b"``, ``("a", "b")`` and return the canonical label."""
    if isinstance(pair, str):
        label = pair.replace(",", "").replace("(", "").replace(")", "").replace(" ", "")
    else:
        try:
            label = "".join(str(p) for p in pair)
        except TypeError:
            raise ContractError(f"invalid mode pair {pair!r}") from None
    label = label.lower()
    if label not in PAIRS:
        raise ContractError(f"invalid mode pair {pair!r}; expected one of {PAIRS}")
    return label


def det2(m) -> float:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def det4(m) -> float:
    """Determinant of a 4x4 matrix by Laplace expansion in 2x2 minors of rows 0-1."""
    def minor(rows, c0, c1):
        r0, r1 = rows
        return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]

    top = (0, 1)
    bottom = (2, 3)
    return (
        minor(top, 0, 1) * minor(bottom, 2, 3)
        - minor(top, 0, 2) * minor(bottom, 1, 3)
        + minor(top, 0, 3) * minor(bottom, 1, 2)
        + minor(top, 1, 2) * minor(bottom, 0, 3)
        - minor(top, 1, 3) * minor(bottom, 0, 2)
        + minor(top, 2, 3) * minor(bottom, 0, 1)
    )


@dataclass(frozen=True)
class ReducedCM:
    """Two-mode reduced covariance matrix ``[[va, vab], [vab^T, vb]]``."""

    va: np.ndarray
    vb: np.ndarray
    vab: np.ndarray
    pair: str = "ab"

    @property
    def matrix(self) -> np.ndarray:
        return np.block([[self.va, self.vab], [self.vab.T, self.vb]])

    @classmethod
    def from_matrix(cls, v4, pair: str = "ab") -> "ReducedCM":
        v4 = np.asarray(v4, dtype=float)
        if v4.shape != (4, 4):
            raise ContractError(f"reduced covariance matrix must be 4x4, got {v4.shape}")
        return cls(v4[:2, :2].copy(), v4[2:, 2:].copy(), v4[:2, 2:].copy(), normalize_pair(pair))


def reduce_pair(v: np.ndarray, pair="ab") -> ReducedCM:
    """Extract the 4x4 principal submatrix of two modes from the 6x6 covariance."""
    label = normalize_pair(pair)
    v = np.asarray(v, dtype=float)
    if v.shape != (6, 6):
        raise ContractError(f"full covariance matrix must be 6x6, got {v.shape}")
    i, j = (2 * _MODE_INDEX[label[0]], 2 * _MODE_INDEX[label[1]])
    idx = [i, i + 1, j, j + 1]
    return ReducedCM.from_matrix(v[np.ix_(idx, idx)], label)


def log_negativity(r: ReducedCM) -> float:
    """Logarithmic negativity ``max(0, -ln(2 eta_minus))``.

    ``eta_minus`` is the smaller symplectic eigenvalue of the partially
    transposed state, computed from ``Sigma = det Va + det Vb - 2 det Vab``.
    Where both partially transposed eigenvalues coincide (nearly uncorrelated
    states close to vacuum) the square root of the discriminant turns rounding
    of order eps into an error of order sqrt(eps), about 1e-8, in the result.
    """
    sigma = det2(r.va) + det2(r.vb) - 2.0 * det2(r.vab)
    det_v = det4(r.matrix)
    disc = sigma * sigma - 4.0 * det_v
    if disc < -CLAMP_TOL * max(1.0, sigma * sigma):
        raise NumericalError(f"negative discriminant {disc:.3e} in logarithmic negativity")
    disc = max(disc, 0.0)
    eta_sq = 0.5 * (sigma - math.sqrt(disc))
    if eta_sq <= 0.0:
        raise NumericalError("non-positive partially transposed symplectic eigenvalue")
    return max(0.0, -math.log(2.0 * math.sqrt(eta_sq)))


def gaussian_steering(r: ReducedCM, direction: str = "fwd") -> float:
    """Renyi-2 Gaussian steering ``max(0, S(2 V_steer) - S(2 V))``, ``S = ln det / 2``.

    ``direction`` is ``"fwd"`` (first mode steers the second) or ``"bwd"``.
    """
    if direction == "fwd":
        steer = r.va
    elif direction == "bwd":
        steer = r.vb
    else:
        raise ContractError(f"direction must be 'fwd' or 'bwd', got {direction!r}")
    det_part = 4.0 * det2(steer)
    det_full = 16.0 * det4(r.matrix)
    if det_part <= 0.0 or det_full <= 0.0:
        raise NumericalError("non-positive determinant in steering measure")
    return max(0.0, 0.5 * math.log(det_part) - 0.5 * math.log(det_full))


@dataclass(frozen=True)
class PairMoments:
    """Populations of both modes and the complex correlation ``<first second>``."""

    n_first: float
    n_second: float
    corr: complex

    @property
    def abs_corr(self) -> float:
        return abs(self.corr)


def _population(block) -> float:
    n = 0.5 * (block[0][0] + block[1][1] - 1.0)
    if n < -CLAMP_TOL:
        raise NumericalError(f"negative population {n:.3e}")
    return float(max(n, 0.0))


def moments_from_cm(r: ReducedCM) -> PairMoments:
    """Populations and ``<j k>`` of a zero-mean Gaussian state.

    ``<j^dagger j> = (V(X_j) + V(Y_j) - 1)/2`` and
    ``<j k> = (V(X_j,X_k) - V(Y_j,Y_k) + i V(X_j,Y_k) + i V(Y_j,X_k))/2``.
    """
    c = r.vab
    corr = complex(float(c[0, 0] - c[1, 1]), float(c[0, 1] + c[1, 0])) / 2.0
    return PairMoments(_population(r.va), _population(r.vb), corr)


class CriterionFlags(NamedTuple):
    entangled: bool
    steer_fwd: bool
    steer_bwd: bool


def hz_criteria(m: PairMoments, tol: float = CRITERION_TOL) -> CriterionFlags:
    """Moment-based entanglement and steering inequalities.

    Entangled: ``|<jk>| > sqrt(n_j n_k)``; j steers k: ``|<jk>| > sqrt(n_k (n_j + 1/2))``.
    Each inequality must hold with a margin of ``tol``.
    """
    c = m.abs_corr
    n1, n2 = m.n_first, m.n_second
    return CriterionFlags(
        entangled=c - math.sqrt(n1 * n2) > tol,
        steer_fwd=c - math.sqrt(n2 * (n1 + 0.5)) > tol,
        steer_bwd=c - math.sqrt(n1 * (n2 + 0.5)) > tol,
    )


def classify_regime(g_fwd: float, g_bwd: float) -> str:
    if g_fwd < 0 or g_bwd < 0:
        raise ContractError("steering values must be non-negative")
    fwd = g_fwd > REGIME_TOL
    bwd = g_bwd > REGIME_TOL
    if fwd and bwd:
        return "two-way"
    if fwd:
        return "one-way-forward"
    if bwd:
        return "one-way-backward"
    return "no-way"


@dataclass(frozen=True)
class CorrelationReport:
    pair: str
    e_n: float
    g_fwd: float
    g_bwd: float
    regime: str
    hz_entangled: bool
    hz_fwd: bool
    hz_bwd: bool
    moments: PairMoments


def correlation_report(v: np.ndarray, pair="ab") -> CorrelationReport:
    """All measures, moments and criterion flags for one mode pair of ``v``."""
    r = reduce_pair(v, pair)
    g_fwd = gaussian_steering(r, "fwd")
    g_bwd = gaussian_steering(r, "bwd")
    mom = moments_from_cm(r)
    flags = hz_criteria(mom)
    return CorrelationReport(
        pair=r.pair,
        e_n=log_negativity(r),
        g_fwd=g_fwd,
        g_bwd=g_bwd,
        regime=classify_regime(g_fwd, g_bwd),
        hz_entangled=flags.entangled,
        hz_fwd=flags.steer_fwd,
        hz_bwd=flags.steer_bwd,
        moments=mom,
    )
