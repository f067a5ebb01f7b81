"""Randomized cross-checks of the numerical pipeline against independent routes.

* closed-form moments vs moments of the numerical steady state (quarter phases),
* Schur Lyapunov solver vs the dense Kronecker solve,
* measure-based vs moment-based entanglement/steering verdicts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import analytic_moments
from .lyapunov import (
    MARGIN_TOL,
    solve_lyapunov_vectorized,
    solve_steady_state,
    verify_physicality,
)
from .measures import correlation_report, moments_from_cm, reduce_pair
from .model import SystemParams, build_diffusion_matrix, build_drift_matrix, check_stability

__all__ = [
    "CheckResult",
    "random_stable_params",
    "criterion_margins",
    "check_analytic_oracle",
    "check_lyapunov_oracle",
    "check_criterion_equivalence",
    "run_selftest",
]

BOUNDARY_BAND = 1e-6


def random_stable_params(rng: np.random.Generator, quarter_phase: bool = True,
                         thermal_ab: bool = False, margin: float = MARGIN_TOL) -> SystemParams:
    """Draw a stable parameter set by rejection.

    Rates in [0.1, 20], couplings in [0, 20], ``nbar_c`` in [0, 50]. With
    ``quarter_phase`` the phase is pi/2 or 3pi/2, otherwise uniform on [0, 2pi).
    """
    while True:
        ka, kb, gc = rng.uniform(0.1, 20.0, 3)
        lam, ga, gb = rng.uniform(0.0, 20.0, 3)
        if quarter_phase:
            phi = (0.5 if rng.random() < 0.5 else 1.5) * math.pi
        else:
            phi = rng.uniform(0.0, 2 * math.pi)
        nc = rng.uniform(0.0, 50.0)
        na, nb = (rng.uniform(0.0, 5.0, 2) if thermal_ab else (0.0, 0.0))
        p = SystemParams(ka, kb, gc, lam, phi, ga, gb, na, nb, nc)
        if check_stability(p).max_real_part < -margin:
            return p


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    checked: int
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def check_analytic_oracle(draws: int = 1000, seed: int = 0, rtol: float = 1e-8) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        p = random_stable_params(rng, quarter_phase=True)
        num = moments_from_cm(reduce_pair(solve_steady_state(build_drift_matrix(p), build_diffusion_matrix(p)), "ab"))
        ref = analytic_moments(p)
        worst = max(worst, _rel(num.n_first, ref.n_a), _rel(num.n_second, ref.n_b),
                    _rel(num.corr, ref.corr))
    return CheckResult("closed-form moments", worst <= rtol, draws,
                       f"{draws} draws, worst relative error {worst:.2e} (tol {rtol:g})")


def check_lyapunov_oracle(draws: int = 1000, seed: int = 1, rtol: float = 1e-8) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        p = random_stable_params(rng, quarter_phase=False)
        m, d = build_drift_matrix(p), build_diffusion_matrix(p)
        v = solve_steady_state(m, d, method="schur")
        ref = solve_lyapunov_vectorized(m, d)
        worst = max(worst, float(np.max(np.abs(v - ref)) / np.max(np.abs(ref))))
    return CheckResult("Lyapunov solvers", worst <= rtol, draws,
                       f"{draws} draws, worst scaled entrywise error {worst:.2e} (tol {rtol:g})")


def criterion_margins(moments) -> tuple[float, float, float]:
    """Signed distances of the three moment inequalities from their boundaries."""
    c = moments.abs_corr
    n1, n2 = moments.n_first, moments.n_second
    return (
        c - math.sqrt(n1 * n2),
        c - math.sqrt(n2 * (n1 + 0.5)),
        c - math.sqrt(n1 * (n2 + 0.5)),
    )


def check_criterion_equivalence(draws: int = 1000, seed: int = 2, pair: str = "ab",
                                band: float = BOUNDARY_BAND) -> CheckResult:
    rng = np.random.default_rng(seed)
    mismatches = compared = 0
    for _ in range(draws):
        p = random_stable_params(rng, quarter_phase=False)
        v = solve_steady_state(build_drift_matrix(p), build_diffusion_matrix(p))
        if not verify_physicality(v).physical:
            mismatches += 1
            continue
        rep = correlation_report(v, pair)
        margins = criterion_margins(rep.moments)
        verdicts = ((rep.e_n > 0, rep.hz_entangled), (rep.g_fwd > 0, rep.hz_fwd),
                    (rep.g_bwd > 0, rep.hz_bwd))
        for margin, (by_measure, by_moment) in zip(margins, verdicts):
            if abs(margin) <= band:
                continue
            compared += 1
            mismatches += by_measure != by_moment
    return CheckResult(f"criterion equivalence ({pair})", mismatches == 0, compared,
                       f"{compared} verdicts compared, {mismatches} mismatches")


def run_selftest(draws: int = 300, seed: int = 0) -> list[CheckResult]:
    return [
        check_analytic_oracle(draws, seed),
        check_lyapunov_oracle(draws, seed + 1),
        check_criterion_equivalence(draws, seed + 2),
    ]
