"""Steady-state covariance from the Lyapunov equation ``M V + V M^T = -D``.

Two independent solvers are provided:

* ``solve_lyapunov_schur`` -- Bartels-Stewart on the complex Schur form of ``M``
  (default, O(n^3)).
* ``solve_lyapunov_vectorized`` -- dense solve of the n^2 x n^2 Kronecker system
  ``(I kron M + M kron I) vec(V) = -vec(D)``. Slow but transparent; kept as the
  cross-check for the Schur path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ContractError, NumericalError, StabilityError
from .model import SystemParams, build_diffusion_matrix, build_drift_matrix

__all__ = [
    "SymplecticSpectrum",
    "solve_lyapunov_schur",
    "solve_lyapunov_vectorized",
    "solve_steady_state",
    "steady_state",
    "symplectic_form",
    "symplectic_eigenvalues",
    "verify_physicality",
    "MARGIN_TOL",
    "RESIDUAL_TOL",
    "PHYSICALITY_TOL",
]

#: Refuse to solve when the slowest decay rate is closer to zero than this.
MARGIN_TOL = 1e-9
#: Relative residual bound
#: ``|MV + VM^T + D|_max <= RESIDUAL_TOL * max(1, |D|_max, |M|_max |V|_max)``.
RESIDUAL_TOL = 1e-10
#: Symplectic eigenvalues may undershoot the vacuum value 1/2 by this much.
PHYSICALITY_TOL = 1e-9
SYMMETRY_TOL = 1e-10

VACUUM = 0.5


def solve_lyapunov_schur(m: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Solve ``m v + v m^T = -d`` by Bartels-Stewart.

    With ``m = U T U^H`` (complex Schur, ``T`` upper triangular) the equation
    becomes ``T Y + Y T^H = F`` with ``F = -U^H d U`` and ``v = U Y U^H``.
    Column ``j`` of ``Y`` only couples to columns ``k > j``, so the columns are
    obtained by back-substitution from the last one.
    """
    m = np.asarray(m, dtype=float)
    d = np.asarray(d, dtype=float)
    n = m.shape[0]
    t, u = scipy.linalg.schur(m, output="complex")
    f = -(u.conj().T @ d @ u)
    y = np.zeros((n, n), dtype=complex)
    eye = np.eye(n)
    for j in range(n - 1, -1, -1):
        rhs = f[:, j] - y[:, j + 1 :] @ t[j, j + 1 :].conj()
        y[:, j] = scipy.linalg.solve_triangular(t + t[j, j].conj() * eye, rhs)
    return (u @ y @ u.conj().T).real


def solve_lyapunov_vectorized(m: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Solve ``m v + v m^T = -d`` as one dense linear system in ``vec(v)``."""
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    eye = np.eye(n)
    big = np.kron(eye, m) + np.kron(m, eye)
    try:
        vec = np.linalg.solve(big, -np.asarray(d, dtype=float).reshape(-1, order="F"))
    except np.linalg.LinAlgError as exc:
        raise NumericalError("singular Kronecker system in Lyapunov solve") from exc
    return vec.reshape(n, n, order="F")


_SOLVERS = {"schur": solve_lyapunov_schur, "vectorized": solve_lyapunov_vectorized}


def solve_steady_state(m: np.ndarray, d: np.ndarray, method: str = "schur") -> np.ndarray:
    """Steady-state covariance matrix for drift ``m`` and diffusion ``d``.

    Raises
    ------
    StabilityError
        If the largest real part of the eigenvalues of ``m`` is not below
        ``-MARGIN_TOL``. Near-marginal systems are refused rather than
        returning an arbitrarily large matrix.
    NumericalError
        If the solve fails or the residual exceeds the documented bound.
    """
    if method not in _SOLVERS:
        raise ContractError(f"unknown Lyapunov method {method!r}; choose from {sorted(_SOLVERS)}")
    m = np.asarray(m, dtype=float)
    d = np.asarray(d, dtype=float)
    max_re = float(np.max(np.linalg.eigvals(m).real))
    if not max_re < -MARGIN_TOL:
        raise StabilityError(
            f"drift matrix is not stable (max real part {max_re:.3e}); no steady state"
        )
    v = _SOLVERS[method](m, d)
    v = 0.5 * (v + v.T)
    if not np.all(np.isfinite(v)):
        raise NumericalError("Lyapunov solve produced non-finite entries")
    residual = np.max(np.abs(m @ v + v @ m.T + d))
    scale = max(1.0, float(np.max(np.abs(d))), float(np.max(np.abs(m)) * np.max(np.abs(v))))
    bound = RESIDUAL_TOL * scale
    if residual > bound:
        raise NumericalError(f"Lyapunov residual {residual:.3e} exceeds {bound:.3e}")
    return v


def steady_state(params: SystemParams, method: str = "schur") -> np.ndarray:
    """Build ``M`` and ``D`` for ``params`` and return the steady-state covariance."""
    return solve_steady_state(build_drift_matrix(params), build_diffusion_matrix(params), method)


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form for ``(X_1, Y_1, X_2, Y_2, ...)`` ordering."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def symplectic_eigenvalues(v: np.ndarray) -> np.ndarray:
    """Sorted symplectic eigenvalues (one per mode) of a covariance matrix."""
    v = np.asarray(v, dtype=float)
    omega = symplectic_form(v.shape[0] // 2)
    moduli = np.sort(np.abs(np.linalg.eigvals(1j * omega @ v)))
    # eigenvalues of i*Omega*V come in +-nu pairs
    return 0.5 * (moduli[0::2] + moduli[1::2])


@dataclass(frozen=True)
class SymplecticSpectrum:
    eigenvalues: np.ndarray
    physical: bool
    min_eigenvalue: float


def verify_physicality(v: np.ndarray, tol: float = PHYSICALITY_TOL) -> SymplecticSpectrum:
    """Check the uncertainty relation ``nu_k >= 1/2`` for every symplectic eigenvalue."""
    v = np.asarray(v, dtype=float)
    if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] % 2:
        raise ContractError(f"covariance matrix must be square with even size, got {v.shape}")
    if np.max(np.abs(v - v.T)) > SYMMETRY_TOL:
        raise ContractError("covariance matrix is not symmetric")
    nu = symplectic_eigenvalues(v)
    psd = bool(np.min(np.linalg.eigvalsh(v)) >= -SYMMETRY_TOL)
    return SymplecticSpectrum(
        eigenvalues=nu,
        physical=bool(psd and nu.min() >= VACUUM - tol),
        min_eigenvalue=float(nu.min()),
    )
