"""Independent reference computations used only by the tests.

Nothing here imports the routines it checks.
"""

import numpy as np


def kron_lyapunov(m, d):
    """Solve M V + V M^T = -D as 36 unknowns: (I kron M + M kron I) vec(V) = -vec(D)."""
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    a = np.zeros((n * n, n * n))
    # build the operator column by column from its action on basis matrices
    for k in range(n * n):
        e = np.zeros(n * n)
        e[k] = 1.0
        x = e.reshape(n, n, order="F")
        a[:, k] = (m @ x + x @ m.T).reshape(-1, order="F")
    vec = np.linalg.solve(a, -np.asarray(d, dtype=float).reshape(-1, order="F"))
    v = vec.reshape(n, n, order="F")
    return 0.5 * (v + v.T)


def drift_from_langevin(ka, kb, gc, lam, phi, ga, gb):
    """Drift matrix transcribed entry by entry from the printed coefficient table."""
    s, c = np.sin(phi), np.cos(phi)
    table = [
        [ka, 0, -lam * s, lam * c, 0, ga],
        [0, ka, lam * c, lam * s, ga, 0],
        [-lam * s, lam * c, kb, 0, 0, -gb],
        [lam * c, lam * s, 0, kb, gb, 0],
        [0, ga, 0, -gb, gc, 0],
        [ga, 0, gb, 0, 0, gc],
    ]
    return -np.array(table, dtype=float)


def tmss_cm(r):
    """Two-mode squeezed vacuum with vacuum variance 1/2."""
    ch, sh = np.cosh(2 * r) / 2, np.sinh(2 * r) / 2
    return np.array([
        [ch, 0, sh, 0],
        [0, ch, 0, -sh],
        [sh, 0, ch, 0],
        [0, -sh, 0, ch],
    ])


def williamson_min(v):
    """Smallest symplectic eigenvalue via sqrt of eigenvalues of -(Omega V)^2."""
    n = v.shape[0] // 2
    omega = np.kron(np.eye(n), [[0, 1], [-1, 0]])
    w = np.linalg.eigvals(-(omega @ v) @ (omega @ v)).real
    return float(np.sqrt(np.clip(w, 0, None)).min())


def partial_transpose_nu_min(v4):
    """Smallest symplectic eigenvalue of the partial transpose (Y_b -> -Y_b)."""
    p = np.diag([1.0, 1.0, 1.0, -1.0])
    return williamson_min(p @ v4 @ p)
