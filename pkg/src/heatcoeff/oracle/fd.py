"""Finite-difference eigenvalue cross-checks.

These discretizations share no code with the secular-equation spectra,
so agreement after Richardson extrapolation independently certifies the
root finders.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import eigh, eigh_tridiagonal

from .spectra import DIRICHLET, NEUMANN, ROBIN


def fd_interval_eigenvalues(
    L: float,
    n_eigs: int,
    bc: str = DIRICHLET,
    S: tuple[float, float] = (0.0, 0.0),
    V: float = 0.0,
    nx: int = 400,
) -> np.ndarray:
    """Lowest eigenvalues of ``-u'' + V u`` on ``[0, L]``, second order in ``h``.

    Robin ends are assembled from mass-lumped linear elements, then
    symmetrized by the diagonal mass scaling so a tridiagonal symmetric
    solver applies.
    """
    h = L / nx
    if bc == DIRICHLET:
        n = nx - 1
        d = np.full(n, 2.0 / h**2 + V)
        e = np.full(n - 1, -1.0 / h**2)
    elif bc in (NEUMANN, ROBIN):
        s0, sL = (0.0, 0.0) if bc == NEUMANN else (float(S[0]), float(S[1]))
        n = nx + 1
        d = np.full(n, 2.0 / h**2 + V)
        e = np.full(n - 1, -1.0 / h**2)
        # u_;m + S u = 0 with the inward normal means u'(0) = -s0 u(0), so
        # the boundary term of the form is -s0 u(0)^2: corner mass h/2,
        # K00 = 1/h - s0, scaled by M^(-1/2) on both sides
        d[0] = 2.0 / h**2 - 2.0 * s0 / h + V
        d[-1] = 2.0 / h**2 - 2.0 * sL / h + V
        e[0] = -np.sqrt(2.0) / h**2
        e[-1] = -np.sqrt(2.0) / h**2
    else:
        raise ValueError(f"unknown boundary condition {bc!r}")
    if n_eigs > n:
        raise ValueError(f"grid too coarse for {n_eigs} eigenvalues")
    vals = eigh_tridiagonal(d, e, select="i", select_range=(0, n_eigs - 1))[0]
    return vals


def fd_delta_circle_eigenvalues(
    L: float, Xi: float, n_eigs: int, nx: int = 600
) -> np.ndarray:
    """Lowest eigenvalues of the circle with a delta potential at one node.

    The delta is lumped as ``Xi / h`` on its grid point, the standard
    first-order-in-measure, second-order-in-h discretization.
    """
    h = L / nx
    A = np.zeros((nx, nx))
    idx = np.arange(nx)
    A[idx, idx] = 2.0 / h**2
    A[idx, (idx + 1) % nx] = -1.0 / h**2
    A[idx, (idx - 1) % nx] = -1.0 / h**2
    A[0, 0] += Xi / h
    vals = eigh(A, eigvals_only=True, subset_by_index=(0, n_eigs - 1))
    return vals


def richardson(coarse: np.ndarray, fine: np.ndarray, order: int = 2) -> np.ndarray:
    """Extrapolate from a mesh value and its half-step refinement."""
    w = 2.0**order
    return (w * np.asarray(fine) - np.asarray(coarse)) / (w - 1.0)


def observed_order(coarse, mid, fine) -> np.ndarray:
    """Convergence order estimate from three nested meshes (h, h/2, h/4)."""
    num = np.abs(np.asarray(coarse) - np.asarray(mid))
    den = np.abs(np.asarray(mid) - np.asarray(fine))
    return np.log2(num / den)
