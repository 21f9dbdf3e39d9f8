"""Exact spectra for the model geometries, complete below a stated cutoff.

Every builder enumerates all eigenvalues below ``lambda_max`` (with
multiplicity) and certifies that nothing was missed: closed-form spectra
by construction, transcendental ones by bracketing exactly one root per
interlacing window.  Each spectrum also carries an explicit polynomial
majorant of its counting function so heat-trace tails can be bounded
rigorously rather than estimated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import jn_zeros

DIRICHLET = "dirichlet"
NEUMANN = "neumann"
ROBIN = "robin"

_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with multiplicities, complete below a cutoff.

    ``count_majorant`` is a tuple of ``(coef, power)`` pairs such that the
    counting function satisfies ``N(lam) <= sum_j coef_j * lam**power_j``
    for all ``lam >= complete_below``; trace tail bounds integrate it.
    """

    eigenvalues: np.ndarray
    multiplicities: np.ndarray
    complete_below: float
    count_majorant: tuple[tuple[float, float], ...]

    def __post_init__(self):
        lam = np.asarray(self.eigenvalues, dtype=float)
        mult = np.asarray(self.multiplicities, dtype=float)
        if lam.ndim != 1 or lam.shape != mult.shape:
            raise ValueError("eigenvalues and multiplicities must be parallel 1-d arrays")
        if lam.size > 1 and np.any(np.diff(lam) < -_ZERO_TOL):
            raise ValueError("eigenvalues must be ascending")
        if np.any(mult < 1):
            raise ValueError("multiplicities must be positive")
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "multiplicities", mult)

    @property
    def count(self) -> float:
        return float(self.multiplicities.sum())

    def counting_function(self, lam: float) -> float:
        return float(self.multiplicities[self.eigenvalues <= lam].sum())


def _finish(pairs, lambda_max: float, majorant) -> Spectrum:
    pairs = sorted(pairs)
    lam = np.array([p[0] for p in pairs], dtype=float)
    mult = np.array([p[1] for p in pairs], dtype=float)
    return Spectrum(lam, mult, float(lambda_max), tuple(majorant))


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


# ---------------------------------------------------------------------------
# interval

def _robin_positive_roots(L: float, s0: float, sL: float, k_max: float) -> list[float]:
    """Roots of ``(k^2 - s0 sL) sin(kL) + k (s0 + sL) cos(kL)`` in ``(0, k_max]``.

    With ``s0 + sL != 0`` the secular function alternates sign at the
    window ends ``k = n pi / L``, so each window holds exactly one root.
    """

    def h(k: float) -> float:
        return (k * k - s0 * sL) * math.sin(k * L) + k * (s0 + sL) * math.cos(k * L)

    roots: list[float] = []
    n = 0
    while True:
        lo = n * math.pi / L
        hi = (n + 1) * math.pi / L
        if lo > k_max:
            break
        a = lo if n > 0 else 1e-9 * (1.0 / L)
        ha, hb = h(a), h(hi)
        if ha == 0.0:
            a *= 1.0 + 1e-12
            ha = h(a)
        if ha * hb < 0:
            roots.append(brentq(h, a, hi, xtol=1e-15, rtol=8.9e-16))
        elif hb == 0.0:
            roots.append(hi)
        n += 1
    return [r for r in roots if 0 < r <= k_max]


def _robin_negative_eigenvalues(L: float, s0: float, sL: float) -> list[float]:
    """Negative eigenvalues ``-kappa^2`` from the hyperbolic secular equation.

    Beyond ``kappa >= max(3/L, 2(|s0|+|sL|), 2 sqrt(|s0 sL|))`` the
    equation ``tanh(kappa L) = kappa (s0+sL) / (kappa^2 + s0 sL)`` has no
    solution (left side exceeds 2/3 bound of the right side), so a scan up
    to that point is exhaustive.
    """

    def psi(kappa: float) -> float:
        return (kappa * kappa + s0 * sL) * math.sinh(kappa * L) - kappa * (
            s0 + sL
        ) * math.cosh(kappa * L)

    kappa_max = max(3.0 / L, 2.0 * (abs(s0) + abs(sL)), 2.0 * math.sqrt(abs(s0 * sL)))
    grid = np.linspace(1e-9 / L, kappa_max, 4001)
    vals = np.array([psi(k) for k in grid])
    roots = []
    for i in range(len(grid) - 1):
        if vals[i] == 0.0:
            roots.append(grid[i])
        elif vals[i] * vals[i + 1] < 0:
            roots.append(brentq(psi, grid[i], grid[i + 1], xtol=1e-15, rtol=8.9e-16))
    return [-r * r for r in roots if r > 1e-8 / L]


def interval_spectrum(
    L: float,
    lambda_max: float,
    bc: str = DIRICHLET,
    S: tuple[float, float] = (0.0, 0.0),
) -> Spectrum:
    """Spectrum of ``-d^2/dx^2`` on ``[0, L]``.

    Robin means ``u_;m + S u = 0`` at each end with the inward normal,
    i.e. ``u'(0) = -S_0 u(0)`` and ``u'(L) = +S_L u(L)``.
    """
    L = _check_positive("L", L)
    lambda_max = _check_positive("lambda_max", lambda_max)
    k_max = math.sqrt(lambda_max)
    majorant = ((L / math.pi, 0.5), (4.0, 0.0))
    pairs: list[tuple[float, float]] = []
    if bc == DIRICHLET:
        n = 1
        while (n * math.pi / L) ** 2 < lambda_max:
            pairs.append(((n * math.pi / L) ** 2, 1.0))
            n += 1
    elif bc == NEUMANN:
        pairs.append((0.0, 1.0))
        n = 1
        while (n * math.pi / L) ** 2 < lambda_max:
            pairs.append(((n * math.pi / L) ** 2, 1.0))
            n += 1
    elif bc == ROBIN:
        s0, sL = float(S[0]), float(S[1])
        if s0 == 0.0 and sL == 0.0:
            return interval_spectrum(L, lambda_max, NEUMANN)
        if abs(s0 + sL) < _ZERO_TOL * (1.0 + abs(s0) + abs(sL)):
            # secular equation degenerates to sin(kL) = 0
            n = 1
            while (n * math.pi / L) ** 2 < lambda_max:
                pairs.append(((n * math.pi / L) ** 2, 1.0))
                n += 1
            if s0 != 0.0:
                pairs.append((-s0 * s0, 1.0))
        else:
            for k in _robin_positive_roots(L, s0, sL, k_max):
                if k * k < lambda_max:
                    pairs.append((k * k, 1.0))
            for lam in _robin_negative_eigenvalues(L, s0, sL):
                pairs.append((lam, 1.0))
            scale = 1.0 + abs(s0) + abs(sL) + abs(s0 * sL) * L
            if abs(s0 + sL - s0 * sL * L) < 1e-12 * scale:
                pairs.append((0.0, 1.0))
    else:
        raise ValueError(f"unknown interval boundary condition {bc!r}")
    return _finish(pairs, lambda_max, majorant)


# ---------------------------------------------------------------------------
# circle and circle with a delta interface

def circle_spectrum(L: float, lambda_max: float) -> Spectrum:
    """Spectrum of ``-d^2/dx^2`` on a circle of circumference ``L``."""
    L = _check_positive("L", L)
    lambda_max = _check_positive("lambda_max", lambda_max)
    pairs = [(0.0, 1.0)]
    n = 1
    while (2.0 * math.pi * n / L) ** 2 < lambda_max:
        pairs.append(((2.0 * math.pi * n / L) ** 2, 2.0))
        n += 1
    return _finish(pairs, lambda_max, ((L / math.pi, 0.5), (1.0, 0.0)))


def delta_circle_spectrum(L: float, Xi: float, lambda_max: float) -> Spectrum:
    """Circle of circumference ``L`` with a delta potential of strength ``Xi``.

    Odd eigenfunctions vanish at the defect and keep ``k = 2 pi n / L``;
    even ones solve ``2 k sin(kL/2) = Xi cos(kL/2)``, one root in each
    window ``kL/2 in ((n-1/2) pi, (n+1/2) pi)``, plus one in ``(0, pi/2)``
    when ``Xi > 0``, or one bound state when ``Xi < 0``.
    """
    L = _check_positive("L", L)
    lambda_max = _check_positive("lambda_max", lambda_max)
    Xi = float(Xi)
    if Xi == 0.0:
        return circle_spectrum(L, lambda_max)
    k_max = math.sqrt(lambda_max)

    pairs: list[tuple[float, float]] = []
    n = 1
    while (2.0 * math.pi * n / L) ** 2 < lambda_max:
        pairs.append(((2.0 * math.pi * n / L) ** 2, 1.0))
        n += 1

    def f(k: float) -> float:
        return 2.0 * k * math.sin(0.5 * k * L) - Xi * math.cos(0.5 * k * L)

    # window edges theta = k L / 2 at half-integer multiples of pi
    if Xi > 0:
        lo = 1e-9 / L
        hi = math.pi / L  # theta = pi/2
        pairs.append((brentq(f, lo, hi, xtol=1e-15, rtol=8.9e-16) ** 2, 1.0))
    else:
        def g(kappa: float) -> float:
            return 2.0 * kappa * math.sinh(0.5 * kappa * L) + Xi * math.cosh(0.5 * kappa * L)

        kappa_hi = abs(Xi) / 2.0 + 1.0 / L
        while g(kappa_hi) < 0:
            kappa_hi *= 2.0
        kappa = brentq(g, 1e-12 / L, kappa_hi, xtol=1e-15, rtol=8.9e-16)
        pairs.append((-kappa * kappa, 1.0))
    n = 1
    while (2 * n - 1) * math.pi / L <= k_max:
        lo = (2 * n - 1) * math.pi / L * (1.0 + 1e-12)
        hi = (2 * n + 1) * math.pi / L * (1.0 - 1e-12)
        root = brentq(f, lo, hi, xtol=1e-15, rtol=8.9e-16)
        if root * root < lambda_max:
            pairs.append((root * root, 1.0))
        n += 1
    return _finish(pairs, lambda_max, ((L / math.pi, 0.5), (3.0, 0.0)))


# ---------------------------------------------------------------------------
# products

def _convolve_majorants(m1, m2):
    out: dict[float, float] = {}
    for c1, p1 in m1:
        for c2, p2 in m2:
            out[p1 + p2] = out.get(p1 + p2, 0.0) + c1 * c2
    return tuple((c, p) for p, c in sorted(out.items(), reverse=True))


def _product_spectrum(s1: Spectrum, s2: Spectrum, lambda_max: float) -> Spectrum:
    """Spectrum of a metric product; sums of factor eigenvalues.

    Factors must include nothing at or below zero on one side when the
    other side is truncated, so both are required complete below
    ``lambda_max`` minus the smallest eigenvalue of the partner.
    """
    lo1 = s1.eigenvalues.min() if s1.eigenvalues.size else 0.0
    lo2 = s2.eigenvalues.min() if s2.eigenvalues.size else 0.0
    if lo1 < 0 or lo2 < 0:
        raise ValueError("product spectra need non-negative factors")
    if s1.complete_below < lambda_max - lo2 or s2.complete_below < lambda_max - lo1:
        raise ValueError("factor spectra are not complete far enough for the product")
    pairs = []
    for l1, m1 in zip(s1.eigenvalues, s1.multiplicities):
        for l2, m2 in zip(s2.eigenvalues, s2.multiplicities):
            if l1 + l2 < lambda_max:
                pairs.append((l1 + l2, m1 * m2))
    return _finish(
        pairs, lambda_max, _convolve_majorants(s1.count_majorant, s2.count_majorant)
    )


def rectangle_spectrum(
    Lx: float, Ly: float, lambda_max: float, bc: str = DIRICHLET
) -> Spectrum:
    sx = interval_spectrum(Lx, lambda_max, bc)
    sy = interval_spectrum(Ly, lambda_max, bc)
    return _product_spectrum(sx, sy, lambda_max)


def flat_torus_spectrum(L1: float, L2: float, lambda_max: float) -> Spectrum:
    return _product_spectrum(
        circle_spectrum(L1, lambda_max), circle_spectrum(L2, lambda_max), lambda_max
    )


def cylinder_spectrum(
    L: float, H: float, lambda_max: float, bc: str = DIRICHLET
) -> Spectrum:
    """Circle of circumference ``L`` times an interval of height ``H``."""
    return _product_spectrum(
        circle_spectrum(L, lambda_max), interval_spectrum(H, lambda_max, bc), lambda_max
    )


# ---------------------------------------------------------------------------
# disk

def disk_spectrum(R: float, lambda_max: float) -> Spectrum:
    """Dirichlet spectrum of the flat disk: squared Bessel zeros over ``R^2``."""
    R = _check_positive("R", R)
    lambda_max = _check_positive("lambda_max", lambda_max)
    x_max = math.sqrt(lambda_max) * R
    pairs: list[tuple[float, float]] = []
    nu = 0
    while True:
        # j_{nu,1} > nu, so once nu passes x_max no further order contributes
        if nu > x_max:
            break
        nt = max(int((x_max - nu) / math.pi) + 3, 1)
        zeros = jn_zeros(nu, nt)
        while zeros[-1] <= x_max:
            nt *= 2
            zeros = jn_zeros(nu, nt)
        zeros = zeros[zeros < x_max]
        if zeros.size == 0 and nu > 0:
            break
        mult = 1.0 if nu == 0 else 2.0
        for z in zeros:
            pairs.append(((z / R) ** 2, mult))
        nu += 1
    # Li-Yau: lambda_k >= 2 pi k / area, so N(lam) <= R^2 lam / 2
    return _finish(pairs, lambda_max, ((R * R / 2.0, 1.0),))


# ---------------------------------------------------------------------------
# sphere and hemisphere

def sphere_spectrum(R: float, lambda_max: float) -> Spectrum:
    R = _check_positive("R", R)
    lambda_max = _check_positive("lambda_max", lambda_max)
    pairs = []
    l = 0
    while l * (l + 1) / (R * R) < lambda_max:
        pairs.append((l * (l + 1) / (R * R), 2.0 * l + 1.0))
        l += 1
    return _finish(pairs, lambda_max, ((R * R, 1.0), (2.0 * R, 0.5), (1.0, 0.0)))


def hemisphere_spectrum(R: float, lambda_max: float, bc: str = DIRICHLET) -> Spectrum:
    """Hemisphere with Dirichlet (multiplicity ``l``) or Neumann (``l+1``) equator.

    Spherical harmonics split by parity under reflection through the
    equatorial plane: degree ``l`` has ``l`` odd and ``l+1`` even members.
    """
    R = _check_positive("R", R)
    lambda_max = _check_positive("lambda_max", lambda_max)
    if bc not in (DIRICHLET, NEUMANN):
        raise ValueError(f"hemisphere supports dirichlet or neumann, got {bc!r}")
    pairs = []
    l = 0
    while l * (l + 1) / (R * R) < lambda_max:
        mult = float(l) if bc == DIRICHLET else float(l + 1)
        if mult > 0:
            pairs.append((l * (l + 1) / (R * R), mult))
        l += 1
    return _finish(pairs, lambda_max, ((R * R, 1.0), (2.0 * R, 0.5), (1.0, 0.0)))
