"""Extract expansion coefficients from sampled traces or content curves.

A trace sample set on a window ``[t_min, t_max]`` is regressed onto the
model ``sum_n c_n t^{(n-m)/2}`` (heat trace in dimension ``m``) or
``sum_n c_n t^{n/2}`` (heat content).  The design matrix is column
scaled before solving, the condition number gates a ``trusted`` flag,
and two stability checks accompany every fit: refitting on the lower
half of the window, and a model-free sequential-elimination estimate of
the leading coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .oracle.traces import TraceSamples

CONDITION_LIMIT = 1.0e10


@dataclass(frozen=True)
class FitResult:
    """Least-squares coefficients with diagnostics.

    ``coefficients[j]`` multiplies ``t**powers[j]``.  ``uncertainties``
    are one-sigma values from the residual-scaled normal equations; they
    measure self-consistency of the window, not oracle truncation.
    ``stability[j]`` is False when the window-stability refit moved
    coefficient ``j`` by more than the joint uncertainty of the two
    window fits times a safety factor; the top orders absorb truncation first,
    so callers should gate on the orders they actually report (see
    ``stable_for``).  ``trusted`` folds the condition limit together
    with stability of every coefficient.
    """

    powers: np.ndarray
    coefficients: np.ndarray
    uncertainties: np.ndarray
    condition: float
    residual_norm: float
    window: tuple[float, float]
    window_shift: np.ndarray
    stability: np.ndarray
    trusted: bool

    def coefficient(self, n: int, m: int = 0) -> float:
        """Coefficient of order ``n``, given the dimension used in the fit."""
        target = 0.5 * (n - m)
        for p, c in zip(self.powers, self.coefficients):
            if abs(p - target) < 1e-12:
                return float(c)
        raise KeyError(f"order n={n} not among fitted powers")

    def uncertainty(self, n: int, m: int = 0) -> float:
        target = 0.5 * (n - m)
        for p, u in zip(self.powers, self.uncertainties):
            if abs(p - target) < 1e-12:
                return float(u)
        raise KeyError(f"order n={n} not among fitted powers")

    def stable_for(self, n: int, m: int = 0) -> bool:
        """Condition limit plus window stability of the order-``n`` term."""
        if self.condition >= CONDITION_LIMIT:
            return False
        target = 0.5 * (n - m)
        for p, s in zip(self.powers, self.stability):
            if abs(p - target) < 1e-12:
                return bool(s)
        raise KeyError(f"order n={n} not among fitted powers")


def _design(ts: np.ndarray, powers: np.ndarray) -> np.ndarray:
    return np.power.outer(ts, powers)


def _solve_scaled(A: np.ndarray, y: np.ndarray):
    scales = np.linalg.norm(A, axis=0)
    scales[scales == 0.0] = 1.0
    B = A / scales
    coef, _, _, sing = np.linalg.lstsq(B, y, rcond=None)
    cond = float(sing[0] / sing[-1]) if sing[-1] > 0 else math.inf
    resid = y - B @ coef
    dof = max(B.shape[0] - B.shape[1], 1)
    sigma2 = float(resid @ resid) / dof
    # pinv keeps rank-deficient designs diagnosable instead of raising;
    # the condition number already marks them untrusted
    cov = np.linalg.pinv(B.T @ B) * sigma2
    err = np.sqrt(np.diag(cov))
    return coef / scales, err / scales, cond, float(np.linalg.norm(resid))


def fit_powers(ts, values, powers) -> FitResult:
    """Least-squares fit of ``values ~ sum_j c_j t**powers[j]``."""
    ts = np.asarray(ts, dtype=float)
    values = np.asarray(values, dtype=float)
    powers = np.asarray(powers, dtype=float)
    if ts.ndim != 1 or ts.shape != values.shape:
        raise ValueError("ts and values must be parallel 1-d arrays")
    if ts.size < powers.size + 2:
        raise ValueError(
            f"need at least {powers.size + 2} samples for {powers.size} powers"
        )
    coef, err, cond, rnorm = _solve_scaled(_design(ts, powers), values)

    # refit on the lower half-decade of the window; large drift in any
    # coefficient signals contamination by omitted higher orders
    # refit on the lower half-decade; drift beyond the joint uncertainty
    # of the two estimates signals contamination by omitted orders
    t_cut = ts.max() / math.sqrt(10.0)
    sub = ts <= t_cut
    shift = np.full_like(coef, np.nan)
    bound = np.full_like(coef, np.inf)
    if sub.sum() >= powers.size + 2:
        coef2, err2, _, _ = _solve_scaled(_design(ts[sub], powers), values[sub])
        shift = coef2 - coef
        bound = 50.0 * (err + err2) + 1e-13
    stability = np.isnan(shift) | (np.abs(shift) <= bound)
    trusted = cond < CONDITION_LIMIT and bool(stability.all())
    return FitResult(
        powers=powers,
        coefficients=coef,
        uncertainties=err,
        condition=cond,
        residual_norm=rnorm,
        window=(float(ts.min()), float(ts.max())),
        window_shift=shift,
        stability=stability,
        trusted=trusted,
    )


def fit_trace(samples: TraceSamples, m: int, n_max: int) -> FitResult:
    """Fit trace samples to ``sum_{n=0..n_max} c_n t^{(n-m)/2}``."""
    powers = np.array([(n - m) / 2.0 for n in range(n_max + 1)])
    return fit_powers(samples.t, samples.values, powers)


def fit_content(ts, values, n_max: int) -> FitResult:
    """Fit content samples to ``sum_{n=0..n_max} c_n t^{n/2}``."""
    powers = np.array([n / 2.0 for n in range(n_max + 1)])
    return fit_powers(ts, values, powers)


def _neville_at_zero(x: np.ndarray, y: np.ndarray) -> float:
    t = y.astype(float).copy()
    for j in range(1, t.size):
        t = (t[:-1] * x[j:] - t[1:] * x[:-j]) / (x[j:] - x[:-j])
    return float(t[0])


def sequential_leading_coefficients(
    samples: TraceSamples, m: int, orders: int = 3, points: int = 8
) -> np.ndarray:
    """Model-free estimate of the first coefficients by repeated elimination.

    Works in the variable ``x = sqrt(t)``, in which the trace times
    ``x**m`` is a power series: extrapolate the series to ``x = 0`` with
    a Neville triangle, peel the constant off, divide by ``x``, repeat.
    A small subsample keeps the extrapolation well conditioned.  This
    cross-checks the least-squares route without sharing its design
    matrix.
    """
    x = np.sqrt(samples.t)
    order = np.argsort(x)
    x = x[order]
    g = samples.values[order] * x**m
    if x.size > points:
        pick = np.unique(np.linspace(0, x.size - 1, points).round().astype(int))
        x, g = x[pick], g[pick]
    out = []
    for _ in range(orders):
        out.append(_neville_at_zero(x, g))
        g = (g - out[-1]) / x
    return np.array(out)
