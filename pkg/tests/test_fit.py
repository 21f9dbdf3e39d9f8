"""Coefficient extraction: exact recovery, diagnostics, cross-checks."""

import numpy as np
import pytest

from heatcoeff.fit import (
    fit_content,
    fit_powers,
    fit_trace,
    sequential_leading_coefficients,
)
from heatcoeff.oracle import TraceSamples


def _samples(ts, values):
    ts = np.asarray(ts, float)
    return TraceSamples(ts, np.asarray(values, float), np.zeros_like(ts))


def test_exact_model_is_recovered_to_roundoff():
    ts = np.geomspace(1e-4, 1e-3, 24)
    powers = np.array([-0.5, 0.0, 0.5, 1.0])
    truth = np.array([2.0, -0.25, 0.125, 3.0])
    values = sum(c * ts**p for c, p in zip(truth, powers))
    fr = fit_powers(ts, values, powers)
    assert fr.trusted
    assert np.allclose(fr.coefficients, truth, rtol=0, atol=1e-6)
    assert np.all(np.abs(fr.coefficients - truth) <= 50.0 * fr.uncertainties + 1e-12)
    assert fr.condition < 1e6


def test_coefficient_lookup_by_order():
    ts = np.geomspace(1e-4, 1e-3, 20)
    values = 2.0 * ts**-0.5 + 0.5 * ts**0.5
    fr = fit_trace(_samples(ts, values), m=1, n_max=2)
    assert fr.coefficient(0, 1) == pytest.approx(2.0, abs=1e-9)
    assert fr.coefficient(1, 1) == pytest.approx(0.0, abs=1e-9)
    assert fr.coefficient(2, 1) == pytest.approx(0.5, abs=1e-9)
    with pytest.raises(KeyError):
        fr.coefficient(3, 1)


def test_content_fit_uses_half_integer_powers():
    ts = np.geomspace(1e-4, 1e-3, 20)
    values = 1.0 - 2.0 * np.sqrt(ts) + 0.75 * ts
    fr = fit_content(ts, values, n_max=2)
    assert fr.coefficient(0) == pytest.approx(1.0, abs=1e-12)
    assert fr.coefficient(1) == pytest.approx(-2.0, abs=1e-10)
    assert fr.coefficient(2) == pytest.approx(0.75, abs=1e-8)


def test_too_few_samples_rejected():
    ts = np.geomspace(1e-4, 1e-3, 4)
    with pytest.raises(ValueError):
        fit_powers(ts, np.ones_like(ts), np.array([-0.5, 0.0, 0.5]))


def test_degenerate_design_flags_condition():
    ts = np.geomspace(1e-4, 1e-3, 24)
    # two nearly identical powers make the design effectively rank deficient
    powers = np.array([0.5, 0.5 + 1e-13])
    values = ts**0.5
    fr = fit_powers(ts, values, powers)
    assert fr.condition > 1e10
    assert not fr.trusted
    assert not fr.stable_for(1, 0)


def test_unmodeled_order_breaks_stability():
    # strong t^1.5 contamination on a wide window, model stops at t^1
    ts = np.geomspace(1e-2, 1.0, 30)
    values = 2.0 * ts**-0.5 + 1.0 + 5.0 * ts**1.5
    fr = fit_powers(ts, values, np.array([-0.5, 0.0, 0.5, 1.0]))
    assert not bool(np.all(fr.stability)) or np.any(
        fr.uncertainties > 1e-3
    ), "contamination must surface in the drift or the uncertainties"


def test_sequential_elimination_matches_least_squares():
    ts = np.geomspace(1e-5, 1e-4, 24)
    a = np.array([1.25, -0.5, 0.2])
    values = a[0] * ts**-0.5 + a[1] + a[2] * ts**0.5
    lead = sequential_leading_coefficients(_samples(ts, values), m=1, orders=3)
    assert np.allclose(lead, a, rtol=0, atol=1e-6)
