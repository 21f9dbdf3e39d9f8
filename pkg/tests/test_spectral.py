"""Cross-checks of the spectral-boundary coefficient tables.

The package implementation and the straight-line re-evaluation in
``_spectral_reference`` were written separately; randomized agreement
between them guards every matrix term and dimension-dependent rational.
The dimension constant and one collapsible special case have hand
closed forms.
"""

import math

import numpy as np
import pytest

from heatcoeff.geometry import (
    GeometryInvariants,
    Region,
    SmearingJets,
    SpectralBCData,
    tangential_gammas,
)
from heatcoeff.trace_coeffs import (
    UnsupportedOrder,
    c_of_m,
    interior_coefficient,
    spectral_coefficient,
)

from _spectral_reference import dim_constant, order1, order2_boundary, order3


def random_data(rng, m):
    g = tangential_gammas(m)
    d = g[0].shape[0]
    psi = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    h = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    theta = (h + h.conj().T) / 2.0
    return SpectralBCData(
        m=m,
        measure=float(rng.uniform(0.5, 3.0)),
        psi_hat=psi,
        theta=theta,
        gammas=g,
        Laa=float(rng.normal()),
        LabLab=float(rng.normal()),
        LaaLbb=float(rng.normal()),
        tau_b=float(rng.normal()),
        rho_mm=float(rng.normal()),
    )


class TestDimensionConstant:
    # Gamma(m/2) / (Gamma(1/2) Gamma((m+1)/2)) has elementary values
    CLOSED = {
        4: 4.0 / (3.0 * math.pi),
        5: 3.0 / 8.0,
        6: 16.0 / (15.0 * math.pi),
        7: 5.0 / 16.0,
        8: 32.0 / (35.0 * math.pi),
    }

    @pytest.mark.parametrize("m,want", sorted(CLOSED.items()))
    def test_closed_values(self, m, want):
        assert c_of_m(m) == pytest.approx(want, rel=1e-14)
        assert dim_constant(m) == pytest.approx(want, rel=1e-14)


class TestTwoTranscriptionsAgree:
    def test_randomized(self):
        rng = np.random.default_rng(314159)
        jets = SmearingJets(f=1.0)
        for case in range(50):
            m = int(rng.choice([4, 5, 6]))
            data = random_data(rng, m)
            f = float(rng.uniform(0.5, 2.0))
            f_m = float(rng.normal())
            f_mm = float(rng.normal())
            jets = SmearingJets(f=f, f_m=f_m, f_mm=f_mm)
            geo = GeometryInvariants(m=m, regions=[Region(measure=1.0)])

            got1 = spectral_coefficient(1, data, jets).value
            assert got1 == pytest.approx(order1(data, f), rel=1e-12), f"case {case}"

            rep2 = spectral_coefficient(2, data, jets, geo=geo)
            bnd2 = rep2.value - interior_coefficient(2, geo, SmearingJets(f=f)).value
            assert bnd2 == pytest.approx(
                order2_boundary(data, f, f_m), rel=1e-12, abs=1e-15
            ), f"case {case}"

            got3 = spectral_coefficient(3, data, jets).value
            assert got3 == pytest.approx(
                order3(data, f, f_m, f_mm), rel=1e-12, abs=1e-15
            ), f"case {case}"

    @pytest.mark.parametrize("m", [4, 5, 6])
    def test_scalar_map_collapses(self, m):
        # psi_hat = c * Id on a flat boundary with theta = 0: the four
        # matrix terms contract under g_a g_a = -(m-1) to
        # (1/4) ((2 - m) + (m - 1) C(m)) c^2 d
        c = 0.73
        g = tangential_gammas(m)
        d = g[0].shape[0]
        data = SpectralBCData(
            m=m,
            measure=1.0,
            psi_hat=c * np.eye(d, dtype=complex),
            theta=np.zeros((d, d), dtype=complex),
            gammas=g,
        )
        want = (
            (4.0 * math.pi) ** (-(m - 1) / 2.0)
            * 0.25
            * ((2.0 - m) + (m - 1.0) * c_of_m(m))
            * c
            * c
            * d
        )
        assert spectral_coefficient(3, data).value == pytest.approx(want, rel=1e-13)
        assert order3(data) == pytest.approx(want, rel=1e-13)


class TestValidation:
    def test_needs_interior_for_even_orders(self):
        rng = np.random.default_rng(1)
        data = random_data(rng, 4)
        with pytest.raises(ValueError):
            spectral_coefficient(0, data)
        with pytest.raises(ValueError):
            spectral_coefficient(2, data)

    def test_order_limit(self):
        rng = np.random.default_rng(2)
        data = random_data(rng, 4)
        with pytest.raises(UnsupportedOrder):
            spectral_coefficient(4, data)

    def test_low_dimension_rejected(self):
        g = tangential_gammas(4)
        d = g[0].shape[0]
        with pytest.raises(ValueError, match="m >= 4"):
            SpectralBCData(
                m=3,
                measure=1.0,
                psi_hat=np.zeros((d, d), dtype=complex),
                theta=np.zeros((d, d), dtype=complex),
                gammas=g[:2],
            )

    def test_broken_clifford_rejected(self):
        d = 4
        bad = tuple(np.eye(d, dtype=complex) for _ in range(3))
        with pytest.raises(ValueError, match="skew-adjoint|Clifford"):
            SpectralBCData(
                m=4,
                measure=1.0,
                psi_hat=np.zeros((d, d), dtype=complex),
                theta=np.zeros((d, d), dtype=complex),
                gammas=bad,
            )

    def test_dimension_mismatch_with_geometry(self):
        rng = np.random.default_rng(3)
        data = random_data(rng, 4)
        geo = GeometryInvariants(m=5, regions=[Region(measure=1.0)])
        with pytest.raises(ValueError, match="dimension"):
            spectral_coefficient(2, data, geo=geo)
