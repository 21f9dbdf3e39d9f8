"""Catalog geometries and invariant-record validation."""

import numpy as np
import pytest

from heatcoeff.geometry import (
    CATALOG_NAMES,
    DIRICHLET,
    ROBIN,
    TRANSMITTAL,
    GeometryInvariants,
    Region,
    SpectralBCData,
    catalog_geometry,
    tangential_gammas,
    with_potential,
)

DEFAULT_PARAMS = {
    "interval": [1.0],
    "circle": [1.0],
    "rectangle": [1.0, 2.0],
    "flat_torus": [1.0, 2.0],
    "disk": [1.0],
    "sphere": [1.0],
    "hemisphere": [1.0],
    "delta_circle": [1.0],
    "cylinder": [1.0, 2.0],
}


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_builds(name):
    geo, comps = catalog_geometry(name, DEFAULT_PARAMS[name])
    assert geo.volume > 0
    for c in comps:
        assert c.measure > 0


def test_interval_and_disk_records():
    geo, comps = catalog_geometry("interval", [2.5])
    assert geo.m == 1 and geo.volume == 2.5 and len(comps) == 2

    geo, comps = catalog_geometry("disk", [2.0], bc="robin", S=0.7)
    assert geo.volume == pytest.approx(np.pi * 4.0)
    (c,) = comps
    assert c.kind == ROBIN and c.S == 0.7
    assert c.measure == pytest.approx(4.0 * np.pi)
    assert c.Laa == pytest.approx(0.5)
    assert c.LabLab == pytest.approx(0.25)
    assert c.LaaLbbLcc == pytest.approx(0.125)


def test_neumann_is_robin_with_zero_coupling():
    _, comps = catalog_geometry("interval", [1.0], bc="neumann", S=3.0)
    assert all(c.kind == ROBIN and c.S == 0.0 for c in comps)


def test_sphere_curvature_scaling():
    geo, comps = catalog_geometry("sphere", [2.0])
    assert comps == []
    (r,) = geo.regions
    assert r.tau == pytest.approx(0.5)
    assert r.rho_sq == pytest.approx(2.0 / 16.0)
    assert r.riem_sq == pytest.approx(4.0 / 16.0)


def test_hemisphere_equator_is_geodesic():
    geo, comps = catalog_geometry("hemisphere", [1.0])
    (c,) = comps
    assert c.Laa == 0.0 and c.LabLab == 0.0
    assert c.tau_b == pytest.approx(2.0)
    assert c.rho_mm == pytest.approx(1.0)
    assert geo.volume == pytest.approx(2.0 * np.pi)


def test_delta_circle_has_transmittal_component():
    _, comps = catalog_geometry("delta_circle", [3.0])
    (c,) = comps
    assert c.kind == TRANSMITTAL


def test_with_potential_sets_E():
    geo, _ = catalog_geometry("interval", [1.0])
    geo2 = with_potential(geo, 2.0, V_lap=3.0)
    assert geo2.regions[0].E == -2.0
    assert geo2.regions[0].E_lap == -3.0
    # original untouched
    assert geo.regions[0].E == 0.0


def test_invalid_inputs_raise():
    with pytest.raises(ValueError):
        catalog_geometry("moebius", [1.0])
    with pytest.raises(ValueError):
        catalog_geometry("interval", [-1.0])
    with pytest.raises(ValueError):
        Region(measure=0.0)
    with pytest.raises(ValueError):
        GeometryInvariants(m=0, regions=[Region(measure=1.0)])
    with pytest.raises(ValueError):
        GeometryInvariants(m=1, regions=[])


@pytest.mark.parametrize("m", [4, 5, 6, 7])
def test_tangential_gammas_satisfy_clifford_relations(m):
    gs = tangential_gammas(m)
    assert len(gs) == m - 1
    d = gs[0].shape[0]
    eye = np.eye(d)
    for a, ga in enumerate(gs):
        assert np.abs(ga + ga.conj().T).max() < 1e-14
        for b, gb in enumerate(gs):
            target = -2.0 * (a == b) * eye
            assert np.abs(ga @ gb + gb @ ga - target).max() < 1e-14


def test_spectral_data_validation():
    gs = tangential_gammas(4)
    d = gs[0].shape[0]
    psi = np.eye(d)
    theta = np.zeros((d, d))
    data = SpectralBCData(m=4, measure=1.0, psi_hat=psi, theta=theta, gammas=gs)
    assert data.m == 4

    with pytest.raises(ValueError):
        SpectralBCData(m=3, measure=1.0, psi_hat=psi, theta=theta, gammas=gs[:2])
    bad_theta = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        SpectralBCData(m=4, measure=1.0, psi_hat=psi, theta=bad_theta, gammas=gs)
    # breaking one Clifford matrix must be caught
    bad = tuple(g.copy() for g in gs)
    bad[0][0, 0] += 1e-6
    with pytest.raises(ValueError):
        SpectralBCData(m=4, measure=1.0, psi_hat=psi, theta=theta, gammas=bad)
