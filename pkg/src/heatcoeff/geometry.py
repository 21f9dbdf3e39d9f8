"""Geometric and operator invariants in the constants-on-regions model.

Curvature, endomorphism, and second-fundamental-form data enter the
coefficient formulas only through a finite list of scalar contractions.
This module fixes that list: every invariant is assumed constant on each
region of the interior and on each boundary (or interface) component, so
integrals reduce to ``value * measure``.  The catalog fills the records
for the standard benchmark manifolds; custom problems construct the
dataclasses directly.

Sign conventions (these pin every field below):

* ``tau`` is the scalar curvature ``R_ikki`` with ``tau = +2`` on the unit
  two-sphere; then ``|rho|^2 = 2`` and ``|R|^2 = 4`` there.
* ``e_m`` is the *inward* unit normal; ``L_ab`` is the second fundamental
  form ``(nabla_{e_a} e_b, e_m)``, so the unit disk has ``Laa = +1``.
* The operator is ``D = -(Tr grad^2 + E)``; a Schroedinger operator
  ``-Delta + V`` has ``E = -V``.
* Fiber traces: all scalar fields are per-fiber values multiplied by
  ``dimV`` inside ``Tr{...}``, except ``omega_sq`` entries which already
  include the fiber trace (they vanish in scalar mode anyway).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

DIRICHLET = "dirichlet"
ROBIN = "robin"
TRANSMITTAL = "transmittal"
SPECTRAL = "spectral"
DN_JUNCTION = "dn_junction"

BOUNDARY_KINDS = frozenset({DIRICHLET, ROBIN, TRANSMITTAL, SPECTRAL, DN_JUNCTION})

CATALOG_NAMES = (
    "interval",
    "circle",
    "rectangle",
    "flat_torus",
    "disk",
    "sphere",
    "hemisphere",
    "delta_circle",
    "cylinder",
)


@dataclass
class Region:
    """Interior invariants, constant on one region of ``M``.

    ``tau_lap`` and ``E_lap`` are the values of ``tau_;kk`` and ``E_;kk``;
    for custom geometries the caller must supply the per-unit-measure
    value of these Laplacians (zero on the homogeneous catalog spaces).
    """

    measure: float
    tau: float = 0.0
    rho_sq: float = 0.0
    riem_sq: float = 0.0
    tau_lap: float = 0.0
    dimV: int = 1
    E: float = 0.0
    E_lap: float = 0.0
    omega_sq: float = 0.0  # Tr(Omega_ij Omega_ij), fiber trace included

    def __post_init__(self) -> None:
        if self.measure <= 0:
            raise ValueError(f"region measure must be positive, got {self.measure}")
        if self.dimV < 1:
            raise ValueError(f"dimV must be >= 1, got {self.dimV}")


@dataclass
class GeometryInvariants:
    """Dimension plus the per-region interior records."""

    m: int
    regions: list[Region]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"dimension m must be >= 1, got {self.m}")
        if not self.regions:
            raise ValueError("at least one region is required")

    @property
    def dimV(self) -> int:
        dims = {r.dimV for r in self.regions}
        if len(dims) != 1:
            raise ValueError(f"regions disagree on dimV: {sorted(dims)}")
        return dims.pop()

    @property
    def volume(self) -> float:
        return float(sum(r.measure for r in self.regions))


@dataclass
class BoundaryComponentData:
    """Boundary invariants, constant on one component of ``partial M``.

    All products of ``L`` are stored as independent pre-contracted fields;
    nothing is derived from ``Laa``.  The catalog fills them consistently,
    custom callers must supply each contraction they need.  ``S`` is the
    Robin endomorphism value (Neumann is ``S = 0``); it is ignored for
    Dirichlet components.
    """

    kind: str
    measure: float
    S: float = 0.0
    Laa: float = 0.0
    LabLab: float = 0.0
    LaaLbb: float = 0.0
    LaaLbbLcc: float = 0.0
    LabLabLcc: float = 0.0
    LabLbcLac: float = 0.0
    Laa_bb: float = 0.0     # L_aa:bb
    Lab_ab: float = 0.0     # L_ab:ab
    S_aa: float = 0.0       # S_:aa
    tau_b: float = 0.0      # tau restricted to the component
    tau_m: float = 0.0      # tau_;m
    rho_mm: float = 0.0
    R_ambm_Lab: float = 0.0  # R_ambm L_ab
    R_abcb_Lac: float = 0.0  # R_abcb L_ac
    E_b: float = 0.0        # E restricted to the component
    E_m: float = 0.0        # E_;m

    def __post_init__(self) -> None:
        if self.kind not in BOUNDARY_KINDS:
            raise ValueError(
                f"unknown boundary kind {self.kind!r}; expected one of {sorted(BOUNDARY_KINDS)}"
            )
        if self.measure <= 0:
            raise ValueError(f"component measure must be positive, got {self.measure}")


@dataclass
class SmearingJets:
    """Constant value of the smearing function and its normal jets.

    ``f_iim`` is ``f_;iim`` (the ``i`` sum runs over all of ``1..m``).
    Jets are per boundary component; the sign of odd normal derivatives
    follows the inward normal of that component.
    """

    f: float = 1.0
    f_m: float = 0.0
    f_mm: float = 0.0
    f_iim: float = 0.0


@dataclass
class TransmittalData:
    """Interface data for a transmission condition across a hypersurface.

    ``Xi`` is the impedance jump in the normal-derivative matching.
    ``fjet_plus``/``fjet_minus`` are the one-sided normal derivatives of
    the smearing function along the inward normals of the two sides (the
    value of ``f`` itself is continuous and comes from the ``SmearingJets``
    argument of the evaluator).  ``omega_sq`` is ``Tr(omega_a omega_a)``
    for the connection mismatch one-form, fiber trace included.
    """

    measure: float
    Xi: float = 0.0
    omega_sq: float = 0.0
    Lp_aa: float = 0.0
    Lm_aa: float = 0.0
    Lp_ab_sq: float = 0.0    # L+_ab L+_ab
    Lm_ab_sq: float = 0.0    # L-_ab L-_ab
    Lpm_aa_bb: float = 0.0   # L+_aa L-_bb
    Lpm_ab_ab: float = 0.0   # L+_ab L-_ab
    fjet_plus: float = 0.0
    fjet_minus: float = 0.0

    def __post_init__(self) -> None:
        if self.measure <= 0:
            raise ValueError(f"interface measure must be positive, got {self.measure}")


@dataclass
class SpectralBCData:
    """Boundary data for nonlocal spectral boundary conditions.

    ``psi_hat`` is the zeroth-order symbol pulled back through the normal
    leading symbol, ``theta`` the self-adjoint shift of the tangential
    operator, and ``gammas`` the tangential Clifford matrices, which must
    satisfy ``g_a g_b + g_b g_a = -2 delta_ab`` and be skew-adjoint.
    Validation enforces those relations to 1e-12.
    """

    m: int
    measure: float
    psi_hat: np.ndarray
    theta: np.ndarray
    gammas: tuple[np.ndarray, ...]
    Laa: float = 0.0
    LabLab: float = 0.0
    LaaLbb: float = 0.0
    tau_b: float = 0.0
    rho_mm: float = 0.0

    def __post_init__(self) -> None:
        if self.measure <= 0:
            raise ValueError(f"component measure must be positive, got {self.measure}")
        self.psi_hat = np.asarray(self.psi_hat, dtype=complex)
        self.theta = np.asarray(self.theta, dtype=complex)
        self.gammas = tuple(np.asarray(g, dtype=complex) for g in self.gammas)
        validate_spectral_data(self)


CLIFFORD_TOL = 1e-12


def validate_spectral_data(data: SpectralBCData) -> None:
    """Raise ValueError unless the spectral matrix data is admissible."""
    if data.m < 4:
        raise ValueError(f"spectral boundary coefficients require m >= 4, got m={data.m}")
    d = data.psi_hat.shape[0]
    if data.psi_hat.shape != (d, d) or data.theta.shape != (d, d):
        raise ValueError("psi_hat and theta must be square matrices of equal size")
    if len(data.gammas) != data.m - 1:
        raise ValueError(
            f"expected {data.m - 1} tangential Clifford matrices, got {len(data.gammas)}"
        )
    herm = np.abs(data.theta - data.theta.conj().T).max()
    if herm > CLIFFORD_TOL:
        raise ValueError(f"theta must be self-adjoint (residual {herm:.3e})")
    ident = np.eye(d)
    for a, ga in enumerate(data.gammas):
        if ga.shape != (d, d):
            raise ValueError("Clifford matrices must match the fiber dimension")
        skew = np.abs(ga + ga.conj().T).max()
        if skew > CLIFFORD_TOL:
            raise ValueError(f"gamma[{a}] must be skew-adjoint (residual {skew:.3e})")
        for b, gb in enumerate(data.gammas):
            resid = np.abs(ga @ gb + gb @ ga + 2.0 * (a == b) * ident).max()
            if resid > CLIFFORD_TOL:
                raise ValueError(
                    f"Clifford relation violated for pair ({a},{b}): residual {resid:.3e}"
                )


def tangential_gammas(m: int) -> tuple[np.ndarray, ...]:
    """Construct ``m - 1`` skew-adjoint anticommuting unitaries.

    Returns matrices with ``g_a g_b + g_b g_a = -2 delta_ab``.  Built as
    ``i`` times a Hermitian anticommuting family generated from the Pauli
    matrices by tensor doubling, so the size is the smallest power of two
    that accommodates ``m - 1`` generators.
    """
    n = m - 1
    if n < 1:
        raise ValueError(f"need m >= 2 for tangential matrices, got m={m}")
    s1 = np.array([[0, 1], [1, 0]], dtype=complex)
    s2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    s3 = np.array([[1, 0], [0, -1]], dtype=complex)
    herm = [s1, s2, s3]
    while len(herm) < n:
        eye = np.eye(herm[0].shape[0], dtype=complex)
        herm = [np.kron(s1, h) for h in herm] + [np.kron(s2, eye), np.kron(s3, eye)]
    return tuple(1j * h for h in herm[:n])


def integrate(geo: GeometryInvariants, region_index: int, value: float) -> float:
    """Integrate a constant over one region: ``value * measure``."""
    try:
        region = geo.regions[region_index]
    except IndexError as exc:
        raise IndexError(
            f"region index {region_index} out of range for {len(geo.regions)} regions"
        ) from exc
    return value * region.measure


def _bc_kind(bc: str) -> tuple[str, bool]:
    """Map a user-facing condition name onto (kind, is_neumann_alias)."""
    low = bc.lower()
    if low == DIRICHLET:
        return DIRICHLET, False
    if low == "neumann":
        return ROBIN, True
    if low == ROBIN:
        return ROBIN, False
    raise ValueError(f"unsupported boundary condition {bc!r}")


def catalog_geometry(
    name: str,
    params: list[float] | tuple[float, ...],
    bc: str = DIRICHLET,
    S: float = 0.0,
) -> tuple[GeometryInvariants, list[BoundaryComponentData]]:
    """Build the invariant records for a benchmark geometry.

    Parameters
    ----------
    name : str
        One of ``CATALOG_NAMES``.
    params : sequence of float
        Size parameters: ``interval(L)``, ``circle(L)``,
        ``rectangle(Lx, Ly)``, ``flat_torus(L1, L2)``, ``disk(R)``,
        ``sphere(R)``, ``hemisphere(R)``, ``delta_circle(L)``,
        ``cylinder(L, H)`` with ``L`` the circumference.
    bc, S : str, float
        Boundary condition applied to every smooth boundary component:
        ``"dirichlet"``, ``"neumann"`` (Robin with ``S = 0``) or
        ``"robin"`` with coupling ``S``.  Ignored for closed manifolds.

    Returns
    -------
    (GeometryInvariants, list[BoundaryComponentData])

    Notes
    -----
    The rectangle record describes only the smooth part of the boundary;
    its four corners contribute extra terms beyond the smooth-boundary
    model, so coefficient/oracle comparisons are valid only through the
    perimeter term.
    """
    if name not in CATALOG_NAMES:
        raise ValueError(f"unknown catalog geometry {name!r}; expected one of {CATALOG_NAMES}")
    p = [float(x) for x in params]
    if any(x <= 0 for x in p):
        raise ValueError(f"geometry parameters must be positive, got {p}")
    kind, is_neumann = _bc_kind(bc)
    s_val = 0.0 if (kind == DIRICHLET or is_neumann) else float(S)

    def smooth(measure: float, **kw: float) -> BoundaryComponentData:
        return BoundaryComponentData(kind=kind, measure=measure, S=s_val, **kw)

    if name == "interval":
        (L,) = p
        geo = GeometryInvariants(m=1, regions=[Region(measure=L)])
        comps = [smooth(1.0), smooth(1.0)]  # two endpoint components
        return geo, comps

    if name == "circle":
        (L,) = p
        return GeometryInvariants(m=1, regions=[Region(measure=L)]), []

    if name == "delta_circle":
        (L,) = p
        geo = GeometryInvariants(m=1, regions=[Region(measure=L)])
        comps = [BoundaryComponentData(kind=TRANSMITTAL, measure=1.0)]
        return geo, comps

    if name == "rectangle":
        Lx, Ly = p
        geo = GeometryInvariants(m=2, regions=[Region(measure=Lx * Ly)])
        comps = [smooth(Lx), smooth(Lx), smooth(Ly), smooth(Ly)]
        return geo, comps

    if name == "flat_torus":
        L1, L2 = p
        return GeometryInvariants(m=2, regions=[Region(measure=L1 * L2)]), []

    if name == "disk":
        (R,) = p
        geo = GeometryInvariants(m=2, regions=[Region(measure=np.pi * R * R)])
        k = 1.0 / R  # geodesic curvature of the boundary circle, inward normal
        comps = [
            smooth(
                2.0 * np.pi * R,
                Laa=k,
                LabLab=k * k,
                LaaLbb=k * k,
                LaaLbbLcc=k**3,
                LabLabLcc=k**3,
                LabLbcLac=k**3,
            )
        ]
        return geo, comps

    if name == "sphere":
        (R,) = p
        r2 = 1.0 / (R * R)
        geo = GeometryInvariants(
            m=2,
            regions=[
                Region(
                    measure=4.0 * np.pi * R * R,
                    tau=2.0 * r2,
                    rho_sq=2.0 * r2 * r2,
                    riem_sq=4.0 * r2 * r2,
                )
            ],
        )
        return geo, []

    if name == "hemisphere":
        (R,) = p
        r2 = 1.0 / (R * R)
        geo = GeometryInvariants(
            m=2,
            regions=[
                Region(
                    measure=2.0 * np.pi * R * R,
                    tau=2.0 * r2,
                    rho_sq=2.0 * r2 * r2,
                    riem_sq=4.0 * r2 * r2,
                )
            ],
        )
        # the equator is totally geodesic: every L contraction vanishes
        comps = [smooth(2.0 * np.pi * R, tau_b=2.0 * r2, rho_mm=r2)]
        return geo, comps

    if name == "cylinder":
        L, H = p
        geo = GeometryInvariants(m=2, regions=[Region(measure=L * H)])
        comps = [smooth(L), smooth(L)]  # two geodesic boundary circles
        return geo, comps

    raise AssertionError("unreachable")


def with_potential(
    geo: GeometryInvariants, V: float, V_lap: float = 0.0
) -> GeometryInvariants:
    """Return a copy of ``geo`` with a constant potential: ``E = -V``."""
    regions = [replace(r, E=-float(V), E_lap=-float(V_lap)) for r in geo.regions]
    return GeometryInvariants(m=geo.m, regions=regions)
