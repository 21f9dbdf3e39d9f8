"""Heat-content coefficients ``beta_n``, ``n <= 4``, in a pairing model.

The content of a solution with initial temperature ``phi``, density
``rho``, boundary data ``psi(t) = psi_0 + t psi_1 + ...`` and source
``p(t) = p_0 + t p_1 + ...`` expands as ``sum_n beta_n t^{n/2}``.  Each
``beta_n`` is a linear combination of integrated pairings of the input
data; callers supply those pairings (already integrated over the interior
or over each boundary component) and the evaluator assembles them with
exact rational constants.

``rod_content_data`` builds the pairings analytically for an interval
with constant potential, which is the workhorse of the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction as F
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import Polynomial
from scipy.integrate import quad

from .geometry import (
    DIRICHLET,
    ROBIN,
    BoundaryComponentData,
    GeometryInvariants,
    Region,
)
from .reports import CoefficientReport, make_report
from .trace_coeffs import UnsupportedOrder


@dataclass
class InteriorPairings:
    """Pairings integrated over the interior.

    ``pert_phi_rho`` is the pairing of the first-order time perturbation
    applied to ``phi`` against ``rho`` (the ``G_1``/``F_1``/``E_1``
    contraction); it vanishes for a static operator.
    """

    phi_rho: float = 0.0
    Dphi_rho: float = 0.0
    p0_rho: float = 0.0
    p1_rho: float = 0.0
    Dp0_rho: float = 0.0
    Dphi_Drho: float = 0.0
    pert_phi_rho: float = 0.0


@dataclass
class BoundaryPairings:
    """Pairings integrated over one boundary component.

    Dirichlet components use ``u0 = phi - psi_0``; Robin components use
    ``Bphi = phi_;m + S phi - psi_0``.  Subscript ``_m`` is the inward
    normal derivative of the second factor unless the name says
    otherwise; ``_a`` marks tangential-gradient contractions.  The
    ``G1_*``/``F1_m`` scalars are boundary restrictions of the operator's
    first-order time dependence.
    """

    # Dirichlet pairings
    u0_rho: float = 0.0
    u0_rho_m: float = 0.0        # <u0, rho_;m>
    u0_Drho: float = 0.0
    u0_Drho_m: float = 0.0       # <u0, (D rho)_;m>
    u0a_rhoa: float = 0.0        # <u0_:a, rho_:a>
    Lab_u0a_rhob: float = 0.0    # L_ab <u0_:a, rho_:b>
    p0_rho: float = 0.0
    p0_rho_m: float = 0.0
    Dphi_rho: float = 0.0
    Dphi_m_rho: float = 0.0      # <(D phi)_;m, rho>
    psi1_rho: float = 0.0
    psi1_rho_m: float = 0.0
    Om_u0a_rho: float = 0.0      # <Omega_am u0_:a, rho>
    Om_u0_rhoa: float = 0.0      # <Omega_am u0, rho_:a>
    G1am_u0a_rho: float = 0.0    # <G_{1,am} u0_:a, rho>
    # Robin pairings
    Bphi_rho: float = 0.0
    Bphi_Brho: float = 0.0
    Bp0_rho: float = 0.0
    Bphi_Drho: float = 0.0
    Dphi_Brho: float = 0.0
    # boundary restrictions of the time perturbation
    G1_mm: float = 0.0
    G1_mm_m: float = 0.0
    F1_m: float = 0.0


@dataclass
class HeatContentData:
    """Interior pairings plus one boundary record per component."""

    interior: InteriorPairings = field(default_factory=InteriorPairings)
    boundary: list[BoundaryPairings] = field(default_factory=list)


_INV_SQRT_PI = 1.0 / math.sqrt(math.pi)


def heat_content_coefficient(
    n: int,
    components: Sequence[BoundaryComponentData],
    data: HeatContentData,
) -> CoefficientReport:
    """Heat-content coefficient ``beta_n`` for ``n <= 4``.

    ``data.boundary`` must be parallel to ``components``.  Components of
    interface kinds are not supported here.
    """
    if n < 0:
        raise ValueError(f"order must be non-negative, got {n}")
    if n > 4:
        raise UnsupportedOrder(f"content coefficients are tabulated only for n <= 4, got n={n}")
    if len(data.boundary) != len(components):
        raise ValueError(
            f"got {len(data.boundary)} boundary pairing records for "
            f"{len(components)} components"
        )
    for c in components:
        if c.kind not in (DIRICHLET, ROBIN):
            raise ValueError(f"heat content supports dirichlet/robin components, got {c.kind!r}")
    it = data.interior
    parts: list[tuple[str, float]] = []

    if n == 0:
        parts.append(("interior", it.phi_rho))
    elif n == 1:
        for i, (c, b) in enumerate(zip(components, data.boundary)):
            if c.kind == DIRICHLET:
                parts.append((f"boundary[{i}]:dirichlet", -2.0 * _INV_SQRT_PI * b.u0_rho))
    elif n == 2:
        parts.append(("interior", -(it.Dphi_rho - it.p0_rho)))
        for i, (c, b) in enumerate(zip(components, data.boundary)):
            if c.kind == DIRICHLET:
                val = 0.5 * c.Laa * b.u0_rho - b.u0_rho_m
                parts.append((f"boundary[{i}]:dirichlet", val))
            else:
                parts.append((f"boundary[{i}]:robin", b.Bphi_rho))
    elif n == 3:
        for i, (c, b) in enumerate(zip(components, data.boundary)):
            if c.kind == DIRICHLET:
                # R_amam = -rho_mm once the ambient trace over a is removed
                geom = (
                    -float(F(1, 3)) * c.E_b
                    + float(F(1, 12)) * c.LaaLbb
                    - float(F(1, 6)) * c.LabLab
                    + float(F(1, 6)) * (-c.rho_mm)
                    - float(F(1, 4)) * b.G1_mm
                )
                inner = (
                    float(F(2, 3)) * b.p0_rho
                    - float(F(2, 3)) * b.Dphi_rho
                    - float(F(2, 3)) * b.u0_Drho
                    + float(F(1, 3)) * b.u0a_rhoa
                    - float(F(2, 3)) * b.psi1_rho
                    + geom * b.u0_rho
                )
                parts.append((f"boundary[{i}]:dirichlet", -2.0 * _INV_SQRT_PI * inner))
            else:
                val = float(F(4, 3)) * _INV_SQRT_PI * b.Bphi_Brho
                parts.append((f"boundary[{i}]:robin", val))
    else:
        val = 0.5 * (it.p1_rho - it.Dp0_rho + it.Dphi_Drho - it.pert_phi_rho)
        parts.append(("interior", val))
        for i, (c, b) in enumerate(zip(components, data.boundary)):
            if c.kind == DIRICHLET:
                geom = (
                    float(F(1, 8)) * c.E_m
                    - float(F(1, 16)) * c.LabLabLcc
                    + float(F(1, 8)) * c.LabLbcLac
                    - float(F(1, 16)) * c.R_ambm_Lab
                    + float(F(1, 16)) * c.R_abcb_Lac
                    + float(F(1, 32)) * c.tau_m
                    + float(F(1, 16)) * c.Lab_ab
                )
                val = (
                    0.25 * c.Laa * b.p0_rho
                    - 0.5 * b.p0_rho_m
                    - 0.25 * c.Laa * b.psi1_rho
                    + 0.5 * b.psi1_rho_m
                    + 0.5 * b.Dphi_m_rho
                    + 0.5 * b.u0_Drho_m
                    - 0.25 * c.Laa * b.Dphi_rho
                    - 0.25 * c.Laa * b.u0_Drho
                    + geom * b.u0_rho
                    - 0.25 * b.Lab_u0a_rhob
                    - 0.125 * b.Om_u0a_rho
                    + 0.125 * b.Om_u0_rhoa
                    + (
                        float(F(7, 16)) * b.G1_mm_m
                        - 0.25 * b.G1_mm * c.Laa
                        - float(F(5, 16)) * b.F1_m
                    )
                    * b.u0_rho
                    - float(F(5, 16)) * b.G1am_u0a_rho
                    + 0.5 * b.G1_mm * b.u0_rho_m
                )
                parts.append((f"boundary[{i}]:dirichlet", val))
            else:
                val = (
                    0.5 * b.Bp0_rho
                    - 0.5 * b.Bphi_Drho
                    - 0.5 * b.Dphi_Brho
                    - 0.5 * b.psi1_rho
                    + (0.5 * c.S + 0.25 * c.Laa) * b.Bphi_Brho
                    - 0.5 * b.G1_mm * b.Bphi_rho
                )
                parts.append((f"boundary[{i}]:robin", val))
    return make_report(n, 0.0, parts)


# ---------------------------------------------------------------------------
# analytic rod data

@dataclass(frozen=True)
class Profile:
    """A function on the rod with three analytic derivatives."""

    f: Callable[[float], float]
    d1: Callable[[float], float]
    d2: Callable[[float], float]
    d3: Callable[[float], float]

    @classmethod
    def constant(cls, c: float) -> "Profile":
        zero = lambda x: 0.0
        return cls(lambda x: c, zero, zero, zero)

    @classmethod
    def poly(cls, coeffs: Sequence[float]) -> "Profile":
        p = Polynomial(list(coeffs))
        ds = [p.deriv(k) for k in (1, 2, 3)]
        return cls(
            lambda x: float(p(x)),
            lambda x: float(ds[0](x)),
            lambda x: float(ds[1](x)),
            lambda x: float(ds[2](x)),
        )

    @classmethod
    def cosine(cls, amplitude: float, k: float) -> "Profile":
        a = amplitude
        return cls(
            lambda x: a * math.cos(k * x),
            lambda x: -a * k * math.sin(k * x),
            lambda x: -a * k * k * math.cos(k * x),
            lambda x: a * k**3 * math.sin(k * x),
        )


def _integrate(fun: Callable[[float], float], L: float) -> float:
    val, err = quad(fun, 0.0, L, epsabs=1e-13, epsrel=1e-13, limit=200)
    return val


def rod_content_data(
    L: float,
    phi: Profile,
    rho: Profile,
    V: float = 0.0,
    bc: tuple[str, str] = (DIRICHLET, DIRICHLET),
    S: tuple[float, float] = (0.0, 0.0),
    psi0: tuple[float, float] = (0.0, 0.0),
    psi1: tuple[float, float] = (0.0, 0.0),
    p0: Profile | None = None,
    p1: Profile | None = None,
    G1_interior: float = 0.0,
    E1_interior: float = 0.0,
    G1_mm: tuple[float, float] = (0.0, 0.0),
    G1_mm_m: tuple[float, float] = (0.0, 0.0),
    F1_m: tuple[float, float] = (0.0, 0.0),
) -> tuple[GeometryInvariants, list[BoundaryComponentData], HeatContentData]:
    """Exact pairing data for ``D = -d^2/dx^2 + V`` on ``[0, L]``.

    ``G1_interior`` is the coefficient ``G_{1,11}`` of the first-order
    time dependence (so ``-(1+g t) d^2/dx^2`` has ``G1_interior = -g``);
    the per-end values follow the inward orientation (sign ``+1`` at
    ``x=0``, ``-1`` at ``x=L`` for odd normal derivatives).
    """
    if L <= 0:
        raise ValueError(f"rod length must be positive, got {L}")
    for k in bc:
        if k not in (DIRICHLET, ROBIN):
            raise ValueError(f"rod ends must be dirichlet or robin, got {k!r}")

    def apply_D(g: Profile) -> Callable[[float], float]:
        return lambda x: -g.d2(x) + V * g.f(x)

    def apply_D_d1(g: Profile) -> Callable[[float], float]:
        return lambda x: -g.d3(x) + V * g.d1(x)

    Dphi = apply_D(phi)
    Drho = apply_D(rho)
    interior = InteriorPairings(
        phi_rho=_integrate(lambda x: phi.f(x) * rho.f(x), L),
        Dphi_rho=_integrate(lambda x: Dphi(x) * rho.f(x), L),
        Dphi_Drho=_integrate(lambda x: Dphi(x) * Drho(x), L),
        pert_phi_rho=_integrate(
            lambda x: (G1_interior * phi.d2(x) + E1_interior * phi.f(x)) * rho.f(x), L
        ),
    )
    if p0 is not None:
        Dp0 = apply_D(p0)
        interior.p0_rho = _integrate(lambda x: p0.f(x) * rho.f(x), L)
        interior.Dp0_rho = _integrate(lambda x: Dp0(x) * rho.f(x), L)
    if p1 is not None:
        interior.p1_rho = _integrate(lambda x: p1.f(x) * rho.f(x), L)

    E = -V
    components: list[BoundaryComponentData] = []
    pairings: list[BoundaryPairings] = []
    for end, (x0, sigma) in enumerate(((0.0, 1.0), (L, -1.0))):
        kind = bc[end]
        s = S[end] if kind == ROBIN else 0.0
        components.append(
            BoundaryComponentData(kind=kind, measure=1.0, S=s, E_b=E)
        )
        b = BoundaryPairings(
            G1_mm=G1_mm[end], G1_mm_m=G1_mm_m[end], F1_m=F1_m[end]
        )
        rho0 = rho.f(x0)
        rho_m = sigma * rho.d1(x0)
        Drho0 = Drho(x0)
        Drho_m = sigma * apply_D_d1(rho)(x0)
        if kind == DIRICHLET:
            u0 = phi.f(x0) - psi0[end]
            b.u0_rho = u0 * rho0
            b.u0_rho_m = u0 * rho_m
            b.u0_Drho = u0 * Drho0
            b.u0_Drho_m = u0 * Drho_m
            b.Dphi_rho = Dphi(x0) * rho0
            b.Dphi_m_rho = sigma * apply_D_d1(phi)(x0) * rho0
            b.psi1_rho = psi1[end] * rho0
            b.psi1_rho_m = psi1[end] * rho_m
            if p0 is not None:
                b.p0_rho = p0.f(x0) * rho0
                b.p0_rho_m = p0.f(x0) * rho_m
        else:
            bphi = sigma * phi.d1(x0) + s * phi.f(x0) - psi0[end]
            brho = sigma * rho.d1(x0) + s * rho0
            b.Bphi_rho = bphi * rho0
            b.Bphi_Brho = bphi * brho
            b.Bphi_Drho = bphi * Drho0
            b.Dphi_Brho = Dphi(x0) * brho
            b.psi1_rho = psi1[end] * rho0
            if p0 is not None:
                b.Bp0_rho = (sigma * p0.d1(x0) + s * p0.f(x0)) * rho0
        pairings.append(b)

    geo = GeometryInvariants(m=1, regions=[Region(measure=L, E=E)])
    return geo, components, HeatContentData(interior=interior, boundary=pairings)
