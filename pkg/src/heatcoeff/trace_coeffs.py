"""Closed-form heat-trace coefficients in the constants-on-regions model.

Evaluators for the interior coefficients, the smooth Dirichlet/Robin
boundary coefficients, transmittal-interface coefficients, nonlocal
spectral boundary coefficients, the time-dependent corrections, and the
conjectural mixed Dirichlet/Neumann junction term.  Each evaluator
returns a :class:`~heatcoeff.reports.CoefficientReport` whose parts are
labeled per region or per component.

The rational constants of every formula are written as exact integer
fractions; floating point enters only when a fraction multiplies the
invariant data and the global ``(4 pi)`` power.  Printed orders stop at
``n = 4`` for interior/boundary terms and ``n = 3`` for interfaces;
higher orders raise :class:`UnsupportedOrder`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction as F

import numpy as np

from .geometry import (
    DIRICHLET,
    DN_JUNCTION,
    ROBIN,
    BoundaryComponentData,
    GeometryInvariants,
    SmearingJets,
    SpectralBCData,
    TransmittalData,
)
from .reports import CoefficientReport, make_report


class UnsupportedOrder(ValueError):
    """The requested order is beyond the printed closed-form results."""


class NotLocallyComputable(ValueError):
    """No locally computable coefficient exists at the requested order."""


def _pw(exponent: float) -> float:
    return (4.0 * math.pi) ** exponent


def _per_item(value, count: int, default_factory, what: str) -> list:
    """Broadcast a single record over ``count`` items or validate a list."""
    if value is None:
        return [default_factory() for _ in range(count)]
    if isinstance(value, (list, tuple)):
        items = list(value)
        if len(items) != count:
            raise ValueError(f"expected {count} {what} records, got {len(items)}")
        return items
    return [value] * count


def c_of_m(m: int) -> float:
    """Dimension constant ``Gamma(m/2) / (Gamma(1/2) Gamma((m+1)/2))``."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return math.gamma(m / 2) / (math.gamma(0.5) * math.gamma((m + 1) / 2))


# ---------------------------------------------------------------------------
# interior coefficients

def interior_coefficient(
    n: int,
    geo: GeometryInvariants,
    f: SmearingJets | list[SmearingJets] | None = None,
) -> CoefficientReport:
    """Interior coefficient ``a_n^M`` for ``n <= 4`` (odd ``n`` vanish).

    ``f`` is one set of smearing jets, or one per region.
    """
    if n < 0:
        raise ValueError(f"order must be non-negative, got {n}")
    if n > 4:
        raise UnsupportedOrder(f"interior coefficients are tabulated only for n <= 4, got n={n}")
    jets = _per_item(f, len(geo.regions), SmearingJets, "smearing")
    norm = -geo.m / 2.0
    pw = _pw(norm)
    parts: list[tuple[str, float]] = []
    for i, (r, fj) in enumerate(zip(geo.regions, jets)):
        label = f"region[{i}]"
        if n % 2 == 1:
            parts.append((label, 0.0))
            continue
        if n == 0:
            raw = fj.f * r.dimV
        elif n == 2:
            raw = float(F(1, 6)) * fj.f * (r.tau + 6.0 * r.E) * r.dimV
        else:
            poly = (
                60.0 * r.E_lap
                + 60.0 * r.tau * r.E
                + 180.0 * r.E * r.E
                + 12.0 * r.tau_lap
                + 5.0 * r.tau * r.tau
                - 2.0 * r.rho_sq
                + 2.0 * r.riem_sq
            )
            # omega_sq already carries the fiber trace
            raw = float(F(1, 360)) * fj.f * (poly * r.dimV + 30.0 * r.omega_sq)
        parts.append((label, pw * raw * r.measure))
    return make_report(n, norm, parts)


# ---------------------------------------------------------------------------
# smooth Dirichlet/Robin boundary coefficients

def _boundary_raw(n: int, c: BoundaryComponentData, fj: SmearingJets) -> float:
    """Per-unit-measure integrand of the boundary coefficient, fiber trace included.

    The caller applies the ``(4 pi)`` power and the component measure.
    """
    if c.kind == DIRICHLET:
        if n == 1:
            return -float(F(1, 4)) * fj.f
        if n == 2:
            return float(F(1, 6)) * (2.0 * fj.f * c.Laa - 3.0 * fj.f_m)
        if n == 3:
            f_poly = (
                96.0 * c.E_b
                + 16.0 * c.tau_b
                - 8.0 * c.rho_mm
                + 7.0 * c.LaaLbb
                - 10.0 * c.LabLab
            )
            return -float(F(1, 384)) * (
                fj.f * f_poly - 30.0 * fj.f_m * c.Laa + 24.0 * fj.f_mm
            )
        if n == 4:
            f_poly = (
                -120.0 * c.E_m
                + 120.0 * c.E_b * c.Laa
                - 18.0 * c.tau_m
                + 20.0 * c.tau_b * c.Laa
                - 4.0 * c.rho_mm * c.Laa
                - 12.0 * c.R_ambm_Lab
                + 4.0 * c.R_abcb_Lac
                + 24.0 * c.Laa_bb
                + float(F(40, 21)) * c.LaaLbbLcc
                - float(F(88, 7)) * c.LabLabLcc
                + float(F(320, 21)) * c.LabLbcLac
            )
            fm_poly = (
                -180.0 * c.E_b
                - 30.0 * c.tau_b
                - float(F(180, 7)) * c.LaaLbb
                + float(F(60, 7)) * c.LabLab
            )
            return float(F(1, 360)) * (
                fj.f * f_poly
                + fj.f_m * fm_poly
                + 24.0 * fj.f_mm * c.Laa
                - 30.0 * fj.f_iim
            )
        raise AssertionError("unreachable")
    # Robin (Neumann is S = 0)
    if n == 1:
        return float(F(1, 4)) * fj.f
    if n == 2:
        return float(F(1, 6)) * (2.0 * fj.f * c.Laa + 12.0 * fj.f * c.S + 3.0 * fj.f_m)
    if n == 3:
        f_poly = (
            96.0 * c.E_b
            + 16.0 * c.tau_b
            - 8.0 * c.rho_mm
            + 13.0 * c.LaaLbb
            + 2.0 * c.LabLab
            + 96.0 * c.S * c.Laa
            + 192.0 * c.S * c.S
        )
        return float(F(1, 384)) * (
            fj.f * f_poly + fj.f_m * (6.0 * c.Laa + 96.0 * c.S) + 24.0 * fj.f_mm
        )
    if n == 4:
        f_poly = (
            240.0 * c.E_m
            + 120.0 * c.E_b * c.Laa
            + 42.0 * c.tau_m
            + 24.0 * c.Laa_bb
            + 20.0 * c.tau_b * c.Laa
            - 4.0 * c.rho_mm * c.Laa
            - 12.0 * c.R_ambm_Lab
            + 4.0 * c.R_abcb_Lac
            + float(F(40, 3)) * c.LaaLbbLcc
            + 8.0 * c.LabLabLcc
            + float(F(32, 3)) * c.LabLbcLac
            + 720.0 * c.S * c.E_b
            + 120.0 * c.S * c.tau_b
            + 144.0 * c.S * c.LaaLbb
            + 48.0 * c.S * c.LabLab
            + 480.0 * c.S * c.S * c.Laa
            + 480.0 * c.S ** 3
            + 120.0 * c.S_aa
        )
        fm_poly = (
            180.0 * c.E_b
            + 72.0 * c.S * c.Laa
            + 240.0 * c.S * c.S
            + 30.0 * c.tau_b
            + 12.0 * c.LaaLbb
            + 12.0 * c.LabLab
        )
        return float(F(1, 360)) * (
            fj.f * f_poly
            + fj.f_m * fm_poly
            + fj.f_mm * (120.0 * c.S + 24.0 * c.Laa)
            + 30.0 * fj.f_iim
        )
    raise AssertionError("unreachable")


def boundary_normalization(n: int, m: int) -> float:
    """Exponent of the ``(4 pi)`` prefactor: odd orders carry ``(1-m)/2``."""
    return (1.0 - m) / 2.0 if n % 2 == 1 else -m / 2.0


def boundary_coefficient(
    n: int,
    geo: GeometryInvariants,
    components: list[BoundaryComponentData],
    f: SmearingJets | list[SmearingJets] | None = None,
) -> CoefficientReport:
    """Smooth-boundary coefficient ``a_n^{dM}`` for ``n <= 4``.

    Only Dirichlet and Robin components contribute here; interface kinds
    (transmittal, spectral, junction) have their own evaluators and are
    skipped.  ``f`` is one jet record or one per component.
    """
    if n < 0:
        raise ValueError(f"order must be non-negative, got {n}")
    if n > 4:
        raise UnsupportedOrder(f"boundary coefficients are tabulated only for n <= 4, got n={n}")
    jets = _per_item(f, len(components), SmearingJets, "smearing")
    dimV = geo.dimV
    norm = boundary_normalization(n, geo.m)
    pw = _pw(norm)
    parts: list[tuple[str, float]] = []
    for i, (c, fj) in enumerate(zip(components, jets)):
        if c.kind not in (DIRICHLET, ROBIN):
            continue
        label = f"boundary[{i}]:{c.kind}"
        if n == 0:
            parts.append((label, 0.0))
            continue
        raw = _boundary_raw(n, c, fj)
        parts.append((label, pw * raw * dimV * c.measure))
    return make_report(n, norm, parts)


# ---------------------------------------------------------------------------
# transmittal interface coefficients

def transmittal_coefficient(
    n: int,
    geo: GeometryInvariants,
    td: TransmittalData,
    f: SmearingJets | None = None,
) -> CoefficientReport:
    """Interface coefficient ``a_n^Sigma`` of a transmission problem, ``n <= 3``.

    ``f.f`` is the (continuous) smearing value on the interface; the
    one-sided normal derivatives live in ``td.fjet_plus``/``td.fjet_minus``.
    """
    if n < 0:
        raise ValueError(f"order must be non-negative, got {n}")
    if n > 3:
        raise UnsupportedOrder(
            f"transmittal coefficients are tabulated only for n <= 3, got n={n}"
        )
    fj = f if f is not None else SmearingJets()
    dimV = geo.dimV
    norm = boundary_normalization(n, geo.m)
    pw = _pw(norm)
    if n in (0, 1):
        return make_report(n, norm, [("interface", 0.0)])
    if n == 2:
        raw = float(F(1, 6)) * (
            2.0 * fj.f * (td.Lp_aa + td.Lm_aa) - 6.0 * fj.f * td.Xi
        ) * dimV
    else:
        ltrace = td.Lp_aa + td.Lm_aa
        fnu = td.fjet_plus + td.fjet_minus
        raw = float(F(1, 384)) * (
            (
                float(F(3, 2)) * fj.f * (td.Lp_aa**2 + td.Lm_aa**2 + 2.0 * td.Lpm_aa_bb)
                + 3.0 * fj.f * (td.Lp_ab_sq + td.Lm_ab_sq + 2.0 * td.Lpm_ab_ab)
                + 9.0 * ltrace * fnu
                + 48.0 * fj.f * td.Xi**2
                - 24.0 * fj.f * ltrace * td.Xi
                - 24.0 * fnu * td.Xi
            ) * dimV
            # omega_sq already carries the fiber trace
            + 24.0 * fj.f * td.omega_sq
        )
    return make_report(n, norm, [("interface", pw * raw * td.measure)])


# ---------------------------------------------------------------------------
# spectral boundary coefficients

def _real_trace(mat: np.ndarray, scale: float) -> float:
    z = complex(np.trace(mat))
    if abs(z.imag) > 1e-10 * (1.0 + abs(z.real) + scale):
        raise ValueError(f"trace expected to be real, got imaginary part {z.imag:.3e}")
    return z.real


def spectral_coefficient(
    n: int,
    data: SpectralBCData,
    f: SmearingJets | None = None,
    geo: GeometryInvariants | None = None,
) -> CoefficientReport:
    """Coefficient ``a_n`` under spectral boundary conditions, ``n <= 3``.

    Returns the full coefficient as printed: ``a_0`` and the interior part
    of ``a_2`` require ``geo``; ``a_1`` and ``a_3`` are pure boundary
    terms.  The smearing value is constant with the given boundary jets.
    """
    if n < 0:
        raise ValueError(f"order must be non-negative, got {n}")
    if n > 3:
        raise UnsupportedOrder(f"spectral coefficients are tabulated only for n <= 3, got n={n}")
    fj = f if f is not None else SmearingJets()
    m = data.m
    C = c_of_m(m)
    d = data.psi_hat.shape[0]
    psi = data.psi_hat
    psis = psi.conj().T
    scale = float(np.abs(psi).max() + np.abs(data.theta).max() + 1.0) ** 2

    if geo is not None and geo.m != m:
        raise ValueError(f"geometry dimension {geo.m} does not match spectral data m={m}")

    if n == 0:
        if geo is None:
            raise ValueError("a_0 needs the interior geometry")
        rep = interior_coefficient(0, geo, SmearingJets(f=fj.f))
        return make_report(0, rep.normalization, [(p.label, p.value) for p in rep.parts])

    if n == 1:
        norm = -(m - 1) / 2.0
        raw = float(F(1, 4)) * (C - 1.0) * fj.f * d
        return make_report(1, norm, [("spectral", _pw(norm) * raw * data.measure)])

    if n == 2:
        if geo is None:
            raise ValueError("a_2 needs the interior geometry")
        norm = -m / 2.0
        interior = interior_coefficient(2, geo, SmearingJets(f=fj.f))
        tr_psi = _real_trace((psi + psis) / 2.0, scale)
        raw_f = fj.f * (
            tr_psi
            + float(F(1, 3)) * (1.0 - 0.75 * math.pi * C) * data.Laa * d
        )
        raw_fm = -F(m - 1, 2 * (m - 2)) * (1.0 - 0.5 * math.pi * C) * fj.f_m * d
        bnd = _pw(norm) * (raw_f + float(raw_fm)) * data.measure
        parts = [(p.label, p.value) for p in interior.parts]
        parts.append(("spectral", bnd))
        return make_report(2, norm, parts)

    # n == 3
    norm = -(m - 1) / 2.0
    th = data.theta
    g = data.gammas
    gpgp = sum(ga @ psi @ ga @ psi for ga in g)
    gsgs = sum(ga @ psis @ ga @ psis for ga in g)
    gpgs = sum(ga @ psi @ ga @ psis for ga in g)
    gtgt = sum(ga @ th @ ga @ th for ga in g)

    c_psi2 = float(F(1, 32)) * (1.0 - C / (m - 2))
    c_psips = float(F(5 - 2 * m, 16)) + float(F(7 - 8 * m + 2 * m * m, 16 * (m - 2))) * C
    c_gpgp = float(F(2 * m - 3, 32 * (m - 1))) - float(
        F(2 * m * m - 6 * m + 5, 32 * (m - 1) * (m - 2))
    ) * C
    c_gpgs = float(F(1, 16 * (m - 1))) + float(F(3 - 2 * m, 16 * (m - 1) * (m - 2))) * C
    c_tau = -float(F(1, 48)) * (float(F(m - 1, m - 2)) * C - 1.0)
    c_rho = float(F(1, 48)) * (1.0 - float(F(4 * m - 10, m - 2)) * C)
    c_lablab = float(F(1, 48 * (m + 1))) * (
        float(F(17 + 5 * m, 4)) + float(F(23 - 2 * m - 4 * m * m, m - 2)) * C
    )
    c_laalbb = float(F(1, 48 * (m * m - 1))) * (
        -float(F(17 + 7 * m * m, 8)) + float(F(4 * m**3 - 11 * m * m + 5 * m - 1, m - 2)) * C
    )
    c_theta = float(F(1, 8 * (m - 2))) * C
    c_fm = float(F(1, 8 * (m - 3))) * (float(F(5 * m - 7, 8)) - float(F(5 * m - 9, 3)) * C)
    c_fmm = float(F(m - 1, 16 * (m - 3))) * (2.0 * C - 1.0)

    raw_f = (
        c_psi2 * _real_trace(psi @ psi + psis @ psis, scale)
        + c_psips * _real_trace(psi @ psis, scale)
        + c_gpgp * _real_trace(gpgp + gsgs, scale)
        + c_gpgs * _real_trace(gpgs, scale)
        + c_tau * data.tau_b * d
        + c_rho * data.rho_mm * d
        + c_lablab * data.LabLab * d
        + c_laalbb * data.LaaLbb * d
        + c_theta * (_real_trace(th @ th, scale) + _real_trace(gtgt, scale) / (m - 1))
    )
    raw = fj.f * raw_f + c_fm * data.Laa * fj.f_m * d + c_fmm * fj.f_mm * d
    return make_report(3, norm, [("spectral", _pw(norm) * raw * data.measure)])


# ---------------------------------------------------------------------------
# time dependent corrections

@dataclass
class TimePerturbation:
    """First and second order time-dependence of the operator.

    The operator is expanded as ``D + sum_r t^r (G_r grad^2-part + F_r
    grad-part + E_r)``; for ``-(1 + g t) Delta`` one has ``G1_ij = -g
    delta_ij``.  Interior fields are contractions over all indices,
    boundary fields are the restrictions split into tangential (``aa``)
    and normal (``mm``) pieces.  ``T_a`` enters the time-dependent Robin
    condition but does not appear in the printed orders; the field is
    kept for interface completeness and is not consumed.
    """

    G1_ii: float = 0.0
    G1_ij_sq: float = 0.0    # G_{1,ij} G_{1,ij}
    G1_ij_Rikkj: float = 0.0  # G_{1,ij} R_{ikkj}
    G1_ii_jj: float = 0.0    # G_{1,ii;jj}
    G1_ij_ij: float = 0.0    # G_{1,ij;ij}
    G2_ii: float = 0.0
    F1_i_i: float = 0.0      # F_{1,i;i}
    E1: float = 0.0
    G1_aa: float = 0.0
    G1_mm: float = 0.0
    G1_ab_Lab: float = 0.0   # G_{1,ab} L_{ab}
    G1_mm_m: float = 0.0     # G_{1,mm;m}
    G1_aa_m: float = 0.0     # G_{1,aa;m}
    G1_am_a: float = 0.0     # G_{1,am;a} (printed coefficient is zero)
    F1_m: float = 0.0
    S1: float = 0.0
    T_a: float = 0.0

    @classmethod
    def isotropic(cls, m: int, gamma: float, gamma2: float = 0.0, epsilon: float = 0.0):
        """Data of ``-(1 + gamma t + gamma2 t^2) Delta + epsilon t``."""
        g = -float(gamma)
        return cls(
            G1_ii=m * g,
            G1_ij_sq=m * g * g,
            G2_ii=-m * float(gamma2),
            E1=float(epsilon),
            G1_aa=(m - 1) * g,
            G1_mm=g,
            G1_ab_Lab=0.0,  # caller must set g * Laa when the boundary curves
        )


def time_dependent_interior(
    n: int,
    geo: GeometryInvariants,
    tp: TimePerturbation | list[TimePerturbation] | None = None,
    f: SmearingJets | list[SmearingJets] | None = None,
) -> CoefficientReport:
    """Interior coefficient of a time-dependent operator: static plus correction."""
    if n < 0:
        raise ValueError(f"order must be non-negative, got {n}")
    if n > 4:
        raise UnsupportedOrder(f"interior coefficients are tabulated only for n <= 4, got n={n}")
    static = interior_coefficient(n, geo, f)
    if n % 2 == 1 or n == 0:
        return static
    tps = _per_item(tp, len(geo.regions), TimePerturbation, "time-perturbation")
    jets = _per_item(f, len(geo.regions), SmearingJets, "smearing")
    pw = _pw(static.normalization)
    parts = []
    for i, (r, p, fj) in enumerate(zip(geo.regions, tps, jets)):
        if n == 2:
            raw = float(F(1, 6)) * float(F(3, 2)) * p.G1_ii * fj.f * r.dimV
        else:
            poly = (
                float(F(45, 4)) * p.G1_ii * p.G1_ii
                + float(F(45, 2)) * p.G1_ij_sq
                + 60.0 * p.G2_ii
                - 180.0 * p.E1
                + 15.0 * p.G1_ii * r.tau
                - 30.0 * p.G1_ij_Rikkj
                + 90.0 * p.G1_ii * r.E
                + 60.0 * p.F1_i_i
                + 15.0 * p.G1_ii_jj
                - 30.0 * p.G1_ij_ij
            )
            raw = float(F(1, 360)) * fj.f * poly * r.dimV
        parts.append((f"region[{i}]:correction", pw * raw * r.measure))
    return make_report(
        n, static.normalization, [(p.label, p.value) for p in static.parts] + parts
    )


def time_dependent_boundary(
    n: int,
    geo: GeometryInvariants,
    components: list[BoundaryComponentData],
    tp: TimePerturbation | list[TimePerturbation] | None = None,
    f: SmearingJets | list[SmearingJets] | None = None,
) -> CoefficientReport:
    """Boundary coefficient of a time-dependent operator: static plus correction.

    Static means the same components with the time-independent part of the
    boundary condition; corrections start at ``n = 3``.  The printed zero
    multiple of ``G_{1,am;a}`` is kept explicit.
    """
    if n < 0:
        raise ValueError(f"order must be non-negative, got {n}")
    if n > 4:
        raise UnsupportedOrder(f"boundary coefficients are tabulated only for n <= 4, got n={n}")
    static = boundary_coefficient(n, geo, components, f)
    if n <= 2:
        return static
    tps = _per_item(tp, len(components), TimePerturbation, "time-perturbation")
    jets = _per_item(f, len(components), SmearingJets, "smearing")
    dimV = geo.dimV
    pw = _pw(static.normalization)
    parts = []
    for i, (c, p, fj) in enumerate(zip(components, tps, jets)):
        if c.kind not in (DIRICHLET, ROBIN):
            continue
        sign = -1.0 if c.kind == DIRICHLET else 1.0
        if n == 3:
            raw = float(F(1, 384)) * sign * 24.0 * p.G1_aa * fj.f
        else:
            if c.kind == DIRICHLET:
                f_poly = (
                    30.0 * p.G1_aa * c.Laa
                    - 60.0 * p.G1_mm * c.Laa
                    + 30.0 * p.G1_ab_Lab
                    + 30.0 * p.G1_mm_m
                    - 30.0 * p.G1_aa_m
                    + 0.0 * p.G1_am_a
                    - 30.0 * p.F1_m
                )
                fm_poly = -45.0 * p.G1_aa + 45.0 * p.G1_mm
            else:
                f_poly = (
                    30.0 * p.G1_aa * c.Laa
                    + 120.0 * p.G1_mm * c.Laa
                    - 150.0 * p.G1_ab_Lab
                    - 60.0 * p.G1_mm_m
                    + 60.0 * p.G1_aa_m
                    + 150.0 * p.F1_m
                    + 180.0 * c.S * p.G1_aa
                    - 180.0 * c.S * p.G1_mm
                    + 360.0 * p.S1
                )
                fm_poly = 45.0 * p.G1_aa - 45.0 * p.G1_mm
            raw = float(F(1, 360)) * (fj.f * f_poly + fj.f_m * fm_poly)
        parts.append((f"boundary[{i}]:{c.kind}:correction", pw * raw * dimV * c.measure))
    return make_report(
        n, static.normalization, [(p.label, p.value) for p in static.parts] + parts
    )


# ---------------------------------------------------------------------------
# mixed Dirichlet/Neumann junction

def dn_coefficient(
    n: int,
    geo: GeometryInvariants,
    components: list[BoundaryComponentData],
    f: SmearingJets | list[SmearingJets] | None = None,
) -> CoefficientReport:
    """Junction term of a mixed Dirichlet/Neumann boundary condition.

    The order-2 value is a conjectural closed form and is flagged as such;
    at order 3 and beyond the expansion is known to have no locally
    computable coefficient, so the evaluator refuses rather than guess.
    """
    if n < 0:
        raise ValueError(f"order must be non-negative, got {n}")
    if n >= 3:
        raise NotLocallyComputable(
            "mixed Dirichlet/Neumann junctions admit no locally computable "
            f"coefficient at order n={n}; the expansion acquires log or "
            "nonlocal contributions there"
        )
    junctions = [
        (i, c) for i, c in enumerate(components) if c.kind == DN_JUNCTION
    ]
    jets = _per_item(f, len(junctions), SmearingJets, "smearing")
    norm = -geo.m / 2.0
    if n in (0, 1):
        return make_report(n, norm, [(f"junction[{i}]", 0.0) for i, _ in junctions])
    dimV = geo.dimV
    pw = _pw(norm)
    parts = []
    for (i, c), fj in zip(junctions, jets):
        raw = -0.25 * math.pi * fj.f * dimV
        parts.append((f"junction[{i}]", pw * raw * c.measure))
    return make_report(2, norm, parts, conjectural=True)
