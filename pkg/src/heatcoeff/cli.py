"""Command line front-end for reproducible verification runs.

``heatcoeff <task> --config <scenario.toml> [--out DIR]`` evaluates the
closed-form coefficients of a configured problem (``coeffs``), dumps its
oracle spectrum or samples (``spectrum``, ``trace``, ``content``), or
runs the full comparison (``verify``): formula evaluation, oracle
sampling, least-squares fit, and a gated table.

Exit codes: 0 success, 1 trusted coefficient mismatch, 2 configuration
error, 3 numerical failure (untrusted fit or unbounded truncation).
All report files are byte-reproducible: floats are written with
``repr``, JSON keys are sorted, and no timestamps are embedded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .config import ConfigError, ScenarioConfig, load_scenario
from .content_coeffs import Profile, heat_content_coefficient, rod_content_data
from .fit import FitResult, fit_content, fit_trace
from .geometry import (
    DIRICHLET,
    DN_JUNCTION,
    ROBIN,
    BoundaryComponentData,
    GeometryInvariants,
    Region,
    SmearingJets,
    SpectralBCData,
    TransmittalData,
    catalog_geometry,
    tangential_gammas,
    with_potential,
)
from .oracle import (
    Spectrum,
    TraceSamples,
    circle_spectrum,
    cylinder_spectrum,
    delta_circle_spectrum,
    disk_spectrum,
    flat_torus_spectrum,
    heat_trace_samples,
    hemisphere_spectrum,
    interval_spectrum,
    rectangle_spectrum,
    rod_dirichlet_content_series,
    rod_robin_content_series,
    sphere_spectrum,
    time_dependent_trace_samples,
)
from .reports import CoefficientReport, make_report, reports_to_csv
from .trace_coeffs import (
    NotLocallyComputable,
    TimePerturbation,
    UnsupportedOrder,
    boundary_coefficient,
    dn_coefficient,
    interior_coefficient,
    spectral_coefficient,
    time_dependent_boundary,
    time_dependent_interior,
    transmittal_coefficient,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

VERIFY_CSV_HEADER = "n,fitted,predicted,abs_err,tolerance,uncertainty,trusted,status"


class NumericalFailure(RuntimeError):
    """Oracle or fit could not produce trustworthy numbers."""


# ---------------------------------------------------------------------------
# scenario assembly

def _build_geometry(cfg: ScenarioConfig):
    if cfg.geometry == "flat":
        geo = GeometryInvariants(m=cfg.flat_m, regions=[Region(measure=cfg.flat_volume)])
        comps: list[BoundaryComponentData] = []
    else:
        try:
            geo, comps = catalog_geometry(cfg.geometry, cfg.params, bc=cfg.bc, S=cfg.S)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if cfg.V != 0.0:
        geo = with_potential(geo, cfg.V)
        for c in comps:
            c.E_b = -cfg.V
    if cfg.boundary_mode == "dn_junction":
        comps = comps + [
            BoundaryComponentData(kind=DN_JUNCTION, measure=cfg.junction_measure)
        ]
    return geo, comps


def _smearing(cfg: ScenarioConfig) -> SmearingJets:
    return SmearingJets(f=cfg.f, f_m=cfg.f_m, f_mm=cfg.f_mm, f_iim=cfg.f_iim)


def _is_time_dependent(cfg: ScenarioConfig) -> bool:
    return cfg.gamma != 0.0 or cfg.gamma2 != 0.0 or cfg.epsilon != 0.0


def _time_perturbations(cfg: ScenarioConfig, geo, comps):
    interior = TimePerturbation.isotropic(geo.m, cfg.gamma, cfg.gamma2, cfg.epsilon)
    boundary = []
    for c in comps:
        tp = TimePerturbation.isotropic(geo.m, cfg.gamma, cfg.gamma2, cfg.epsilon)
        tp.G1_ab_Lab = -cfg.gamma * c.Laa
        boundary.append(tp)
    return interior, boundary


def _spectral_data(cfg: ScenarioConfig) -> SpectralBCData:
    sec = cfg.spectral
    base = cfg.path.parent
    try:
        psi = np.load(base / sec.psi_hat) if sec.psi_hat else None
        theta = np.load(base / sec.theta) if sec.theta else None
    except OSError as exc:
        raise ConfigError(f"cannot load spectral matrices: {exc}") from exc
    if psi is None or theta is None:
        raise ConfigError("operator.spectral needs psi_hat and theta file references")
    try:
        return SpectralBCData(
            m=sec.m,
            measure=sec.measure,
            psi_hat=psi,
            theta=theta,
            gammas=tangential_gammas(sec.m),
            Laa=sec.Laa,
            LabLab=sec.LabLab,
            LaaLbb=sec.LaaLbb,
            tau_b=sec.tau_b,
            rho_mm=sec.rho_mm,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _predicted_trace(cfg: ScenarioConfig, n: int) -> CoefficientReport:
    """Total coefficient of ``t^{(n-m)/2}`` predicted by the closed forms."""
    geo, comps = _build_geometry(cfg)
    fj = _smearing(cfg)
    if cfg.boundary_mode == "spectral":
        return spectral_coefficient(n, _spectral_data(cfg), fj, geo)
    if cfg.boundary_mode == "transmittal" or cfg.geometry == "delta_circle":
        td = TransmittalData(measure=1.0, Xi=cfg.Xi)
        iface = transmittal_coefficient(n, geo, td, fj)
        if cfg.difference:
            return iface
        parts = [(p.label, p.value) for p in interior_coefficient(n, geo, fj).parts]
        parts += [(p.label, p.value) for p in iface.parts]
        return make_report(n, iface.normalization, parts)
    if _is_time_dependent(cfg):
        tin, tbnd = _time_perturbations(cfg, geo, comps)
        rep_i = time_dependent_interior(n, geo, tin, fj)
        rep_b = time_dependent_boundary(n, geo, comps, tbnd, fj)
    else:
        rep_i = interior_coefficient(n, geo, fj)
        rep_b = boundary_coefficient(n, geo, comps, fj)
    parts = [(p.label, p.value) for p in rep_i.parts]
    parts += [(p.label, p.value) for p in rep_b.parts]
    conjectural = False
    if cfg.boundary_mode == "dn_junction":
        rep_j = dn_coefficient(n, geo, comps, fj)  # raises for n >= 3
        parts += [(p.label, p.value) for p in rep_j.parts]
        conjectural = rep_j.conjectural
    return make_report(n, rep_i.normalization, parts, conjectural=conjectural)


def _predicted_content(cfg: ScenarioConfig, n: int) -> CoefficientReport:
    L = cfg.params[0]
    bc = tuple(DIRICHLET if b == DIRICHLET else ROBIN for b in cfg.content_bc)
    S = tuple(
        0.0 if cfg.content_bc[i] == "neumann" else cfg.content_S[i] for i in (0, 1)
    )
    geo, comps, data = rod_content_data(
        L, Profile.constant(1.0), Profile.constant(1.0), V=cfg.V, bc=bc, S=S
    )
    return heat_content_coefficient(n, comps, data)


def _build_spectrum(cfg: ScenarioConfig) -> Spectrum:
    name, p, lam = cfg.geometry, cfg.params, cfg.lambda_max
    bc, S = cfg.bc, cfg.S
    if name == "interval":
        return interval_spectrum(p[0], lam, bc=bc, S=(S, S))
    if name == "circle":
        return circle_spectrum(p[0], lam)
    if name == "delta_circle":
        return delta_circle_spectrum(p[0], cfg.Xi, lam)
    if name == "rectangle" and bc in (DIRICHLET, "neumann"):
        return rectangle_spectrum(p[0], p[1], lam, bc=bc)
    if name == "flat_torus":
        return flat_torus_spectrum(p[0], p[1], lam)
    if name == "disk" and bc == DIRICHLET:
        return disk_spectrum(p[0], lam)
    if name == "sphere":
        return sphere_spectrum(p[0], lam)
    if name == "hemisphere" and bc in (DIRICHLET, "neumann"):
        return hemisphere_spectrum(p[0], lam, bc=bc)
    if name == "cylinder" and bc in (DIRICHLET, "neumann"):
        return cylinder_spectrum(p[0], p[1], lam, bc=bc)
    raise ConfigError(f"no oracle spectrum for geometry {name!r} with bc {bc!r}")


def _trace_samples(cfg: ScenarioConfig) -> TraceSamples:
    ts = np.geomspace(cfg.t_min, cfg.t_max, cfg.samples)
    spec = _build_spectrum(cfg)
    if _is_time_dependent(cfg):
        base = time_dependent_trace_samples(
            spec, ts, gamma=cfg.gamma, gamma2=cfg.gamma2, epsilon=cfg.epsilon
        )
    else:
        base = heat_trace_samples(spec, ts)
    if not cfg.difference:
        return base
    if cfg.geometry != "delta_circle":
        raise ConfigError("fit.difference is only meaningful for delta_circle")
    plain = circle_spectrum(cfg.params[0], cfg.lambda_max)
    if _is_time_dependent(cfg):
        ref = time_dependent_trace_samples(
            plain, ts, gamma=cfg.gamma, gamma2=cfg.gamma2, epsilon=cfg.epsilon
        )
    else:
        ref = heat_trace_samples(plain, ts)
    return TraceSamples(ts, base.values - ref.values, base.tail_bounds + ref.tail_bounds)


def _content_samples(cfg: ScenarioConfig) -> tuple[np.ndarray, np.ndarray]:
    if cfg.geometry != "interval":
        raise ConfigError("content oracles exist only for the interval geometry")
    if cfg.V != 0.0:
        raise ConfigError("content oracles cover the potential-free rod only")
    L = cfg.params[0]
    ts = np.geomspace(cfg.t_min, cfg.t_max, cfg.samples)
    kinds = cfg.content_bc
    if kinds == (DIRICHLET, DIRICHLET):
        return ts, rod_dirichlet_content_series(L, ts)
    if DIRICHLET not in kinds:
        s0 = 0.0 if kinds[0] == "neumann" else cfg.content_S[0]
        sL = 0.0 if kinds[1] == "neumann" else cfg.content_S[1]
        try:
            vals = rod_robin_content_series(L, s0, sL, ts, lambda_max=cfg.lambda_max)
        except AssertionError as exc:
            raise NumericalFailure(str(exc)) from exc
        return ts, vals
    raise ConfigError("content oracle supports both-ends dirichlet or both-ends robin/neumann")


# ---------------------------------------------------------------------------
# task runners

@dataclass
class ScenarioResult:
    name: str
    exit_code: int
    text: str
    files: list[tuple[str, str]] = field(default_factory=list)


def _fmt(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def _is_content_scenario(cfg: ScenarioConfig) -> bool:
    """Scenarios declare themselves content problems via ``[task] kind``."""
    return cfg.task == "content"


def _predict(cfg: ScenarioConfig, n: int, content: bool) -> CoefficientReport:
    return _predicted_content(cfg, n) if content else _predicted_trace(cfg, n)


def _run_verify(cfg: ScenarioConfig, tolerance_scale: float) -> ScenarioResult:
    formula_only = cfg.boundary_mode in ("spectral", "dn_junction")
    content = _is_content_scenario(cfg)

    fitres: FitResult | None = None
    max_tail = 0.0
    if not formula_only:
        if content:
            ts, vals = _content_samples(cfg)
            fitres = fit_content(ts, vals, cfg.n_max)
            m_for_fit = 0
        else:
            geo, _ = _build_geometry(cfg)
            samples = _trace_samples(cfg)
            max_tail = samples.max_tail
            fitres = fit_trace(samples, geo.m, cfg.n_max)
            m_for_fit = geo.m
            scale = 1.0 + float(np.abs(samples.values).max())
            if max_tail > 1e-10 * scale:
                raise NumericalFailure(
                    f"truncation tail {max_tail:.3e} too large for the fit window"
                )
        # gate trust on the orders this scenario reports; the top fitted
        # orders are guard terms that soak up truncation drift
        bad = []
        for n in cfg.orders:
            try:
                if not fitres.stable_for(n, m_for_fit):
                    bad.append(n)
            except KeyError:
                pass
        if bad:
            raise NumericalFailure(
                "fit not trusted for order(s) "
                + ", ".join(str(n) for n in bad)
                + f" (condition {fitres.condition:.3e}, window drift)"
            )

    rows = []
    worst = EXIT_OK
    for n, tol in zip(cfg.orders, cfg.tolerances):
        tol = tol * tolerance_scale
        status = "ok"
        predicted: float | None = None
        conjectural = False
        try:
            rep = _predict(cfg, n, content)
            predicted = rep.value
            conjectural = rep.conjectural
        except NotLocallyComputable as exc:
            rows.append(
                {
                    "n": n,
                    "fitted": None,
                    "predicted": None,
                    "abs_err": None,
                    "tolerance": tol,
                    "uncertainty": None,
                    "trusted": False,
                    "status": f"NotLocallyComputable: {exc}",
                }
            )
            continue
        except UnsupportedOrder as exc:
            raise ConfigError(str(exc)) from exc
        fitted = None
        abs_err = None
        uncert = None
        trusted = False
        if fitres is not None:
            try:
                fitted = fitres.coefficient(n, 0 if content else m_for_fit)
                uncert = fitres.uncertainty(n, 0 if content else m_for_fit)
            except KeyError as exc:
                raise ConfigError(str(exc)) from exc
            abs_err = abs(fitted - predicted)
            trusted = fitres.stable_for(n, 0 if content else m_for_fit)
            if not conjectural and uncert > tol:
                raise NumericalFailure(
                    f"window cannot resolve order {n} at tolerance {tol:.3e} "
                    f"(fit uncertainty {uncert:.3e})"
                )
            if conjectural:
                status = "conjectural"
            elif abs_err > tol:
                status = "mismatch"
                if trusted:
                    worst = max(worst, EXIT_MISMATCH)
        else:
            status = "conjectural" if conjectural else "formula_only"
        rows.append(
            {
                "n": n,
                "fitted": fitted,
                "predicted": predicted,
                "abs_err": abs_err,
                "tolerance": tol,
                "uncertainty": uncert,
                "trusted": trusted,
                "status": status,
            }
        )

    lines = [f"scenario: {cfg.name}"]
    lines.append(f"{'n':>3}  {'fitted':>24}  {'predicted':>24}  {'abs_err':>12}  "
                 f"{'uncertainty':>12}  trusted  status")
    for r in rows:
        lines.append(
            f"{r['n']:>3}  {_pad(r['fitted'], 24)}  {_pad(r['predicted'], 24)}  "
            f"{_pad(r['abs_err'], 12)}  {_pad(r['uncertainty'], 12)}  "
            f"{str(r['trusted']).lower():>7}  {r['status']}"
        )
    lines.append(f"result: {'PASS' if worst == EXIT_OK else 'FAIL'}")
    text = "\n".join(lines)

    csv_lines = [VERIFY_CSV_HEADER]
    for r in rows:
        csv_lines.append(
            ",".join(
                [
                    str(r["n"]),
                    _fmt(r["fitted"]),
                    _fmt(r["predicted"]),
                    _fmt(r["abs_err"]),
                    _fmt(r["tolerance"]),
                    _fmt(r["uncertainty"]),
                    str(r["trusted"]).lower(),
                    '"' + r["status"].replace('"', "'") + '"',
                ]
            )
        )
    payload = {
        "scenario": cfg.name,
        "task": "verify",
        "rows": rows,
        "max_tail_bound": max_tail,
        "result": "PASS" if worst == EXIT_OK else "FAIL",
    }
    files = [
        (f"{cfg.name}.verify.csv", "\n".join(csv_lines) + "\n"),
        (f"{cfg.name}.verify.json", json.dumps(payload, indent=2, sort_keys=True) + "\n"),
    ]
    return ScenarioResult(cfg.name, worst, text, files)


def _pad(x, width: int) -> str:
    return (_fmt(x) if not isinstance(x, str) else x).rjust(width)


def _run_coeffs(cfg: ScenarioConfig) -> ScenarioResult:
    content = _is_content_scenario(cfg)
    orders = list(cfg.orders) if cfg.orders else list(range(cfg.n_max + 1))
    reports: list[CoefficientReport] = []
    refusals = []
    for n in orders:
        try:
            reports.append(_predict(cfg, n, content))
        except NotLocallyComputable as exc:
            refusals.append({"n": n, "reason": str(exc)})
        except UnsupportedOrder as exc:
            refusals.append({"n": n, "reason": str(exc)})
    payload = {
        "scenario": cfg.name,
        "task": "coeffs",
        "reports": [r.to_dict() for r in reports],
        "refusals": refusals,
    }
    lines = [f"scenario: {cfg.name}"]
    for r in reports:
        flag = " (conjectural)" if r.conjectural else ""
        lines.append(f"  n={r.n}: {repr(r.value)}{flag}")
    for ref in refusals:
        lines.append(f"  n={ref['n']}: {ref['reason']}")
    files = [
        (f"{cfg.name}.coeffs.csv", reports_to_csv(reports)),
        (f"{cfg.name}.coeffs.json", json.dumps(payload, indent=2, sort_keys=True) + "\n"),
    ]
    return ScenarioResult(cfg.name, EXIT_OK, "\n".join(lines), files)


def _run_spectrum(cfg: ScenarioConfig) -> ScenarioResult:
    spec = _build_spectrum(cfg)
    csv_lines = ["lambda,multiplicity"]
    for lam, mult in zip(spec.eigenvalues, spec.multiplicities):
        csv_lines.append(f"{_fmt(lam)},{_fmt(mult)}")
    payload = {
        "scenario": cfg.name,
        "task": "spectrum",
        "count": spec.count,
        "complete_below": spec.complete_below,
        "lowest": [float(x) for x in spec.eigenvalues[:10]],
    }
    text = (
        f"scenario: {cfg.name}\n"
        f"  {int(spec.count)} states (counted with multiplicity) below {spec.complete_below!r}"
    )
    files = [
        (f"{cfg.name}.spectrum.csv", "\n".join(csv_lines) + "\n"),
        (f"{cfg.name}.spectrum.json", json.dumps(payload, indent=2, sort_keys=True) + "\n"),
    ]
    return ScenarioResult(cfg.name, EXIT_OK, text, files)


def _run_trace(cfg: ScenarioConfig) -> ScenarioResult:
    samples = _trace_samples(cfg)
    csv_lines = ["t,value,tail_bound"]
    for t, v, b in zip(samples.t, samples.values, samples.tail_bounds):
        csv_lines.append(f"{_fmt(t)},{_fmt(v)},{_fmt(b)}")
    text = f"scenario: {cfg.name}\n  {samples.t.size} trace samples, max tail bound {_fmt(samples.max_tail)}"
    files = [(f"{cfg.name}.trace.csv", "\n".join(csv_lines) + "\n")]
    return ScenarioResult(cfg.name, EXIT_OK, text, files)


def _run_content(cfg: ScenarioConfig) -> ScenarioResult:
    ts, vals = _content_samples(cfg)
    csv_lines = ["t,beta"]
    for t, v in zip(ts, vals):
        csv_lines.append(f"{_fmt(t)},{_fmt(v)}")
    text = f"scenario: {cfg.name}\n  {ts.size} content samples"
    files = [(f"{cfg.name}.content.csv", "\n".join(csv_lines) + "\n")]
    return ScenarioResult(cfg.name, EXIT_OK, text, files)


def _execute(cfg: ScenarioConfig, task: str, tolerance_scale: float) -> ScenarioResult:
    try:
        if task == "verify":
            return _run_verify(cfg, tolerance_scale)
        if task == "coeffs":
            return _run_coeffs(cfg)
        if task == "spectrum":
            return _run_spectrum(cfg)
        if task == "trace":
            return _run_trace(cfg)
        if task == "content":
            return _run_content(cfg)
        raise ConfigError(f"unknown task {task!r}")
    except ConfigError as exc:
        return ScenarioResult(cfg.name, EXIT_CONFIG, f"scenario: {cfg.name}\n  config error: {exc}")
    except NumericalFailure as exc:
        return ScenarioResult(cfg.name, EXIT_NUMERICAL, f"scenario: {cfg.name}\n  numerical failure: {exc}")


# ---------------------------------------------------------------------------
# entry point

def _bundled_dir() -> Path:
    return Path(str(resources.files("heatcoeff.scenarios")))


def _resolve_config(token: str) -> Path:
    p = Path(token)
    if p.exists():
        return p
    cand = _bundled_dir() / (token if token.endswith(".toml") else token + ".toml")
    if cand.exists():
        return cand
    raise ConfigError(f"no such config file or bundled scenario: {token}")


def _list_scenarios() -> str:
    lines = []
    for path in sorted(_bundled_dir().glob("*.toml")):
        try:
            cfg = load_scenario(path)
            desc = f"  {cfg.description}" if cfg.description else ""
            lines.append(f"{path.stem:<24} [{cfg.task}]{desc}")
        except ConfigError as exc:
            lines.append(f"{path.stem:<24} [invalid] {exc}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="heatcoeff",
        description="Evaluate and verify heat-trace/heat-content expansion coefficients.",
    )
    parser.add_argument(
        "--list-scenarios", action="store_true", help="list bundled scenarios and exit"
    )
    sub = parser.add_subparsers(dest="task")
    for name, help_text in (
        ("coeffs", "evaluate closed-form coefficients"),
        ("spectrum", "dump the oracle spectrum"),
        ("trace", "dump oracle heat-trace samples"),
        ("content", "dump oracle heat-content samples"),
        ("verify", "compare closed forms against the fitted oracle"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", nargs="+", required=True, help="scenario file(s) or bundled name(s)")
        p.add_argument("--out", default=".", help="output directory for report files")
        p.add_argument(
            "--tolerance-scale",
            type=float,
            default=1.0,
            help="multiply all verify tolerances (slow-machine allowance)",
        )
        p.add_argument(
            "--threads",
            type=int,
            default=None,
            help="scenario-level parallelism (default: HEATCOEFF_THREADS or 1)",
        )
    args = parser.parse_args(argv)

    if args.list_scenarios:
        print(_list_scenarios())
        return EXIT_OK
    if not args.task:
        parser.print_usage(sys.stderr)
        print("heatcoeff: a subcommand or --list-scenarios is required", file=sys.stderr)
        return EXIT_CONFIG

    if args.tolerance_scale <= 0:
        print("heatcoeff: --tolerance-scale must be positive", file=sys.stderr)
        return EXIT_CONFIG

    threads = args.threads
    if threads is None:
        env = os.environ.get("HEATCOEFF_THREADS", "")
        try:
            threads = int(env) if env else 1
        except ValueError:
            print(f"heatcoeff: bad HEATCOEFF_THREADS value {env!r}", file=sys.stderr)
            return EXIT_CONFIG
    threads = max(1, threads)

    configs: list[ScenarioConfig] = []
    code = EXIT_OK
    for token in args.config:
        try:
            configs.append(load_scenario(_resolve_config(token)))
        except ConfigError as exc:
            print(f"heatcoeff: {exc}", file=sys.stderr)
            code = max(code, EXIT_CONFIG)
    if code:
        return code

    if threads == 1 or len(configs) == 1:
        results = [_execute(cfg, args.task, args.tolerance_scale) for cfg in configs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(
                pool.map(lambda cfg: _execute(cfg, args.task, args.tolerance_scale), configs)
            )

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for res in results:  # input order regardless of completion order
        print(res.text)
        for rel, content in res.files:
            (out_dir / rel).write_text(content)
        code = max(code, res.exit_code)
    return code


if __name__ == "__main__":
    sys.exit(main())
