"""Strict TOML scenario configuration.

A scenario file describes one verification problem: the geometry, the
operator, the fit window, and the orders to gate with their tolerances.
The schema is closed: unknown sections or keys are rejected with a
dotted-path diagnostic, and malformed TOML surfaces the parser's
line/column message.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .geometry import CATALOG_NAMES


class ConfigError(Exception):
    """Schema violation or unreadable scenario file."""


TASK_KINDS = ("coeffs", "spectrum", "trace", "content", "verify")
BOUNDARY_MODES = ("smooth", "transmittal", "dn_junction", "spectral")
GEOMETRY_NAMES = CATALOG_NAMES + ("flat",)
BC_NAMES = ("dirichlet", "neumann", "robin")


@dataclass
class SpectralSection:
    m: int = 4
    psi_hat: str = ""
    theta: str = ""
    measure: float = 1.0
    Laa: float = 0.0
    LabLab: float = 0.0
    LaaLbb: float = 0.0
    tau_b: float = 0.0
    rho_mm: float = 0.0


@dataclass
class ScenarioConfig:
    """Parsed and validated scenario."""

    path: Path
    description: str = ""
    task: str = "verify"
    # geometry
    geometry: str = "interval"
    params: tuple[float, ...] = (1.0,)
    flat_m: int = 1
    flat_volume: float = 1.0
    # boundary
    bc: str = "dirichlet"
    S: float = 0.0
    boundary_mode: str = "smooth"
    Xi: float = 0.0
    junction_measure: float = 1.0
    # operator
    V: float = 0.0
    gamma: float = 0.0
    gamma2: float = 0.0
    epsilon: float = 0.0
    spectral: SpectralSection | None = None
    # smearing jets
    f: float = 1.0
    f_m: float = 0.0
    f_mm: float = 0.0
    f_iim: float = 0.0
    # fit window
    t_min: float = 1e-4
    t_max: float = 1e-3
    samples: int = 24
    n_max: int = 3
    lambda_max: float = 1e6
    difference: bool = False
    # content boundary setup
    content_bc: tuple[str, str] = ("dirichlet", "dirichlet")
    content_S: tuple[float, float] = (0.0, 0.0)
    # verification gates
    orders: tuple[int, ...] = ()
    tolerances: tuple[float, ...] = ()
    # output
    basename: str = ""

    @property
    def name(self) -> str:
        return self.basename or self.path.stem


def _type_name(value) -> str:
    return type(value).__name__


def _as_float(path: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {_type_name(value)}")
    return float(value)


def _as_int(path: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer, got {_type_name(value)}")
    return value


def _as_str(path: str, value, allowed=None) -> str:
    if not isinstance(value, str):
        raise ConfigError(f"{path}: expected a string, got {_type_name(value)}")
    if allowed is not None and value not in allowed:
        raise ConfigError(f"{path}: {value!r} is not one of {list(allowed)}")
    return value


def _as_bool(path: str, value) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(f"{path}: expected a boolean, got {_type_name(value)}")
    return value


def _as_float_list(path: str, value) -> list[float]:
    if not isinstance(value, list):
        raise ConfigError(f"{path}: expected an array, got {_type_name(value)}")
    return [_as_float(f"{path}[{i}]", v) for i, v in enumerate(value)]


def _as_int_list(path: str, value) -> list[int]:
    if not isinstance(value, list):
        raise ConfigError(f"{path}: expected an array, got {_type_name(value)}")
    return [_as_int(f"{path}[{i}]", v) for i, v in enumerate(value)]


def _check_keys(path: str, table: dict, allowed) -> None:
    unknown = sorted(set(table) - set(allowed))
    if unknown:
        raise ConfigError(
            f"{path or 'top level'}: unknown key(s) {unknown}; allowed: {sorted(allowed)}"
        )


_SECTIONS = (
    "meta",
    "task",
    "geometry",
    "boundary",
    "operator",
    "smearing",
    "fit",
    "content",
    "verify",
    "output",
)


def load_scenario(path: str | Path) -> ScenarioConfig:
    """Parse and validate one scenario file."""
    path = Path(path)
    try:
        raw = tomllib.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc

    _check_keys("", raw, _SECTIONS)
    cfg = ScenarioConfig(path=path)

    meta = raw.get("meta", {})
    _check_keys("meta", meta, ("description",))
    if "description" in meta:
        cfg.description = _as_str("meta.description", meta["description"])

    task = raw.get("task", {})
    _check_keys("task", task, ("kind",))
    if "kind" in task:
        cfg.task = _as_str("task.kind", task["kind"], TASK_KINDS)

    geo = raw.get("geometry", {})
    _check_keys("geometry", geo, ("name", "params", "m", "volume"))
    if "name" in geo:
        cfg.geometry = _as_str("geometry.name", geo["name"], GEOMETRY_NAMES)
    if "params" in geo:
        cfg.params = tuple(_as_float_list("geometry.params", geo["params"]))
    if "m" in geo:
        cfg.flat_m = _as_int("geometry.m", geo["m"])
    if "volume" in geo:
        cfg.flat_volume = _as_float("geometry.volume", geo["volume"])

    bnd = raw.get("boundary", {})
    _check_keys("boundary", bnd, ("bc", "S", "kind", "Xi", "junction_measure"))
    if "bc" in bnd:
        cfg.bc = _as_str("boundary.bc", bnd["bc"], BC_NAMES)
    if "S" in bnd:
        cfg.S = _as_float("boundary.S", bnd["S"])
    if "kind" in bnd:
        cfg.boundary_mode = _as_str("boundary.kind", bnd["kind"], BOUNDARY_MODES)
    if "Xi" in bnd:
        cfg.Xi = _as_float("boundary.Xi", bnd["Xi"])
    if "junction_measure" in bnd:
        cfg.junction_measure = _as_float("boundary.junction_measure", bnd["junction_measure"])

    op = raw.get("operator", {})
    _check_keys("operator", op, ("V", "gamma", "gamma2", "epsilon", "spectral"))
    if "V" in op:
        cfg.V = _as_float("operator.V", op["V"])
    if "gamma" in op:
        cfg.gamma = _as_float("operator.gamma", op["gamma"])
    if "gamma2" in op:
        cfg.gamma2 = _as_float("operator.gamma2", op["gamma2"])
    if "epsilon" in op:
        cfg.epsilon = _as_float("operator.epsilon", op["epsilon"])
    if "spectral" in op:
        sp = op["spectral"]
        if not isinstance(sp, dict):
            raise ConfigError("operator.spectral: expected a table")
        _check_keys(
            "operator.spectral",
            sp,
            ("m", "psi_hat", "theta", "measure", "Laa", "LabLab", "LaaLbb", "tau_b", "rho_mm"),
        )
        sec = SpectralSection()
        for key in ("psi_hat", "theta"):
            if key in sp:
                setattr(sec, key, _as_str(f"operator.spectral.{key}", sp[key]))
        if "m" in sp:
            sec.m = _as_int("operator.spectral.m", sp["m"])
        for key in ("measure", "Laa", "LabLab", "LaaLbb", "tau_b", "rho_mm"):
            if key in sp:
                setattr(sec, key, _as_float(f"operator.spectral.{key}", sp[key]))
        cfg.spectral = sec

    sm = raw.get("smearing", {})
    _check_keys("smearing", sm, ("f", "f_m", "f_mm", "f_iim"))
    for key in ("f", "f_m", "f_mm", "f_iim"):
        if key in sm:
            setattr(cfg, key, _as_float(f"smearing.{key}", sm[key]))

    fit = raw.get("fit", {})
    _check_keys(
        "fit", fit, ("t_min", "t_max", "samples", "n_max", "lambda_max", "difference")
    )
    if "t_min" in fit:
        cfg.t_min = _as_float("fit.t_min", fit["t_min"])
    if "t_max" in fit:
        cfg.t_max = _as_float("fit.t_max", fit["t_max"])
    if "samples" in fit:
        cfg.samples = _as_int("fit.samples", fit["samples"])
    if "n_max" in fit:
        cfg.n_max = _as_int("fit.n_max", fit["n_max"])
    if "lambda_max" in fit:
        cfg.lambda_max = _as_float("fit.lambda_max", fit["lambda_max"])
    if "difference" in fit:
        cfg.difference = _as_bool("fit.difference", fit["difference"])

    cnt = raw.get("content", {})
    _check_keys("content", cnt, ("bc", "S"))
    if "bc" in cnt:
        if not isinstance(cnt["bc"], list) or len(cnt["bc"]) != 2:
            raise ConfigError("content.bc: expected an array of two condition names")
        cfg.content_bc = tuple(
            _as_str(f"content.bc[{i}]", v, BC_NAMES) for i, v in enumerate(cnt["bc"])
        )
    if "S" in cnt:
        vals = _as_float_list("content.S", cnt["S"])
        if len(vals) != 2:
            raise ConfigError("content.S: expected an array of two numbers")
        cfg.content_S = (vals[0], vals[1])

    ver = raw.get("verify", {})
    _check_keys("verify", ver, ("orders", "tolerances"))
    if "orders" in ver:
        cfg.orders = tuple(_as_int_list("verify.orders", ver["orders"]))
    if "tolerances" in ver:
        cfg.tolerances = tuple(_as_float_list("verify.tolerances", ver["tolerances"]))

    out = raw.get("output", {})
    _check_keys("output", out, ("basename",))
    if "basename" in out:
        cfg.basename = _as_str("output.basename", out["basename"])

    _cross_validate(cfg)
    return cfg


def _cross_validate(cfg: ScenarioConfig) -> None:
    if cfg.t_min <= 0 or cfg.t_max <= cfg.t_min:
        raise ConfigError(f"fit window must satisfy 0 < t_min < t_max, got [{cfg.t_min}, {cfg.t_max}]")
    if cfg.samples < cfg.n_max + 3:
        raise ConfigError(
            f"fit.samples={cfg.samples} too few for n_max={cfg.n_max}; need at least n_max + 3"
        )
    if cfg.n_max < 0:
        raise ConfigError("fit.n_max must be non-negative")
    if cfg.lambda_max <= 0:
        raise ConfigError("fit.lambda_max must be positive")
    if len(cfg.orders) != len(cfg.tolerances):
        raise ConfigError(
            f"verify.orders has {len(cfg.orders)} entries but verify.tolerances has "
            f"{len(cfg.tolerances)}"
        )
    if any(t <= 0 for t in cfg.tolerances):
        raise ConfigError("verify.tolerances must be positive")
    if any(n < 0 for n in cfg.orders):
        raise ConfigError("verify.orders must be non-negative")
    if cfg.geometry == "flat" and (cfg.flat_m < 1 or cfg.flat_volume <= 0):
        raise ConfigError("flat geometry needs m >= 1 and volume > 0")
    if cfg.boundary_mode == "spectral" and cfg.spectral is None:
        raise ConfigError("boundary.kind = 'spectral' requires an [operator.spectral] table")
