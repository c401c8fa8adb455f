"""Experiment configuration: schema, YAML loading and ``key=value`` overrides.

Keys are dotted paths (``grid.N``, ``stepping.dt``, ``initial_data.seed``).
A YAML file may nest them or spell them flat; override values go through
``yaml.safe_load`` so ``true``, ``1e-2`` and ``[2, 4]`` arrive typed. Lengths
also accept multiples of pi (``16pi``, ``8*pi``) and floats accept ``inf``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, Mapping, Optional, Tuple, Union

import yaml

from kstails.errors import ConfigError, ContractViolation
from kstails.integrator.config import Scheme, SteppingConfig
from kstails.models import ModelSpec, Variant
from kstails.spectral.grid import Grid
from kstails.util.env import parse_bool_flag


class InitialKind(str, Enum):
    RANDOM_BAND = "random_band"
    SINGLE_MODE = "single_mode"
    ODD_RANDOM = "odd_random"
    FROM_CHECKPOINT = "from_checkpoint"


AUTO = "auto"


@dataclass(frozen=True)
class InitialDataConfig:
    kind: InitialKind = InitialKind.RANDOM_BAND
    seed: int = 0
    # None means floor(L), capped below N/2
    top_index: Optional[int] = None
    amplitude: float = 1e-2
    k: Optional[Tuple[int, ...]] = None
    path: Optional[str] = None


@dataclass(frozen=True)
class DiagnosticsConfig:
    p_list: Tuple[float, ...] = (4.0, 8.0)
    s_list: Tuple[float, ...] = (1.0, 2.0)
    tail_multiplier: Union[float, str] = 1.0
    C0: float = 1.0
    j_max: int = 8
    noise_floor: Optional[float] = None
    C: float = 1.0
    sup_fraction: float = 0.5
    fit_times: Tuple[float, ...] = (1.0, 2.5)


@dataclass(frozen=True)
class SweepConfig:
    L_values: Tuple[float, ...] = (8 * math.pi, 16 * math.pi, 32 * math.pi)
    observable: str = "sup_L2"
    workers: Optional[int] = None


@dataclass(frozen=True)
class ExperimentConfig:
    model: ModelSpec
    grid: Grid
    stepping: SteppingConfig
    initial_data: InitialDataConfig = InitialDataConfig()
    diagnostics: DiagnosticsConfig = DiagnosticsConfig()
    sweep: SweepConfig = SweepConfig()
    output: str = "runs/default"
    checkpoint_every: int = 0

    def resolved_top_index(self) -> int:
        top = self.initial_data.top_index
        if top is None:
            return max(1, min(int(math.floor(self.grid.L)), self.grid.nyquist - 1))
        return top


# ---------------------------------------------------------------------------
# value parsers


def _fail(key: str, value: Any, expected: str) -> ConfigError:
    return ConfigError(f"{key}: expected {expected}, got {value!r}")


_PI_MULTIPLE = re.compile(r"^\s*([-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?)?\s*\*?\s*pi\s*$")


def _float(key: str, value: Any) -> float:
    if isinstance(value, bool):
        raise _fail(key, value, "a number")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        m = _PI_MULTIPLE.match(value.lower())
        if m:
            return float(m.group(1) or 1.0) * math.pi
        try:
            return float(value)
        except ValueError:
            pass
    raise _fail(key, value, "a number")


def _int(key: str, value: Any) -> int:
    if isinstance(value, bool):
        raise _fail(key, value, "an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            pass
    raise _fail(key, value, "an integer")


def _bool(key: str, value: Any) -> bool:
    if isinstance(value, bool):
        return value
    parsed = parse_bool_flag(str(value))
    if parsed is None:
        raise _fail(key, value, "a boolean")
    return parsed


def _str(key: str, value: Any) -> str:
    if value is None or isinstance(value, (list, dict)):
        raise _fail(key, value, "a string")
    return str(value)


def _optional(parse: Callable[[str, Any], Any]) -> Callable[[str, Any], Any]:
    def inner(key: str, value: Any) -> Any:
        if value is None or (isinstance(value, str) and value.strip().lower() in ("null", "none", "")):
            return None
        return parse(key, value)

    return inner


def _tuple_of(parse: Callable[[str, Any], Any]) -> Callable[[str, Any], Tuple[Any, ...]]:
    def inner(key: str, value: Any) -> Tuple[Any, ...]:
        if isinstance(value, str):
            value = yaml.safe_load(value) if value.strip().startswith("[") else [value]
        if not isinstance(value, (list, tuple)):
            value = [value]
        return tuple(parse(key, v) for v in value)

    return inner


def _enum(enum_cls: type) -> Callable[[str, Any], Any]:
    def inner(key: str, value: Any) -> Any:
        try:
            return enum_cls(str(value))
        except ValueError:
            names = ", ".join(e.value for e in enum_cls)
            raise ConfigError(f"{key}: expected one of {names}, got {value!r}") from None

    return inner


def _multiplier(key: str, value: Any) -> Union[float, str]:
    if isinstance(value, str) and value.strip().lower() == AUTO:
        return AUTO
    return _float(key, value)


@dataclass(frozen=True)
class ConfigKey:
    path: str
    default: Any
    parse: Callable[[str, Any], Any]
    help: str


SCHEMA: Tuple[ConfigKey, ...] = (
    ConfigKey("model.variant", Variant.KS1D.value, _enum(Variant), "KS1D | KS2D | RegBurgers | DestabilizedKS1D"),
    ConfigKey("model.s", 2.0, _float, "RegBurgers dissipation order"),
    ConfigKey("model.eta", 0.0, _float, "DestabilizedKS1D growth term"),
    ConfigKey("model.d", None, _optional(_int), "RegBurgers dimension; null follows grid.d"),
    ConfigKey("model.linear_only", False, _bool, "drop the nonlinearity"),
    ConfigKey("grid.d", 1, _int, "space dimension (1 or 2)"),
    ConfigKey("grid.L", 16 * math.pi, _float, "box half-length; the period is 2L"),
    ConfigKey("grid.N", 512, _int, "modes per axis (even, >= 8)"),
    ConfigKey("stepping.scheme", Scheme.ETDRK4.value, _enum(Scheme), "ETDRK4 | IMEX-CN"),
    ConfigKey("stepping.dt", 0.05, _float, "time step"),
    ConfigKey("stepping.t_end", 200.0, _float, "integration horizon"),
    ConfigKey("stepping.sample_interval", 0.5, _float, "observer cadence"),
    ConfigKey("stepping.max_amplitude", 1e6, _float, "L2 cap for the divergence verdict"),
    ConfigKey("stepping.min_dt", 1e-10, _float, "smallest admissible dt"),
    ConfigKey("initial_data.kind", InitialKind.RANDOM_BAND.value, _enum(InitialKind), "random_band | single_mode | odd_random | from_checkpoint"),
    ConfigKey("initial_data.seed", 0, _int, "generator seed"),
    ConfigKey("initial_data.top_index", None, _optional(_int), "highest populated |k|; null means floor(L)"),
    ConfigKey("initial_data.amplitude", 1e-2, _float, "RMS value of the initial field"),
    ConfigKey("initial_data.k", None, _optional(_tuple_of(_int)), "mode index (single_mode)"),
    ConfigKey("initial_data.path", None, _optional(_str), "checkpoint file (from_checkpoint)"),
    ConfigKey("diagnostics.p_list", [4.0, 8.0], _tuple_of(_float), "recorded L^p exponents"),
    ConfigKey("diagnostics.s_list", [1.0, 2.0], _tuple_of(_float), "recorded H^s orders"),
    ConfigKey("diagnostics.tail_multiplier", 1.0, _multiplier, "c in M_j = c 2^j L, or auto = C0 H^(2/5)"),
    ConfigKey("diagnostics.C0", 1.0, _float, "prefactor of the auto tail multiplier"),
    ConfigKey("diagnostics.j_max", 8, _int, "last dyadic tail index"),
    ConfigKey("diagnostics.noise_floor", None, _optional(_float), "fit floor; null means (1e-12 ||u||)^2"),
    ConfigKey("diagnostics.C", 1.0, _float, "constant in the j0 rules"),
    ConfigKey("diagnostics.sup_fraction", 0.5, _float, "transient cutoff for sup statistics"),
    ConfigKey("diagnostics.fit_times", [1.0, 2.5], _tuple_of(_float), "times of the Gevrey fits (plus the final sample)"),
    ConfigKey("sweep.L_values", [8 * math.pi, 16 * math.pi, 32 * math.pi], _tuple_of(_float), "domain sizes of a sweep"),
    ConfigKey("sweep.observable", "sup_L2", _str, "sup_L2 | sup_Hs(s) | sup_Lp(p)"),
    ConfigKey("sweep.workers", None, _optional(_int), "threads; null means min(len(L_values), cpus)"),
    ConfigKey("output", "runs/default", _str, "run directory"),
    ConfigKey("checkpoint_every", 0, _int, "samples between state checkpoints; 0 keeps only the final state"),
)

_BY_PATH: Dict[str, ConfigKey] = {k.path: k for k in SCHEMA}


def defaults() -> Dict[str, Any]:
    return {k.path: k.default for k in SCHEMA}


def defaults_table() -> str:
    """One line per key with its default, as shown by ``--help``."""
    width = max(len(k.path) for k in SCHEMA)
    lines = []
    for k in SCHEMA:
        default = "null" if k.default is None else _render(k.default)
        lines.append(f"  {k.path:<{width}}  {default:<22} {k.help}")
    return "\n".join(lines)


def _render(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_render(v) for v in value) + "]"
    return str(value)


# ---------------------------------------------------------------------------
# flat <-> typed


def flatten(data: Mapping[str, Any], prefix: str = "") -> Dict[str, Any]:
    """Nested mappings to dotted keys; lists stay values."""
    flat: Dict[str, Any] = {}
    for key, value in data.items():
        path = f"{prefix}{key}"
        if isinstance(value, Mapping):
            flat.update(flatten(value, f"{path}."))
        else:
            flat[path] = value
    return flat


def _typed(flat: Mapping[str, Any]) -> Dict[str, Any]:
    unknown = sorted(set(flat) - set(_BY_PATH))
    if unknown:
        raise ConfigError(f"unknown config key {unknown[0]!r}")
    merged = defaults()
    merged.update(flat)
    return {path: _BY_PATH[path].parse(path, value) for path, value in merged.items()}


def from_flat(flat: Mapping[str, Any]) -> ExperimentConfig:
    v = _typed(flat)
    try:
        grid = Grid(d=v["grid.d"], L=v["grid.L"], N=v["grid.N"])
    except ContractViolation as exc:
        raise ConfigError(f"grid: {exc}") from exc
    try:
        model = ModelSpec(
            variant=v["model.variant"],
            s=v["model.s"],
            eta=v["model.eta"],
            d=v["model.d"],
            linear_only=v["model.linear_only"],
        )
        model.check_grid(grid)
    except ContractViolation as exc:
        raise ConfigError(f"model: {exc}") from exc
    try:
        stepping = SteppingConfig(
            scheme=v["stepping.scheme"],
            dt=v["stepping.dt"],
            t_end=v["stepping.t_end"],
            sample_interval=v["stepping.sample_interval"],
            max_amplitude=v["stepping.max_amplitude"],
            min_dt=v["stepping.min_dt"],
        )
    except ContractViolation as exc:
        raise ConfigError(f"stepping: {exc}") from exc

    initial = InitialDataConfig(
        kind=v["initial_data.kind"],
        seed=v["initial_data.seed"],
        top_index=v["initial_data.top_index"],
        amplitude=v["initial_data.amplitude"],
        k=v["initial_data.k"],
        path=v["initial_data.path"],
    )
    _check_initial(initial, grid)

    diagnostics = DiagnosticsConfig(
        p_list=v["diagnostics.p_list"],
        s_list=v["diagnostics.s_list"],
        tail_multiplier=v["diagnostics.tail_multiplier"],
        C0=v["diagnostics.C0"],
        j_max=v["diagnostics.j_max"],
        noise_floor=v["diagnostics.noise_floor"],
        C=v["diagnostics.C"],
        sup_fraction=v["diagnostics.sup_fraction"],
        fit_times=v["diagnostics.fit_times"],
    )
    _check_diagnostics(diagnostics)

    sweep = SweepConfig(
        L_values=v["sweep.L_values"],
        observable=v["sweep.observable"],
        workers=v["sweep.workers"],
    )
    if any(not L > 0 for L in sweep.L_values):
        raise ConfigError(f"sweep.L_values: every L must be positive, got {sweep.L_values!r}")
    if sweep.workers is not None and sweep.workers < 1:
        raise ConfigError(f"sweep.workers: must be >= 1, got {sweep.workers!r}")
    if v["checkpoint_every"] < 0:
        raise ConfigError(f"checkpoint_every: must be >= 0, got {v['checkpoint_every']!r}")

    return ExperimentConfig(
        model=model,
        grid=grid,
        stepping=stepping,
        initial_data=initial,
        diagnostics=diagnostics,
        sweep=sweep,
        output=v["output"],
        checkpoint_every=v["checkpoint_every"],
    )


def _check_initial(init: InitialDataConfig, grid: Grid) -> None:
    if init.top_index is not None and not 1 <= init.top_index < grid.nyquist:
        raise ConfigError(
            f"initial_data.top_index: need 1 <= top_index < N/2 = {grid.nyquist}, got {init.top_index}"
        )
    if not (math.isfinite(init.amplitude) and init.amplitude >= 0):
        raise ConfigError(f"initial_data.amplitude: must be finite and >= 0, got {init.amplitude!r}")
    if init.kind is InitialKind.SINGLE_MODE:
        if init.k is None:
            raise ConfigError("initial_data.k: required for single_mode")
        if len(init.k) != grid.d or not all(abs(k) < grid.nyquist for k in init.k):
            raise ConfigError(f"initial_data.k: {init.k!r} is not a non-Nyquist index of a {grid.d}D grid with N={grid.N}")
    if init.kind is InitialKind.FROM_CHECKPOINT and not init.path:
        raise ConfigError("initial_data.path: required for from_checkpoint")


def _check_diagnostics(diag: DiagnosticsConfig) -> None:
    if any(not p >= 1 for p in diag.p_list):
        raise ConfigError(f"diagnostics.p_list: exponents must be >= 1, got {diag.p_list!r}")
    if any(not s >= 0 for s in diag.s_list):
        raise ConfigError(f"diagnostics.s_list: orders must be >= 0, got {diag.s_list!r}")
    if diag.tail_multiplier != AUTO and not diag.tail_multiplier > 0:
        raise ConfigError(f"diagnostics.tail_multiplier: must be positive or 'auto', got {diag.tail_multiplier!r}")
    if diag.j_max < 0:
        raise ConfigError(f"diagnostics.j_max: must be >= 0, got {diag.j_max!r}")
    if diag.noise_floor is not None and diag.noise_floor < 0:
        raise ConfigError(f"diagnostics.noise_floor: must be >= 0, got {diag.noise_floor!r}")
    if not 0 <= diag.sup_fraction < 1:
        raise ConfigError(f"diagnostics.sup_fraction: must be in [0, 1), got {diag.sup_fraction!r}")


def to_flat(cfg: ExperimentConfig) -> Dict[str, Any]:
    """Plain-typed dotted echo in schema order; ``from_flat(to_flat(c))`` rebuilds ``c``."""
    init, diag, sweep = cfg.initial_data, cfg.diagnostics, cfg.sweep
    values = {
        "model.variant": cfg.model.variant.value,
        "model.s": float(cfg.model.s),
        "model.eta": float(cfg.model.eta),
        "model.d": cfg.model.d,
        "model.linear_only": bool(cfg.model.linear_only),
        "grid.d": cfg.grid.d,
        "grid.L": cfg.grid.L,
        "grid.N": cfg.grid.N,
        "stepping.scheme": cfg.stepping.scheme.value,
        "stepping.dt": cfg.stepping.dt,
        "stepping.t_end": cfg.stepping.t_end,
        "stepping.sample_interval": cfg.stepping.sample_interval,
        "stepping.max_amplitude": cfg.stepping.max_amplitude,
        "stepping.min_dt": cfg.stepping.min_dt,
        "initial_data.kind": init.kind.value,
        "initial_data.seed": init.seed,
        "initial_data.top_index": init.top_index,
        "initial_data.amplitude": float(init.amplitude),
        "initial_data.k": list(init.k) if init.k is not None else None,
        "initial_data.path": init.path,
        "diagnostics.p_list": [float(p) for p in diag.p_list],
        "diagnostics.s_list": [float(s) for s in diag.s_list],
        "diagnostics.tail_multiplier": diag.tail_multiplier if diag.tail_multiplier == AUTO else float(diag.tail_multiplier),
        "diagnostics.C0": float(diag.C0),
        "diagnostics.j_max": diag.j_max,
        "diagnostics.noise_floor": diag.noise_floor,
        "diagnostics.C": float(diag.C),
        "diagnostics.sup_fraction": float(diag.sup_fraction),
        "diagnostics.fit_times": [float(t) for t in diag.fit_times],
        "sweep.L_values": [float(L) for L in sweep.L_values],
        "sweep.observable": sweep.observable,
        "sweep.workers": sweep.workers,
        "output": cfg.output,
        "checkpoint_every": cfg.checkpoint_every,
    }
    return {k.path: values[k.path] for k in SCHEMA}


def with_overrides(cfg: ExperimentConfig, overrides: Mapping[str, Any]) -> ExperimentConfig:
    flat = to_flat(cfg)
    flat.update(overrides)
    return from_flat(flat)


def parse_override(text: str) -> Tuple[str, Any]:
    """``"grid.N=1024"`` -> ``("grid.N", 1024)``."""
    if "=" not in text:
        raise ConfigError(f"override {text!r} is not of the form key=value")
    key, raw = text.split("=", 1)
    key = key.strip()
    if key not in _BY_PATH:
        raise ConfigError(f"unknown config key {key!r}")
    try:
        value = yaml.safe_load(raw) if raw.strip() else None
    except yaml.YAMLError as exc:
        raise ConfigError(f"override {text!r}: {exc}") from exc
    return key, value


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    if not isinstance(data, Mapping):
        raise ConfigError(f"{path}: top level must be a mapping, got {type(data).__name__}")
    return flatten(data)


def load_config(
    path: Optional[Union[str, Path]] = None, overrides: Iterable[str] = ()
) -> ExperimentConfig:
    flat: Dict[str, Any] = read_config_file(path) if path is not None else {}
    for text in overrides:
        key, value = parse_override(text)
        flat[key] = value
    return from_flat(flat)


def replace_output(cfg: ExperimentConfig, output: Union[str, Path]) -> ExperimentConfig:
    return replace(cfg, output=str(output))
