"""Flat key = value run configuration.

Sources merge in fixed precedence: built-in defaults, then the scenario
preset (when `scenario` is set), then config-file keys, then command-line
flags. Unknown keys and invalid values are rejected naming the key.
"""

from dataclasses import dataclass, fields

import numpy as np

from . import scenarios
from .errors import ConfigError, DomainError
from .grid import Grid
from .ocp import ENDPOINT, MIXED, UNCONSTRAINED, FbsmOptions
from .params import Params

_PARAM_KEYS = (
    "sigma", "mu", "xi", "beta_i", "beta_d", "beta_h", "beta_r",
    "gamma1", "gamma2", "gamma3", "epsilon", "tau", "delta1", "delta2",
    "n_total",
)
_INIT_KEYS = ("init_s", "init_e", "init_i", "init_r", "init_d", "init_h", "init_b", "init_c")

_STR_KEYS = ("scenario", "variant", "out_dir", "observed")
_FLOAT_KEYS = ("theta", "tf", "w1", "w2", "relax", "fbsm_tol") + _PARAM_KEYS + _INIT_KEYS
_INT_KEYS = ("steps", "max_sweeps")
KNOWN_KEYS = _STR_KEYS + _FLOAT_KEYS + _INT_KEYS

_KINDS = (scenarios.SIMULATE, UNCONSTRAINED, ENDPOINT, MIXED)


@dataclass
class RunConfig:
    scenario: str = None
    variant: str = None
    theta: float = None
    tf: float = None
    w1: float = None
    w2: float = None
    steps: int = None
    out_dir: str = "."
    observed: str = None
    relax: float = None
    fbsm_tol: float = None
    max_sweeps: int = None
    sigma: float = None
    mu: float = None
    xi: float = None
    beta_i: float = None
    beta_d: float = None
    beta_h: float = None
    beta_r: float = None
    gamma1: float = None
    gamma2: float = None
    gamma3: float = None
    epsilon: float = None
    tau: float = None
    delta1: float = None
    delta2: float = None
    n_total: float = None
    init_s: float = None
    init_e: float = None
    init_i: float = None
    init_r: float = None
    init_d: float = None
    init_h: float = None
    init_b: float = None
    init_c: float = None


RUN_CONFIG_FIELDS = tuple(f.name for f in fields(RunConfig))


def _convert(key, text):
    text = text.strip()
    if key in _STR_KEYS:
        return text
    if key in _INT_KEYS:
        try:
            return int(text)
        except ValueError:
            raise ConfigError(f"key '{key}' needs an integer, got {text!r}", key=key) from None
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"key '{key}' needs a number, got {text!r}", key=key) from None


def parse_config_text(text):
    """Parse `key = value` lines into a raw dict; rejects unknown keys."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"config line {lineno}: expected key = value, got {line!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in KNOWN_KEYS:
            raise ConfigError(f"config line {lineno}: unknown key '{key}'", key=key)
        raw[key] = _convert(key, value)
    return raw


def parse_config(file_text=None, overrides=None):
    """Build a RunConfig from a config file body plus flag overrides.

    `overrides` values that are None are ignored; non-None values win over
    file keys. Validation of parameter/grid invariants happens in resolve().
    """
    raw = parse_config_text(file_text) if file_text else {}
    if overrides:
        for key, value in overrides.items():
            if key not in KNOWN_KEYS:
                raise ConfigError(f"unknown key '{key}'", key=key)
            if value is not None:
                raw[key] = _convert(key, value) if isinstance(value, str) else value
    return RunConfig(**raw)


@dataclass
class ResolvedRun:
    label: str
    kind: str
    params: Params
    grid: Grid
    x0: np.ndarray
    theta: float
    options: FbsmOptions
    out_dir: str
    observed: str


def _validated_params(cfg, w1, w2):
    params = Params(w1=w1, w2=w2)
    for key in _PARAM_KEYS:
        value = getattr(cfg, key)
        if value is None:
            continue
        try:
            params = params.with_updates(**{key: value})
        except DomainError as exc:
            raise ConfigError(str(exc), key=key) from exc
    for key, weight in (("w1", w1), ("w2", w2)):
        try:
            params = params.with_updates(**{key: weight})
        except DomainError as exc:
            raise ConfigError(str(exc), key=key) from exc
    return params


def resolve(cfg):
    """Fill defaults/preset values and validate everything."""
    preset = None
    if cfg.scenario is not None:
        try:
            preset = scenarios.get_preset(cfg.scenario)
        except DomainError as exc:
            raise ConfigError(str(exc), key="scenario") from exc

    kind = cfg.variant if cfg.variant is not None else (preset.kind if preset else scenarios.SIMULATE)
    if kind not in _KINDS:
        raise ConfigError(f"variant must be one of {_KINDS}, got '{kind}'", key="variant")

    tf = cfg.tf if cfg.tf is not None else (preset.tf if preset else 90.0)
    theta = cfg.theta if cfg.theta is not None else (preset.theta if preset else None)
    w1 = cfg.w1 if cfg.w1 is not None else (preset.w1 if preset else 1.0)
    w2 = cfg.w2 if cfg.w2 is not None else (preset.w2 if preset else 1.0)

    if kind in (ENDPOINT, MIXED) and theta is None:
        raise ConfigError(f"variant '{kind}' needs theta", key="theta")
    if kind in (scenarios.SIMULATE, UNCONSTRAINED):
        theta = None

    params = _validated_params(cfg, w1, w2)

    inits = [getattr(cfg, key) for key in _INIT_KEYS]
    if any(value is not None for value in inits):
        defaults = [18000.0, 0.0, 15.0, 0.0, 0.0, 0.0, 0.0, 0.0]
        x0 = np.array([d if v is None else v for v, d in zip(inits, defaults)] + [0.0])
        if np.any(x0 < 0.0):
            bad = _INIT_KEYS[int(np.flatnonzero(x0[:8] < 0.0)[0])]
            raise ConfigError(f"key '{bad}' must be nonnegative", key=bad)
        if cfg.n_total is None:
            params = params.with_updates(n_total=float(x0[:8].sum()))
    else:
        x0 = None

    steps = cfg.steps if cfg.steps is not None else int(round(tf / scenarios.DEFAULT_STEP))
    try:
        run_grid = Grid(0.0, tf, steps)
    except DomainError as exc:
        key = "steps" if steps is not None and (not isinstance(steps, (int, np.integer)) or steps < 1) else "tf"
        raise ConfigError(str(exc), key=key) from exc

    defaults = FbsmOptions()
    options = FbsmOptions(
        relax=defaults.relax if cfg.relax is None else cfg.relax,
        tol=defaults.tol if cfg.fbsm_tol is None else cfg.fbsm_tol,
        max_sweeps=defaults.max_sweeps if cfg.max_sweeps is None else cfg.max_sweeps,
    )
    if not 0.0 < options.relax <= 1.0:
        raise ConfigError(f"key 'relax' must be in (0, 1], got {options.relax!r}", key="relax")
    if options.tol <= 0.0:
        raise ConfigError(f"key 'fbsm_tol' must be positive, got {options.tol!r}", key="fbsm_tol")
    if options.max_sweeps < 1:
        raise ConfigError(f"key 'max_sweeps' must be >= 1, got {options.max_sweeps!r}", key="max_sweeps")

    label = cfg.scenario if cfg.scenario is not None else kind
    return ResolvedRun(
        label=label,
        kind=kind,
        params=params,
        grid=run_grid,
        x0=x0,
        theta=theta,
        options=options,
        out_dir=cfg.out_dir,
        observed=cfg.observed,
    )
