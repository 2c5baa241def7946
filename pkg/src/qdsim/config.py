"""
Flat ``key = value`` run configuration.

Grammar: one ``key = value`` per line, ``#`` starts a comment, blank lines
are ignored. Command-line overrides win over file values. The effective
configuration can be echoed as a single ``key=value ...`` line and parsed
back to an equal :class:`RunConfig`.
"""

from __future__ import annotations

import difflib
import logging
from dataclasses import dataclass, field, fields

from .model import EquationMode, ModelParams, ValidationError
from .solvers import SolverSettings

__all__ = [
    "ConfigError",
    "RunConfig",
    "SUBCOMMANDS",
    "KEYS",
    "SWEEP_DEFAULTS",
    "parse_config",
    "parse_echo",
]

log = logging.getLogger(__name__)

SUBCOMMANDS = ("steady", "evolve", "spectrum", "sweep-te", "sweep-omega", "grid")

_MODEL_KEYS = tuple(f.name for f in fields(ModelParams))
_SETTINGS_KEYS = tuple(f.name for f in fields(SolverSettings))

# key -> parser; order here is the echo order
KEYS = {
    **{k: float for k in _MODEL_KEYS if k != "mode"},
    "mode": str,
    "dt": float,
    "t_max": float,
    "relax_tol": float,
    "sample_stride": int,
    "sweep_start": float,
    "sweep_stop": float,
    "sweep_count": int,
    "grid_te_start": float,
    "grid_te_stop": float,
    "grid_te_count": int,
    "precision": int,
    "omega10": float,
}
IGNORED_KEYS = ("omega10",)

# swept parameter and default grid per sweeping subcommand
SWEEP_DEFAULTS = {
    "spectrum": ("delta1", -10.0, 10.0, 401),
    "sweep-te": ("t_e", 0.0, 2.0, 401),
    "sweep-omega": ("omega_rabi", 0.0, 2.0, 401),
    "grid": ("delta1", -10.0, 10.0, 401),
}
GRID_TE_DEFAULTS = (0.0, 10.0, 51)
DEFAULT_PRECISION = 9


class ConfigError(ValueError):
    """Invalid configuration text, flag or value."""


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    params: ModelParams = field(default_factory=ModelParams)
    settings: SolverSettings = field(default_factory=SolverSettings)
    sweep_start: float = -10.0
    sweep_stop: float = 10.0
    sweep_count: int = 401
    grid_te_start: float = GRID_TE_DEFAULTS[0]
    grid_te_stop: float = GRID_TE_DEFAULTS[1]
    grid_te_count: int = GRID_TE_DEFAULTS[2]
    precision: int = DEFAULT_PRECISION
    out: str | None = None

    @property
    def swept(self) -> str | None:
        entry = SWEEP_DEFAULTS.get(self.subcommand)
        return entry[0] if entry else None

    def echo_items(self) -> list:
        """Every effective key with its value, in a fixed order."""
        items = [(k, getattr(self.params, k)) for k in _MODEL_KEYS]
        items[-1] = ("mode", self.params.mode.value)
        items += [(k, getattr(self.settings, k)) for k in _SETTINGS_KEYS]
        items += [(k, getattr(self, k)) for k in (
            "sweep_start", "sweep_stop", "sweep_count",
            "grid_te_start", "grid_te_stop", "grid_te_count", "precision")]
        return items

    def echo(self) -> str:
        return " ".join(f"{k}={_render(v)}" for k, v in self.echo_items())


def _render(v) -> str:
    # repr of a float round-trips exactly through float()
    return repr(v) if isinstance(v, float) else str(v)


def _nearest(key):
    match = difflib.get_close_matches(key, list(KEYS), n=1, cutoff=0.0)
    return match[0] if match else None


def _convert(key, raw, where):
    if key not in KEYS:
        hint = _nearest(key)
        raise ConfigError(f"unknown key {key!r}{where}" + (f"; did you mean {hint!r}?" if hint else ""))
    kind = KEYS[key]
    if kind is str:
        return raw
    try:
        if kind is int:
            value = float(raw)
            if value != int(value):
                raise ValueError
            return int(value)
        return float(raw)
    except (ValueError, OverflowError):
        noun = "integer" if kind is int else "number"
        raise ConfigError(f"malformed {noun} {raw!r} for {key!r}{where}") from None


def _read_text(text):
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        where = f" on line {lineno}"
        if key in values:
            raise ConfigError(f"duplicate key {key!r}{where}")
        values[key] = _convert(key, raw, where)
    return values


def parse_config(text: str = "", overrides=None, subcommand: str = "spectrum") -> RunConfig:
    """Build a validated :class:`RunConfig` from config text and overrides.

    ``overrides`` maps keys to raw strings or values (typically from
    command-line flags) and wins over values in ``text``. ``omega10`` is
    accepted and ignored with a warning. Unset keys take the defaults of
    ``subcommand``.
    """
    if subcommand not in SUBCOMMANDS:
        raise ConfigError(f"unknown subcommand {subcommand!r}; choose one of {', '.join(SUBCOMMANDS)}")
    values = _read_text(text)
    for key, raw in (overrides or {}).items():
        if raw is None:
            continue
        value = _convert(key, str(raw) if not isinstance(raw, str) else raw, " (flag)")
        if key in values and values[key] != value:
            log.info("%s: flag value %s overrides file value %s", key, value, values[key])
        values[key] = value

    for key in IGNORED_KEYS:
        if key in values:
            log.warning("%s is accepted for compatibility but does not enter the model; ignored",
                        key)
            del values[key]

    sweep = SWEEP_DEFAULTS.get(subcommand, SWEEP_DEFAULTS["spectrum"])
    try:
        mode = values.pop("mode", EquationMode.CORRECTED.value)
        params = ModelParams(mode=mode, **{k: values.pop(k) for k in _MODEL_KEYS if k in values})
        settings = SolverSettings(**{k: values.pop(k) for k in _SETTINGS_KEYS if k in values})
        cfg = RunConfig(
            subcommand=subcommand,
            params=params,
            settings=settings,
            sweep_start=values.pop("sweep_start", sweep[1]),
            sweep_stop=values.pop("sweep_stop", sweep[2]),
            sweep_count=values.pop("sweep_count", sweep[3]),
            grid_te_start=values.pop("grid_te_start", GRID_TE_DEFAULTS[0]),
            grid_te_stop=values.pop("grid_te_stop", GRID_TE_DEFAULTS[1]),
            grid_te_count=values.pop("grid_te_count", GRID_TE_DEFAULTS[2]),
            precision=values.pop("precision", DEFAULT_PRECISION),
        )
    except ValidationError as exc:
        raise ConfigError(str(exc)) from None
    assert not values, values
    if cfg.precision < 1 or cfg.precision > 17:
        raise ConfigError(f"precision must be between 1 and 17, got {cfg.precision}")
    for prefix in ("sweep", "grid_te"):
        start, stop, count = (getattr(cfg, f"{prefix}_{s}") for s in ("start", "stop", "count"))
        if not start < stop:
            raise ConfigError(f"{prefix}_start ({start}) must be < {prefix}_stop ({stop})")
        if count < 2:
            raise ConfigError(f"{prefix}_count must be >= 2, got {count}")
    return cfg


def parse_echo(line: str, subcommand: str = "spectrum") -> RunConfig:
    """Parse a ``# key=value key=value ...`` echo line back into a config."""
    body = line.strip()
    if body.startswith("#"):
        body = body[1:]
    return parse_config("\n".join(body.split()), subcommand=subcommand)
