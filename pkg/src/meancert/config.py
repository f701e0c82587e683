"""Run configuration: defaults, flat key=value config files, env overrides.

Config files are flat ``key = value`` lines ('#' starts a comment); list
values are comma-separated.  Every key mirrors a :class:`RunConfig` field.
Environment variables override file values using the prefix ``MEANCERT_``
plus the upper-cased key (e.g. ``MEANCERT_TRIALS_PER_INEQUALITY=50``);
command-line flags override both.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import ConfigError

ENV_PREFIX = "MEANCERT_"

#: Canonical certifier order; ranks index the per-trial seed streams, so a
#: certifier's instances do not depend on which others were selected.
CANONICAL_IDS = (
    "scalar_agh",
    "matrix_agh",
    "gap_ratio",
    "half_weight_gap",
    "inverse_convexity",
    "one_sided_gap",
    "matrix_gap_ratio",
    "matrix_half_weight_gap",
    "spread_gap_cap",
    "hs_gap_ratio",
    "hs_agh_chain",
    "hs_half_weight_gap",
    "det_power_order",
    "minkowski_products",
    "power_difference",
    "det_root_gap",
    "det_gap",
    "det_half_weight_gap",
)

PROBE_NAMES = ("gap_ratio_limits", "gap_factor_sharpness")


@dataclass(frozen=True)
class RunConfig:
    """Everything a verification run needs to be reproducible."""

    master_seed: int = 20260808
    trials_per_inequality: int = 1000
    dims: tuple[int, ...] = (1, 2, 3, 4, 5, 6, 7, 8)
    cond_caps: tuple[float, ...] = (1e2, 1e4, 1e6)
    tolerance_scale: float = 1.0
    inequality_selection: tuple[str, ...] = CANONICAL_IDS
    output_format: str = "csv"
    output_path: str = ""
    workers: int = 1

    def validate(self) -> "RunConfig":
        if self.master_seed < 0:
            raise ConfigError("master_seed must be non-negative")
        if self.trials_per_inequality < 1:
            raise ConfigError("trials_per_inequality must be at least 1")
        if not self.dims or any(d < 1 or d > 64 for d in self.dims):
            raise ConfigError("dims must be a nonempty list within [1, 64]")
        if not self.cond_caps or any(c < 1 for c in self.cond_caps):
            raise ConfigError("cond_caps must be a nonempty list of values >= 1")
        if self.tolerance_scale <= 0:
            raise ConfigError("tolerance_scale must be positive")
        unknown = [t for t in self.inequality_selection if t not in CANONICAL_IDS]
        if unknown:
            raise ConfigError(f"unknown inequality tags: {', '.join(unknown)}")
        if not self.inequality_selection:
            raise ConfigError("inequality_selection must not be empty")
        if self.output_format not in ("json", "csv"):
            raise ConfigError(f"output_format must be json or csv, got {self.output_format!r}")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        return self

    def resolved_output_path(self, stem: str = "verify_report") -> str:
        return self.output_path or f"{stem}.{self.output_format}"


_PARSERS = {
    "master_seed": int,
    "trials_per_inequality": int,
    "dims": lambda s: tuple(int(x) for x in _split(s)),
    "cond_caps": lambda s: tuple(float(x) for x in _split(s)),
    "tolerance_scale": float,
    "inequality_selection": lambda s: tuple(_split(s)),
    "output_format": str,
    "output_path": str,
    "workers": int,
}


def _split(s: str) -> list[str]:
    return [part.strip() for part in s.split(",") if part.strip()]


def parse_kv_text(text: str, source: str = "<config>") -> dict:
    """Parse flat ``key = value`` text into a raw string mapping."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        raw[key] = value
    return raw


def load_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Build a validated RunConfig from defaults, file, env, then overrides."""
    values: dict = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = parse_kv_text(fh.read(), source=path)
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        for key, text in raw.items():
            values[key] = _convert(key, text)
    for key in _PARSERS:
        env = os.environ.get(ENV_PREFIX + key.upper())
        if env is not None:
            values[key] = _convert(key, env)
    if overrides:
        for key, value in overrides.items():
            if value is not None:
                values[key] = value
    try:
        cfg = replace(RunConfig(), **values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
    return cfg.validate()


def _convert(key: str, text: str):
    parser = _PARSERS.get(key)
    if parser is None:
        raise ConfigError(f"unknown config key {key!r}")
    try:
        return parser(text)
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad value for {key!r}: {text!r} ({exc})") from exc


def config_echo(cfg: RunConfig) -> dict:
    """JSON-ready mapping of all config fields (for report embedding)."""
    out = {}
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        out[f.name] = list(value) if isinstance(value, tuple) else value
    return out
