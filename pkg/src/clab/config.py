"""Run configuration for the command-line front end.

Values come from, in increasing priority: built-in defaults, a flat
``key = value`` file named by ``$CLAB_CONFIG``, and command-line flags.
Tolerances use dotted keys, e.g. ``tol.spectrum = 1e-8``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from clab.coalescence import DEFAULT_ORACLE_GUARD
from clab.errors import InvalidArgumentError
from clab.qh_satake import DEFAULT_EIGEN_GUARD

ENV_VAR = "CLAB_CONFIG"
FORMATS = ("csv", "json")

DEFAULT_TOLERANCES = {
    "spectrum": 1e-8,
    "zeta": 1e-14,
    "prime_zeta": 1e-12,
}


@dataclass(frozen=True)
class RunConfig:
    sieve_limit: int = 10**7
    oracle_guard: int = DEFAULT_ORACLE_GUARD
    eigen_guard: int = DEFAULT_EIGEN_GUARD
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    output_format: str = "csv"
    output_path: str | None = None

    def __post_init__(self):
        for name in ("sieve_limit", "oracle_guard", "eigen_guard"):
            if getattr(self, name) <= 0:
                raise InvalidArgumentError(f"{name} must be positive")
        for k, v in self.tolerances.items():
            if not 0 < v < 1:
                raise InvalidArgumentError(f"tolerance {k}={v} outside (0, 1)")
        if self.output_format not in FORMATS:
            raise InvalidArgumentError(f"output_format must be one of {FORMATS}")

    def tol(self, name: str) -> float:
        return self.tolerances[name]


def _parse_int(key, text):
    try:
        return int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise InvalidArgumentError(f"{key}: expected an integer, got {text!r}") from None


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse ``key = value`` lines into overrides for :class:`RunConfig`."""
    out: dict = {}
    tols: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidArgumentError(f"{source}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key.startswith("tol."):
            try:
                tols[key[4:]] = float(value)
            except ValueError:
                raise InvalidArgumentError(f"{source}:{lineno}: bad number {value!r}") from None
        elif key in ("sieve_limit", "oracle_guard", "eigen_guard"):
            out[key] = _parse_int(key, value)
        elif key == "output_format":
            out[key] = value
        elif key == "output_path":
            out[key] = value or None
        else:
            raise InvalidArgumentError(f"{source}:{lineno}: unknown key {key!r}")
    if tols:
        out["tolerances"] = tols
    return out


def load_config(overrides: dict | None = None, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    cfg = RunConfig()
    path = environ.get(ENV_VAR)
    if path:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise InvalidArgumentError(f"cannot read {ENV_VAR}={path}: {exc}") from None
        cfg = _apply(cfg, parse_config_text(text, path))
    return _apply(cfg, overrides or {})


def _apply(cfg: RunConfig, changes: dict) -> RunConfig:
    changes = {k: v for k, v in changes.items() if v is not None}
    if "tolerances" in changes:
        changes["tolerances"] = {**cfg.tolerances, **changes["tolerances"]}
    return replace(cfg, **changes)
