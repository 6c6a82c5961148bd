"""Experiment configuration: JSON parsing, validation, hashing."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .errors import ConfigInvalid

_TOP_KEYS = {
    "initial_curve", "p", "n", "sigma", "horizon", "monitor_every",
    "outputs", "seed", "tolerances", "sweep",
}
_SWEEP_KEYS = {"p_values", "family", "grid", "n", "horizon_frac"}


@dataclass(frozen=True)
class ExperimentConfig:
    initial_curve: dict
    p: float
    n: int = 512
    sigma: float = 0.4
    horizon: dict | None = None
    monitor_every: int = 50
    outputs: str | None = None
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    sweep: dict | None = None

    def to_dict(self) -> dict:
        return {
            "initial_curve": self.initial_curve,
            "p": self.p,
            "n": self.n,
            "sigma": self.sigma,
            "horizon": self.horizon,
            "monitor_every": self.monitor_every,
            "outputs": self.outputs,
            "seed": self.seed,
            "tolerances": self.tolerances,
            "sweep": self.sweep,
        }


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a JSON experiment config; unknown keys rejected."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigInvalid("config must be a JSON object")
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise ConfigInvalid(f"unknown config key(s): {sorted(unknown)}")

    if "initial_curve" not in raw:
        raise ConfigInvalid("initial_curve: required")
    curve = raw["initial_curve"]
    if not isinstance(curve, dict) or len(curve) != 1:
        raise ConfigInvalid("initial_curve: must be a single-key object")

    if "p" not in raw:
        raise ConfigInvalid("p: required")
    p = _number(raw, "p")
    if not p > 1.0:
        raise ConfigInvalid("p: must exceed 1")

    n = int(_number(raw, "n", 512))
    if n < 64 or (n & (n - 1)) != 0:
        raise ConfigInvalid("n: must be a power of two >= 64")
    sigma = _number(raw, "sigma", 0.4)
    if not (0.0 < sigma <= 0.9):
        raise ConfigInvalid("sigma: must lie in (0, 0.9]")
    monitor_every = int(_number(raw, "monitor_every", 50))
    if monitor_every < 1:
        raise ConfigInvalid("monitor_every: must be >= 1")
    seed = int(_number(raw, "seed", 0))

    horizon = raw.get("horizon")
    if horizon is not None:
        if (not isinstance(horizon, dict)
                or len(horizon) != 1
                or next(iter(horizon)) not in ("t_end", "until")):
            raise ConfigInvalid("horizon: must be {\"t_end\": T} or {\"until\": f}")
        key, val = next(iter(horizon.items()))
        if not isinstance(val, (int, float)) or val < 0:
            raise ConfigInvalid(f"horizon.{key}: must be a nonnegative number")
        if key == "until" and not val <= 0.9:
            raise ConfigInvalid("horizon.until: must be <= 0.9")

    tolerances = raw.get("tolerances", {})
    if not isinstance(tolerances, dict):
        raise ConfigInvalid("tolerances: must be an object")

    sweep = raw.get("sweep")
    if sweep is not None:
        if not isinstance(sweep, dict):
            raise ConfigInvalid("sweep: must be an object")
        unknown = set(sweep) - _SWEEP_KEYS
        if unknown:
            raise ConfigInvalid(f"sweep: unknown key(s) {sorted(unknown)}")
        for req in ("p_values", "family", "grid"):
            if req not in sweep:
                raise ConfigInvalid(f"sweep.{req}: required")
        if not sweep["p_values"] or not sweep["grid"]:
            raise ConfigInvalid("sweep: p_values and grid must be nonempty")

    outputs = raw.get("outputs")
    if outputs is not None and not isinstance(outputs, str):
        raise ConfigInvalid("outputs: must be a path string")

    return ExperimentConfig(
        initial_curve=curve, p=float(p), n=n, sigma=float(sigma),
        horizon=horizon, monitor_every=monitor_every, outputs=outputs,
        seed=seed, tolerances=tolerances, sweep=sweep,
    )


def _number(raw: dict, key: str, default=None):
    if key not in raw:
        if default is None:
            raise ConfigInvalid(f"{key}: required")
        return default
    v = raw[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigInvalid(f"{key}: must be a number")
    return v


def config_hash(cfg: ExperimentConfig) -> str:
    """Stable hash of the canonical config JSON, for output provenance."""
    canonical = json.dumps(cfg.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]
