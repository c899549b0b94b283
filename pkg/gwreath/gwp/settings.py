from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import GwpError

logger = logging.getLogger(__name__)

PROJECT_DIR = Path(__file__).resolve().parent.parent
POLICY_PATH = PROJECT_DIR / "policy.yaml"
DATA_DIR = PROJECT_DIR / "data"
ENV_PREFIX = "GWP_"


class SettingsError(GwpError, ValueError):
    pass


class DeskSettings(BaseModel):
    """Desk guards, search budgets and the default seed."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    max_delta: int = Field(default=5_000, gt=0)
    max_enum: int = Field(default=10_000, gt=0)
    exhaustive_order: int = Field(default=10_000, gt=0)
    randomized_order: int = Field(default=1_000_000, gt=0)
    lift_budget: int = Field(default=10_000, gt=0)
    pair_budget: int = Field(default=5_000, gt=0)
    search_budget: int = Field(default=2_000, gt=0)
    random_word_length: int = Field(default=32, gt=0)
    sample_size: int = Field(default=200, gt=0)
    axiom_samples: int = Field(default=10_000, gt=0)
    seed: int = Field(default=0, ge=0)
    log_level: str = "INFO"


GUARD_FIELDS = ("max_delta", "max_enum", "exhaustive_order", "randomized_order")


def _read_policy(path: Path) -> Dict[str, Any]:
    with path.open("r", encoding="utf-8") as handle:
        raw = yaml.safe_load(handle)
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise SettingsError(f"Policy file {path} must contain a mapping.")
    unknown = set(raw) - set(DeskSettings.model_fields)
    if unknown:
        raise SettingsError(f"Policy file {path} has unknown keys: {sorted(unknown)}")
    return raw


def _read_env() -> Dict[str, Any]:
    values: Dict[str, Any] = {}
    for name in DeskSettings.model_fields:
        raw = os.getenv(ENV_PREFIX + name.upper())
        if raw is not None and raw.strip():
            values[name] = raw.strip()
    return values


def load_settings(
    policy_path: Optional[Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> DeskSettings:
    """Defaults, then the policy file, then ``GWP_*`` variables, then ``overrides``."""
    load_dotenv(PROJECT_DIR / ".env")
    merged: Dict[str, Any] = {}
    if policy_path is None:
        env_path = os.getenv(ENV_PREFIX + "POLICY")
        policy_path = Path(env_path) if env_path else POLICY_PATH
    if policy_path.exists():
        merged.update(_read_policy(policy_path))
    elif policy_path != POLICY_PATH:
        raise SettingsError(f"Policy file not found: {policy_path}")
    merged.update(_read_env())
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return DeskSettings.model_validate(merged)
    except ValidationError as exc:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()
        )
        raise SettingsError(f"Invalid settings: {problems}") from exc


def warn_if_raised(settings: DeskSettings) -> None:
    defaults = DeskSettings()
    for name in GUARD_FIELDS:
        value, default = getattr(settings, name), getattr(defaults, name)
        if value > default:
            logger.warning("[settings] %s raised to %d (default %d); runs may be slow", name, value, default)
