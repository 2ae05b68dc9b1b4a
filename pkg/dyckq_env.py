"""Environment and configuration helpers for dyckq.

This module centralizes size guards, output defaults and developer overrides.
It contains no combinatorics.
"""
from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Optional

from dyckq_engine import SizeBoundExceeded

# ----------------------------------------------------------------------------
# Core configuration
# ----------------------------------------------------------------------------
DEV_SETTINGS_PATH = Path(__file__).with_name("dev_settings.json")

OUTPUT_FORMATS: set[str] = {"text", "json", "dot", "svg"}
LOG_LEVELS: set[str] = {"DEBUG", "INFO", "WARNING"}

# The JSON file can override any of these values.
DEFAULT_DEV_SETTINGS = {
    "dev_mode": False,
    "max_size": 7,  # plain Dyck paths / trees
    "max_rational_size": 9,  # n*k and n*max(a, b)
    "max_poset_elements": 200000,
    "default_format": "text",  # "text", "json", "dot", "svg"
    "log_level": "WARNING",  # "DEBUG", "INFO", "WARNING"
    "report_dir": None,
}


def _validated_choice(value: str, allowed: set[str], default: str) -> str:
    return value if value in allowed else default


def _normalize_int(value, default: int, minimum: int = 0) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError):
        return default
    return number if number >= minimum else default


def load_dev_settings_file(path: Optional[Path] = None) -> dict:
    """Load settings from :data:`DEV_SETTINGS_PATH` (or ``path``).

    The resulting dictionary always matches :data:`DEFAULT_DEV_SETTINGS` keys and
    performs basic validation of options.
    """

    settings = DEFAULT_DEV_SETTINGS.copy()
    try:
        with open(path or DEV_SETTINGS_PATH, "r", encoding="utf-8") as handle:
            loaded = json.load(handle)
            if isinstance(loaded, dict):
                settings.update(loaded)
    except FileNotFoundError:
        return settings
    except Exception:
        return settings

    settings["dev_mode"] = bool(settings.get("dev_mode", False))
    settings["max_size"] = _normalize_int(settings.get("max_size"), 7)
    settings["max_rational_size"] = _normalize_int(settings.get("max_rational_size"), 9)
    settings["max_poset_elements"] = _normalize_int(settings.get("max_poset_elements"), 200000, 1)
    settings["default_format"] = _validated_choice(
        str(settings.get("default_format", "text")), OUTPUT_FORMATS, "text"
    )
    settings["log_level"] = _validated_choice(
        str(settings.get("log_level", "WARNING")).upper(), LOG_LEVELS, "WARNING"
    )
    report_dir = settings.get("report_dir")
    settings["report_dir"] = str(report_dir) if report_dir else None
    return settings


DEV_SETTINGS = load_dev_settings_file()

# ----------------------------------------------------------------------------
# Getters
# ----------------------------------------------------------------------------


def is_dev_mode() -> bool:
    return bool(DEV_SETTINGS.get("dev_mode", False))


def max_size() -> int:
    return int(DEV_SETTINGS["max_size"])


def max_rational_size() -> int:
    return int(DEV_SETTINGS["max_rational_size"])


def max_poset_elements() -> int:
    return int(DEV_SETTINGS["max_poset_elements"])


def default_format() -> str:
    return str(DEV_SETTINGS["default_format"])


def log_level() -> str:
    return str(DEV_SETTINGS["log_level"])


def report_dir() -> Path:
    configured = DEV_SETTINGS.get("report_dir")
    if configured:
        return Path(configured)
    return Path(os.path.expanduser("~")) / ".dyckq" / "reports"


def override_max_size(value: Optional[int]) -> None:
    """Apply the CLI ``--max-size`` override to both size guards."""

    if value is None:
        return
    DEV_SETTINGS["max_size"] = int(value)
    DEV_SETTINGS["max_rational_size"] = int(value)


# ----------------------------------------------------------------------------
# Size guards
# ----------------------------------------------------------------------------


def check_size(n: int, bound: Optional[int] = None) -> None:
    limit = max_size() if bound is None else bound
    if n > limit:
        raise SizeBoundExceeded(f"size {n} exceeds the bound {limit} (override with --max-size)")


def check_rational_size(n: int, a: int, b: int) -> None:
    limit = max_rational_size()
    size = n * max(a, b)
    if size > limit:
        raise SizeBoundExceeded(
            f"rational size n*max(a,b)={size} exceeds the bound {limit} (override with --max-size)"
        )
