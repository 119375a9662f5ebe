"""
Configuration for the toolkit.

Settings live in nested sections addressed by dotted keys such as
``knot.max_crossings``. A user file only needs the keys it changes; values of
the wrong type are dropped with a warning and the default stays in force.
"""

import copy
import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, Optional

logger = logging.getLogger(__name__)


DEFAULT_CONFIG_FILE = Path.home() / ".seifert_interior" / "config.json"


def _positive_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value > 0


def _nonnegative_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value >= 0


def _flag(value: Any) -> bool:
    return isinstance(value, bool)


def _indent(value: Any) -> bool:
    return value is None or _nonnegative_int(value)


def _level(value: Any) -> bool:
    return isinstance(value, str) and value.upper() in ("DEBUG", "INFO", "WARNING", "ERROR")


def _optional_path(value: Any) -> bool:
    return value is None or isinstance(value, str)


# Key -> check applied to values read from a file
VALIDATORS: Dict[str, Callable[[Any], bool]] = {
    "interior.memoize": _flag,
    "signed.use_shortcut": _flag,
    "signed.max_negative_edges": _nonnegative_int,
    "lattice.max_s": _nonnegative_int,
    "lattice.series_order": _nonnegative_int,
    "lattice.direct_counts": _flag,
    "knot.max_crossings": _positive_int,
    "knot.split_diagrams": _flag,
    "suite.max_edges": _positive_int,
    "suite.random_cases": _nonnegative_int,
    "suite.seed": _nonnegative_int,
    "output.json_indent": _indent,
    "output.text": _flag,
    "logging.level": _level,
    "logging.file_enabled": _flag,
    "logging.log_dir": _optional_path,
    "logging.keep_days": _positive_int,
}


class Config:
    """Toolkit settings with file persistence."""

    DEFAULT_CONFIG = {
        "interior": {
            "memoize": True,
        },
        "signed": {
            "use_shortcut": True,
            "max_negative_edges": 20,  # subset sums above this use the skein recursion
        },
        "lattice": {
            "max_s": 8,
            "series_order": 8,
            "direct_counts": False,
        },
        "knot": {
            "max_crossings": 16,
            "split_diagrams": True,
        },
        "suite": {
            "max_edges": 10,
            "random_cases": 0,
            "seed": 0,
        },
        "output": {
            "json_indent": None,  # None = one line
            "text": True,
        },
        "logging": {
            "level": "WARNING",
            "file_enabled": False,
            "log_dir": None,
            "keep_days": 30,
        },
    }

    def __init__(self, config_file: Optional[str] = None):
        """
        Args:
            config_file: Settings file; ~/.seifert_interior/config.json when omitted
        """
        self.config_file = Path(config_file) if config_file else DEFAULT_CONFIG_FILE
        self.config = copy.deepcopy(self.DEFAULT_CONFIG)
        self.rejected: Dict[str, Any] = {}
        self.load()

    def load(self) -> bool:
        """Merge the settings file over the defaults. False when there is none or it is unreadable."""
        if not self.config_file.is_file():
            logger.debug(f"No configuration at {self.config_file}, using defaults")
            return False
        try:
            user_config = json.loads(self.config_file.read_text(encoding="utf-8"))
        except (OSError, ValueError) as e:
            logger.error(f"Ignoring configuration {self.config_file}: {e}")
            return False
        if not isinstance(user_config, dict):
            logger.error(f"Ignoring configuration {self.config_file}: top level is not an object")
            return False

        self._merge(self.config, user_config, "")
        logger.info(f"Configuration loaded from {self.config_file}")
        return True

    def save(self) -> bool:
        try:
            self.config_file.parent.mkdir(parents=True, exist_ok=True)
            self.config_file.write_text(json.dumps(self.config, indent=2) + "\n", encoding="utf-8")
        except OSError as e:
            logger.error(f"Failed to save configuration: {e}")
            return False
        logger.info(f"Configuration saved to {self.config_file}")
        return True

    def get(self, key: str, default: Any = None) -> Any:
        """Value at a dotted key, or default."""
        node: Any = self.config
        for part in key.split("."):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def resolve(self, key: str, override: Any = None) -> Any:
        """A command-line override when given, otherwise the configured value."""
        return self.get(key) if override is None else override

    def set(self, key: str, value: Any) -> bool:
        """
        Set a dotted key, creating sections on the way.

        Fails when a prefix of the key names a value rather than a section.
        """
        *sections, leaf = key.split(".")
        node = self.config
        for part in sections:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                logger.error(f"Cannot set '{key}': '{part}' is not a section")
                return False
        node[leaf] = value
        return True

    def reset_to_defaults(self) -> bool:
        self.config = copy.deepcopy(self.DEFAULT_CONFIG)
        self.rejected.clear()
        return self.save()

    def get_section(self, section: str) -> Dict[str, Any]:
        return self.config.get(section, {})

    def _merge(self, base: Dict[str, Any], update: Dict[str, Any], prefix: str) -> None:
        for name, value in update.items():
            key = f"{prefix}{name}"
            if isinstance(base.get(name), dict) and isinstance(value, dict):
                self._merge(base[name], value, f"{key}.")
                continue
            check = VALIDATORS.get(key)
            if check is not None and not check(value):
                logger.warning(f"Ignoring invalid value for {key}: {value!r}")
                self.rejected[key] = value
                continue
            base[name] = value

    def __repr__(self) -> str:
        return f"Config(file='{self.config_file}')"


_config_instance: Optional[Config] = None


def get_config() -> Config:
    """The process-wide configuration, read on first use."""
    global _config_instance
    if _config_instance is None:
        _config_instance = Config()
    return _config_instance


def reload_config(config_file: Optional[str] = None) -> Config:
    """Replace the process-wide configuration with a fresh read of config_file."""
    global _config_instance
    _config_instance = Config(config_file)
    return _config_instance
