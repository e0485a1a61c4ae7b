"""
Chevalley - Configuration Management

Two configuration sources, evaluated in this order (later wins):

  1. DEFAULT_CONFIG  - hardcoded defaults, always present.
  2. YAML file       - operator-supplied overrides via ConfigManager(path).

Environment variables are not consulted.
"""

import copy
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Union, cast

import yaml

from .core import ANNIHILATORS, ENGINES
from .exceptions import ConfigurationError

logger = logging.getLogger(__name__)

COMMANDS = ("decompose", "poly", "verify", "power", "multiplicative", "exp-nilpotent")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class CliConfig:
    """
    One command-line invocation with validation

    Attributes:
        command:            decompose | poly | verify | power | multiplicative |
                            exp-nilpotent
        input_path:         Matrix file to read
        output_path:        Destination file; None writes to standard output
        exponent:           Power for the ``power`` command
        emit_intermediates: Include p, p~, p-bar, q and every Newton iterate
        annihilator_path:   Optional polynomial file overriding the annihilator
        decomposition_path: Optional decomposition document for ``verify``
    """

    command: str
    input_path: Path
    output_path: Optional[Path] = None
    exponent: Optional[int] = None
    emit_intermediates: bool = False
    annihilator_path: Optional[Path] = None
    decomposition_path: Optional[Path] = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigurationError(
                f"Unknown command '{self.command}'. Available: {', '.join(COMMANDS)}"
            )
        self.input_path = Path(self.input_path)
        if self.output_path is not None:
            self.output_path = Path(self.output_path)
        if self.annihilator_path is not None:
            self.annihilator_path = Path(self.annihilator_path)
        if self.decomposition_path is not None:
            self.decomposition_path = Path(self.decomposition_path)

        if self.command == "power":
            if self.exponent is None:
                raise ConfigurationError("power requires an exponent (-m/--exponent)")
            if self.exponent < 0:
                raise ConfigurationError(f"exponent must be non-negative, got {self.exponent}")


class ConfigManager:
    """
    Configuration manager with YAML file support and validation

    Examples:
        >>> config = ConfigManager()
        >>> config.get('decomposition.engine')
        'quotient'
    """

    DEFAULT_CONFIG: Dict[str, Any] = {
        "global": {
            "log_level": "WARNING",
        },
        "decomposition": {
            "engine": "quotient",
            "annihilator": "characteristic",
            "check_iterates": False,
        },
        "verification": {
            "parallel": False,
            "max_workers": 4,
        },
    }

    def __init__(self, config_file: Optional[Union[str, Path]] = None):
        """
        Initialise ConfigManager.

        Args:
            config_file: Path to a YAML file (optional). If omitted, only
                         DEFAULT_CONFIG is used.

        Raises:
            ConfigurationError: If the file is missing, cannot be parsed or
                                the merged config fails validation.
        """
        self.config_file = Path(config_file) if config_file else None
        self.config: Dict[str, Any] = copy.deepcopy(self.DEFAULT_CONFIG)

        if self.config_file:
            if not self.config_file.exists():
                raise ConfigurationError(f"Configuration file not found: {self.config_file}")
            self._load_yaml()
        else:
            logger.debug("No config file - using defaults")

        self.validate()

    # ------------------------------------------------------------------
    # Loading
    # ------------------------------------------------------------------

    def _load_yaml(self) -> None:
        """Parse YAML file and deep-merge into self.config."""
        assert self.config_file is not None  # nosec
        try:
            with open(self.config_file, "r", encoding="utf-8-sig") as fh:
                user_config = yaml.safe_load(fh)

            if user_config is None:
                logger.warning(f"Empty config file: {self.config_file}")
                return

            if not isinstance(user_config, dict):
                raise ConfigurationError(
                    f"Config file must be a dictionary, got {type(user_config).__name__}"
                )

            _deep_merge(self.config, user_config)
            logger.info(f"Configuration loaded from {self.config_file}")

        except UnicodeDecodeError as exc:
            raise ConfigurationError(
                f"Failed to read config file {self.config_file}: {exc}"
            ) from exc
        except yaml.YAMLError as exc:
            raise ConfigurationError(f"Failed to parse YAML: {self.config_file}: {exc}") from exc

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------

    def validate(self) -> None:
        """
        Validate the current configuration in full.

        Raises:
            ConfigurationError: On the first validation failure found.
        """
        self._validate_global()
        self._validate_decomposition()
        self._validate_verification()
        logger.debug("Configuration validation passed")

    def _section(self, name: str) -> Dict[str, Any]:
        section = self.config.get(name, {})
        if not isinstance(section, dict):
            raise ConfigurationError(f"Config section '{name}' must be a mapping")
        return section

    def _validate_global(self) -> None:
        level = str(self._section("global").get("log_level", "WARNING")).upper()
        if level not in LOG_LEVELS:
            raise ConfigurationError(
                f"global.log_level must be one of {list(LOG_LEVELS)}, got {level!r}"
            )

    def _validate_decomposition(self) -> None:
        section = self._section("decomposition")
        engine = section.get("engine")
        if engine not in ENGINES:
            raise ConfigurationError(
                f"decomposition.engine '{engine}' is not valid. Valid: {', '.join(ENGINES)}"
            )
        annihilator = section.get("annihilator")
        if annihilator not in ANNIHILATORS:
            raise ConfigurationError(
                f"decomposition.annihilator '{annihilator}' is not valid. "
                f"Valid: {', '.join(ANNIHILATORS)}"
            )
        if not isinstance(section.get("check_iterates"), bool):
            raise ConfigurationError("decomposition.check_iterates must be a boolean")

    def _validate_verification(self) -> None:
        section = self._section("verification")
        if not isinstance(section.get("parallel"), bool):
            raise ConfigurationError("verification.parallel must be a boolean")
        workers = section.get("max_workers")
        if isinstance(workers, bool) or not isinstance(workers, int) or workers < 1:
            raise ConfigurationError(
                f"verification.max_workers must be a positive integer, got {workers!r}"
            )

    # ------------------------------------------------------------------
    # Section accessors
    # ------------------------------------------------------------------

    def get_decomposition_options(self) -> Dict[str, Any]:
        """Keyword arguments for jordan_chevalley"""
        section = self.config["decomposition"]
        return {
            "engine": section["engine"],
            "annihilator_kind": section["annihilator"],
            "check_iterates": section["check_iterates"],
        }

    def get_verification_options(self) -> Dict[str, Any]:
        """Keyword arguments for verify_decomposition"""
        section = self.config["verification"]
        return {"parallel": section["parallel"], "max_workers": section["max_workers"]}

    @property
    def log_level(self) -> int:
        return cast(int, getattr(logging, str(self.config["global"]["log_level"]).upper()))

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a config value by dot-notation path.

        Examples:
            >>> config.get('decomposition.engine')     # 'quotient'
            >>> config.get('nonexistent.key', 42)      # 42
        """
        node: Any = self.config
        for part in key.split("."):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def __repr__(self) -> str:
        engine = self.config.get("decomposition", {}).get("engine", "unknown")
        return f"ConfigManager(engine={engine!r})"


def _deep_merge(base: Dict[str, Any], update: Dict[str, Any]) -> None:
    """Merge *update* into *base* in place; nested mappings merge key by key."""
    for key, value in update.items():
        if isinstance(base.get(key), dict) and isinstance(value, dict):
            _deep_merge(base[key], value)
        else:
            base[key] = value
