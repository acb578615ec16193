"""
Configuration Loader Module

YAML configuration with ``${VAR}`` / ``${VAR:default}`` environment substitution.
"""

import logging
import os
import re
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from fdots.core.errors import ConfigurationError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "configs" / "fdots_config.yaml"


class ConfigLoader:
    """
    Load, merge, validate and save YAML configuration files.

    Example:
        >>> loader = ConfigLoader()
        >>> config = loader.load("configs/fdots_config.yaml")
        >>> config["cli"]["seed"]
        0
    """

    ENV_VAR_PATTERN = re.compile(r"\$\{([^}:]+)(?::([^}]*))?\}")

    def __init__(self, base_path: Optional[Union[str, Path]] = None):
        self.base_path = Path(base_path) if base_path else Path.cwd()

    def _resolve(self, config_path: Union[str, Path]) -> Path:
        path = Path(config_path)
        return path if path.is_absolute() else self.base_path / path

    def load(self, config_path: Union[str, Path]) -> Dict[str, Any]:
        """
        Load a YAML file and substitute environment variables.

        Raises:
            ConfigurationError: If the file is missing, unparsable, or not a mapping
        """
        config_file = self._resolve(config_path)
        if not config_file.exists():
            raise ConfigurationError(f"Configuration file not found: {config_file}")

        logger.debug(f"Loading configuration from: {config_file}")
        try:
            with open(config_file, "r", encoding="utf-8") as f:
                config = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Failed to parse {config_file}: {e}") from e

        if config is None:
            return {}
        if not isinstance(config, dict):
            raise ConfigurationError(f"{config_file} must contain a mapping at top level")
        return self._substitute_env_vars(config)

    def _substitute_env_vars(self, obj: Any) -> Any:
        if isinstance(obj, dict):
            return {k: self._substitute_env_vars(v) for k, v in obj.items()}
        if isinstance(obj, list):
            return [self._substitute_env_vars(item) for item in obj]
        if isinstance(obj, str) and self.ENV_VAR_PATTERN.search(obj):
            return self._substitute_env_var_in_string(obj)
        return obj

    def _substitute_env_var_in_string(self, text: str) -> Any:
        def replacer(match):
            var_name, default_value = match.group(1), match.group(2)
            value = os.getenv(var_name)
            if value is not None:
                return value
            if default_value is not None:
                return default_value
            logger.warning(f"Environment variable ${{{var_name}}} not set and no default provided")
            return match.group(0)

        return self._convert_type(self.ENV_VAR_PATTERN.sub(replacer, text))

    @staticmethod
    def _convert_type(value: str) -> Any:
        lowered = value.lower()
        if lowered in ("true", "yes", "on"):
            return True
        if lowered in ("false", "no", "off"):
            return False
        try:
            return int(value) if "." not in value else float(value)
        except ValueError:
            return value

    def merge_configs(self, base_config: Dict, override_config: Dict) -> Dict:
        """Deep-merge ``override_config`` into a copy of ``base_config``."""
        result = dict(base_config)
        for key, value in override_config.items():
            if isinstance(result.get(key), dict) and isinstance(value, dict):
                result[key] = self.merge_configs(result[key], value)
            else:
                result[key] = value
        return result

    def save(self, config: Dict, output_path: Union[str, Path]) -> Path:
        output_file = self._resolve(output_path)
        output_file.parent.mkdir(parents=True, exist_ok=True)
        with open(output_file, "w", encoding="utf-8") as f:
            yaml.safe_dump(config, f, default_flow_style=False, sort_keys=False)
        logger.info(f"Configuration saved to {output_file}")
        return output_file

    def validate(self, config: Dict, schema: Dict) -> bool:
        """
        Check ``config`` against ``{'required': [...], 'optional': [...]}``.

        Raises:
            ConfigurationError: If a required key is missing
        """
        required = list(schema.get("required", []))
        known = set(required) | set(schema.get("optional", []))
        missing = [key for key in required if key not in config]
        if missing:
            raise ConfigurationError(f"Required configuration keys missing: {missing}")
        for key in config:
            if key not in known:
                logger.warning(f"Unknown configuration key: {key}")
        return True


def load_config(
    config_path: Optional[Union[str, Path]] = None, base_path: Optional[Path] = None
) -> Dict[str, Any]:
    """Load ``config_path``, or the packaged default configuration when omitted."""
    loader = ConfigLoader(base_path=base_path)
    if config_path is None:
        if not DEFAULT_CONFIG_PATH.exists():
            return {}
        config_path = DEFAULT_CONFIG_PATH
    return loader.load(config_path)
