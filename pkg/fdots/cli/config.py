"""
CLI Configuration

Settings of a command-line run. Precedence: built-in defaults, then the YAML
file given with ``--config``, then command flags.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from fdots.core.errors import ConfigurationError
from fdots.core.model import AssociationModel
from fdots.utils.config_loader import ConfigLoader, load_config

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("text", "csv", "dot", "json-lines")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
CONFIG_SCHEMA = {
    "required": [],
    "optional": ["store", "cli", "generator", "metrics", "scaling", "logging"],
}


class CliConfig(BaseModel):
    """
    Resolved settings of one CLI invocation.

    Attributes:
        store_root: Registry store directory
        model: Association model override (the store manifest otherwise)
        seed: Seed for sampling and generation
        output_format: text, csv, dot or json-lines
        log_level: Level of the stderr log handler
        log_file: Optional log file
        sample_size: Query pairs sampled by ``metrics``
        ladder: Ecosystem sizes of ``scaling``
        generator: Default generator parameters of ``generate``
    """

    model_config = ConfigDict(extra="forbid", protected_namespaces=())

    store_root: Path = Path("fdo-store")
    model: Optional[AssociationModel] = None
    seed: int = 0
    output_format: Literal["text", "csv", "dot", "json-lines"] = "text"
    log_level: str = "WARNING"
    log_file: Optional[Path] = None
    sample_size: int = Field(default=100, ge=1)
    ladder: List[int] = Field(default_factory=lambda: [10, 100, 1000, 10000])
    generator: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("model", mode="before")
    @classmethod
    def _parse_model(cls, value: Any) -> Optional[AssociationModel]:
        if value is None or value == "":
            return None
        return AssociationModel.parse(value)

    @field_validator("log_level", mode="before")
    @classmethod
    def _parse_level(cls, value: Any) -> str:
        level = str(value).upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log level must be one of {list(LOG_LEVELS)}, got {value!r}")
        return level

    @field_validator("ladder", mode="before")
    @classmethod
    def _parse_ladder(cls, value: Any) -> List[int]:
        if isinstance(value, str):
            value = [part for part in value.split(",") if part.strip()]
        sizes = [int(v) for v in value]
        if not sizes or any(size < 1 for size in sizes):
            raise ValueError(f"ladder needs positive sizes, got {value!r}")
        return sizes


def _from_yaml(data: Dict[str, Any]) -> Dict[str, Any]:
    """Flatten the sections of ``fdots_config.yaml`` into CliConfig fields."""
    values: Dict[str, Any] = {}
    store = data.get("store") or {}
    if "root" in store:
        values["store_root"] = store["root"]
    if "model" in store:
        values["model"] = store["model"]
    values.update(data.get("cli") or {})
    metrics = data.get("metrics") or {}
    if "sample_size" in metrics:
        values["sample_size"] = metrics["sample_size"]
    scaling = data.get("scaling") or {}
    if "ladder" in scaling:
        values["ladder"] = scaling["ladder"]
    logging_section = data.get("logging") or {}
    if "level" in logging_section:
        values["log_level"] = logging_section["level"]
    if "file" in logging_section:
        values["log_file"] = logging_section["file"]
    if data.get("generator"):
        values["generator"] = data["generator"]
    return values


def load_cli_config(
    config_path: Optional[Union[str, Path]] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> CliConfig:
    """
    Build the CLI configuration.

    Args:
        config_path: YAML file in the layout of ``configs/fdots_config.yaml``
        overrides: Flag values; ``None`` entries are ignored

    Raises:
        ConfigurationError: If the file cannot be read or a value is invalid
    """
    loader = ConfigLoader()
    values: Dict[str, Any] = {}
    if config_path is not None:
        data = load_config(config_path)
        loader.validate(data, CONFIG_SCHEMA)
        values = _from_yaml(data)
    flags = {k: v for k, v in (overrides or {}).items() if v is not None}
    values = loader.merge_configs(values, flags)
    try:
        config = CliConfig(**values)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid CLI configuration: {e}") from e
    logger.debug(f"CLI configuration: {config.model_dump()}")
    return config
