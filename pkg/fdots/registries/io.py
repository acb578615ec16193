"""
Ecosystem persistence: dump an Ecosystem into a store directory and load it back.
"""

import logging
from pathlib import Path
from typing import Union

from fdots.core.errors import ConfigurationError, ModelUnsetError
from fdots.core.model import Ecosystem
from fdots.registries.codec import Namespace
from fdots.registries.store import MANIFEST_NAME, WRITE_LOG_NAME, RegistryStore

logger = logging.getLogger(__name__)


def load_ecosystem(root_path: Union[str, Path]) -> Ecosystem:
    """
    Load the ecosystem stored under ``root_path``.

    Raises:
        ModelUnsetError: If the directory holds no store manifest with a model
    """
    store = RegistryStore(root_path)
    if store.model is None:
        raise ModelUnsetError(f"No association model recorded under {root_path}")
    ecosystem = store.snapshot()
    logger.info(f"Loaded {ecosystem!r} from {root_path}")
    return ecosystem


def dump_ecosystem(
    ecosystem: Ecosystem,
    root_path: Union[str, Path],
    overwrite: bool = False,
    validate: bool = True,
) -> RegistryStore:
    """
    Register every component of ``ecosystem`` in a fresh store at ``root_path``.

    Components are registered definitions first, then operations, profiles and
    data FDOs, so references always point backwards. The write log grows by
    exactly the number of components.

    Args:
        ecosystem: Ecosystem to persist
        root_path: Target directory
        overwrite: Clear an existing store first
        validate: Validate each component while registering

    Returns:
        RegistryStore: The populated store

    Raises:
        ModelUnsetError: If the ecosystem has no model
        ConfigurationError: If the directory already holds a store and
            ``overwrite`` is False
    """
    if ecosystem.model is None:
        raise ModelUnsetError("Cannot dump an ecosystem without an association model")

    root = Path(root_path)
    existing = [root / ns.filename for ns in Namespace] + [root / MANIFEST_NAME, root / WRITE_LOG_NAME]
    if any(path.exists() for path in existing):
        if not overwrite:
            raise ConfigurationError(f"{root} already holds a store; pass overwrite=True to replace it")
        for path in existing:
            if path.exists():
                path.unlink()

    store = RegistryStore(root, model=ecosystem.model)
    for component in ecosystem.components():
        store.register(component, validate=validate)
    logger.info(f"Dumped {ecosystem!r} to {root}")
    return store
