"""
Engine Factory

Registry of association strategies keyed by association model.
"""

import logging
from typing import Dict, List, Optional, Type, Union

from fdots.core.errors import ModelUnsetError
from fdots.core.model import AssociationModel, Ecosystem
from fdots.engines.attribute import AttributeEngine
from fdots.engines.base import AssociationEngine, StepCounter
from fdots.engines.profile import ProfileEngine
from fdots.engines.record import RecordEngine

logger = logging.getLogger(__name__)


class EngineFactory:
    """
    Creates the engine matching an ecosystem's association model.

    Additional strategies can be registered at runtime with
    ``register_engine``.
    """

    _engines: Dict[AssociationModel, Type[AssociationEngine]] = {
        AssociationModel.RECORD: RecordEngine,
        AssociationModel.PROFILE: ProfileEngine,
        AssociationModel.ATTRIBUTE: AttributeEngine,
    }

    @classmethod
    def create_engine(
        cls,
        ecosystem: Ecosystem,
        use_index: bool = True,
        match_values: bool = True,
        model: Optional[Union[str, AssociationModel]] = None,
        step_counter: Optional[StepCounter] = None,
    ) -> AssociationEngine:
        """
        Create an engine for ``ecosystem``.

        Args:
            ecosystem: Ecosystem snapshot
            use_index: Build the query index at construction
            match_values: Key-value matching (attribute typing only)
            model: Override the ecosystem's model
            step_counter: Default step counter

        Raises:
            ModelUnsetError: If no model is given and the ecosystem has none
        """
        model = AssociationModel.parse(model) if model else ecosystem.model
        if model is None:
            raise ModelUnsetError("Cannot create an engine for an ecosystem without a model")
        engine_class = cls._engines[model]
        kwargs = {"use_index": use_index, "step_counter": step_counter}
        if issubclass(engine_class, AttributeEngine):
            kwargs["match_values"] = match_values
        engine = engine_class(ecosystem, **kwargs)
        logger.debug(f"Created {engine!r}")
        return engine

    @classmethod
    def register_engine(
        cls, model: Union[str, AssociationModel], engine_class: Type[AssociationEngine]
    ) -> None:
        cls._engines[AssociationModel.parse(model)] = engine_class

    @classmethod
    def registered_models(cls) -> List[str]:
        return [model.value for model in cls._engines]


def create_engine(
    ecosystem: Ecosystem,
    use_index: bool = True,
    match_values: bool = True,
    model: Optional[Union[str, AssociationModel]] = None,
    step_counter: Optional[StepCounter] = None,
) -> AssociationEngine:
    """Convenience wrapper around ``EngineFactory.create_engine``."""
    return EngineFactory.create_engine(ecosystem, use_index, match_values, model, step_counter)


def register_engine(model: Union[str, AssociationModel], engine_class: Type[AssociationEngine]) -> None:
    EngineFactory.register_engine(model, engine_class)
