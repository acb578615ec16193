"""Association engines: record, profile and attribute typing behind one interface."""

from fdots.engines.attribute import AttributeEngine
from fdots.engines.base import AssociationEngine, Measurement, StepCounter, UpdateReport
from fdots.engines.factory import EngineFactory, create_engine, register_engine
from fdots.engines.index import QueryIndex
from fdots.engines.profile import ProfileEngine
from fdots.engines.record import RecordEngine, insert_operation_ref

__all__ = [
    "AssociationEngine",
    "AttributeEngine",
    "EngineFactory",
    "Measurement",
    "ProfileEngine",
    "QueryIndex",
    "RecordEngine",
    "StepCounter",
    "UpdateReport",
    "create_engine",
    "insert_operation_ref",
    "register_engine",
]
