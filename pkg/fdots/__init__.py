"""
fdots - FDO Type System

Record, profile and attribute typing for associating FAIR Digital Objects
with operations, with a local registry store, graph models, cost metrics and
conversions between the three association models.
"""

__version__ = "0.3.0"
__author__ = "fdots maintainers"
__license__ = "Apache 2.0"

# Core model
from fdots.core import (
    AssociationModel,
    AttributeDefinition,
    Ecosystem,
    FdoError,
    InformationRecord,
    OperationSpec,
    Pid,
    PidMinter,
    Profile,
    RequiredInput,
    check_integrity,
    get_reference_fixture,
    list_reference_fixtures,
    mint_pid,
)

# Registries
from fdots.registries import RegistryStore, dump_ecosystem, load_ecosystem

# Engines
from fdots.engines import StepCounter, UpdateReport, create_engine

# Graph models
from fdots.graph import AssociationGraph, build_graph, export_graph

# Metrics
from fdots.metrics import (
    GeneratorParams,
    MetricsReport,
    compare_models,
    count_attributes,
    count_components,
    evaluate,
    generate_ecosystem,
    measure_query_costs,
    measure_update_costs,
    scaling_report,
)

# Interoperability
from fdots.interop import ModelMapping, check_consistency, convert

# Utils
from fdots.utils import ConfigLoader, setup_logger

__all__ = [
    # Metadata
    "__version__",
    "__author__",
    "__license__",
    # Core
    "AssociationModel",
    "AttributeDefinition",
    "Ecosystem",
    "FdoError",
    "InformationRecord",
    "OperationSpec",
    "Pid",
    "PidMinter",
    "Profile",
    "RequiredInput",
    "check_integrity",
    "get_reference_fixture",
    "list_reference_fixtures",
    "mint_pid",
    # Registries
    "RegistryStore",
    "dump_ecosystem",
    "load_ecosystem",
    # Engines
    "StepCounter",
    "UpdateReport",
    "create_engine",
    # Graph
    "AssociationGraph",
    "build_graph",
    "export_graph",
    # Metrics
    "GeneratorParams",
    "MetricsReport",
    "compare_models",
    "count_attributes",
    "count_components",
    "evaluate",
    "generate_ecosystem",
    "measure_query_costs",
    "measure_update_costs",
    "scaling_report",
    # Interop
    "ModelMapping",
    "check_consistency",
    "convert",
    # Utils
    "ConfigLoader",
    "setup_logger",
]
