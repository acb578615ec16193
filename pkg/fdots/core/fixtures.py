"""
Reference Fixtures

Predefined ecosystems: four data FDOs and five operations expressing the same
association relation under each of the three association models::

    f1 -> o1, o2, o3
    f2 -> o3
    f3 -> o3
    f4 -> o5
    o4 is associated with no FDO
"""

from typing import Callable, Dict, List, Tuple, Union

from fdots.core.model import (
    AssociationModel,
    AttributeDefinition,
    Ecosystem,
    InformationRecord,
    OPERATION_LIST_KEY,
    OPERATION_REF_KEY,
    OperationSpec,
    PROFILE_REF_KEY,
    Profile,
    RecordKind,
    REQUIRED_INPUT_KEY,
    RequiredInput,
    ValueRestriction,
)
from fdots.core.pid import Pid

REFERENCE_PREFIX = "21.T"

REFERENCE_RELATION: Tuple[Tuple[str, str], ...] = (
    ("f1", "o1"),
    ("f1", "o2"),
    ("f1", "o3"),
    ("f2", "o3"),
    ("f3", "o3"),
    ("f4", "o5"),
)

_EXECUTORS = {
    "o1": "exec:open-catalog",
    "o2": "exec:read-catalog",
    "o3": "exec:validate-schema",
    "o4": "exec:lift-embargo",
    "o5": "exec:evaluate-license",
}


def definition_pid(prefix: str, key: str) -> Pid:
    """Stable PID for the definition of ``key``."""
    return Pid(f"{prefix}/def-{key}")


def standard_definitions(
    model: Union[str, AssociationModel], prefix: str = REFERENCE_PREFIX
) -> List[AttributeDefinition]:
    """
    Reserved attribute definitions an ecosystem of ``model`` needs.

    Every model uses the profile reference. Record typing adds the operation
    reference, profile typing the operation list, attribute typing the
    required-input key.
    """
    model = AssociationModel.parse(model)
    definitions = [
        AttributeDefinition(
            definition_pid(prefix, PROFILE_REF_KEY),
            PROFILE_REF_KEY,
            ValueRestriction.reference(RecordKind.PROFILE),
        )
    ]
    if model is AssociationModel.RECORD:
        definitions.append(
            AttributeDefinition(
                definition_pid(prefix, OPERATION_REF_KEY),
                OPERATION_REF_KEY,
                ValueRestriction.reference(RecordKind.OPERATION_FDO),
            )
        )
    elif model is AssociationModel.PROFILE:
        definitions.append(
            AttributeDefinition(definition_pid(prefix, OPERATION_LIST_KEY), OPERATION_LIST_KEY)
        )
    else:
        definitions.append(
            AttributeDefinition(definition_pid(prefix, REQUIRED_INPUT_KEY), REQUIRED_INPUT_KEY)
        )
    return definitions


def _pid(name: str) -> Pid:
    return Pid(f"{REFERENCE_PREFIX}/{name}")


def _title_definition() -> AttributeDefinition:
    return AttributeDefinition(definition_pid(REFERENCE_PREFIX, "title"), "title")


def _operations(inputs: Dict[str, List[RequiredInput]] = None) -> List[OperationSpec]:
    inputs = inputs or {}
    return [
        OperationSpec(_pid(name), tuple(inputs.get(name, ())), executor)
        for name, executor in _EXECUTORS.items()
    ]


def create_record_fixture() -> Ecosystem:
    """Reference ecosystem under record typing: operation refs in FDO records."""
    generic = Profile(_pid("p0"), mandatory_keys={"title"})
    ops_by_fdo: Dict[str, List[str]] = {}
    for fdo, op in REFERENCE_RELATION:
        ops_by_fdo.setdefault(fdo, []).append(op)

    records = [
        InformationRecord.data_fdo(
            _pid(fdo),
            generic.pid,
            [("title", f"Climate simulation {fdo}")],
            operations=[_pid(op) for op in ops],
        )
        for fdo, ops in ops_by_fdo.items()
    ]
    return Ecosystem.from_components(
        AssociationModel.RECORD,
        [*standard_definitions(AssociationModel.RECORD), _title_definition(),
         *_operations(), generic, *records],
    )


def create_profile_fixture() -> Ecosystem:
    """Reference ecosystem under profile typing: three profiles carry the operation lists."""
    profiles = [
        Profile(_pid("p1"), mandatory_keys={"title"}, operation_list=[_pid("o1"), _pid("o2"), _pid("o3")]),
        Profile(_pid("p2"), mandatory_keys={"title"}, operation_list=[_pid("o3")]),
        Profile(_pid("p3"), mandatory_keys={"title"}, operation_list=[_pid("o5")]),
    ]
    assignment = {"f1": "p1", "f2": "p2", "f3": "p2", "f4": "p3"}
    records = [
        InformationRecord.data_fdo(_pid(fdo), _pid(profile), [("title", f"Climate simulation {fdo}")])
        for fdo, profile in assignment.items()
    ]
    return Ecosystem.from_components(
        AssociationModel.PROFILE,
        [*standard_definitions(AssociationModel.PROFILE), _title_definition(),
         *_operations(), *profiles, *records],
    )


def create_attribute_fixture() -> Ecosystem:
    """Reference ecosystem under attribute typing: operations declare required inputs."""
    domain_keys = {
        "checksum": ValueRestriction.any(),
        "license": ValueRestriction.enum({"CC-BY-4.0", "CC0-1.0", "MIT"}),
        "content-type": ValueRestriction.enum({"text/csv", "application/json", "image/tiff"}),
        "spatial-coverage": ValueRestriction.any(),
        "embargo-date": ValueRestriction.any(),
    }
    definitions = [
        AttributeDefinition(definition_pid(REFERENCE_PREFIX, key), key, restriction)
        for key, restriction in domain_keys.items()
    ]
    generic = Profile(
        _pid("p0"), mandatory_keys={"title"}, optional_keys=set(domain_keys)
    )
    inputs = {
        "o1": [RequiredInput("checksum")],
        "o2": [RequiredInput("license")],
        "o3": [RequiredInput("content-type")],
        "o4": [RequiredInput("embargo-date")],
        "o5": [RequiredInput("spatial-coverage")],
    }
    layouts = {
        "f1": [("checksum", "sha256:9f2c"), ("license", "CC-BY-4.0"), ("content-type", "text/csv")],
        "f2": [("content-type", "application/json")],
        "f3": [("content-type", "text/csv")],
        "f4": [("spatial-coverage", "EU-CORDEX")],
    }
    records = [
        InformationRecord.data_fdo(
            _pid(fdo), generic.pid, [("title", f"Climate simulation {fdo}"), *pairs]
        )
        for fdo, pairs in layouts.items()
    ]
    return Ecosystem.from_components(
        AssociationModel.ATTRIBUTE,
        [*standard_definitions(AssociationModel.ATTRIBUTE), _title_definition(), *definitions,
         *_operations(inputs), generic, *records],
    )


REFERENCE_FIXTURES: Dict[str, Callable[[], Ecosystem]] = {
    AssociationModel.RECORD.value: create_record_fixture,
    AssociationModel.PROFILE.value: create_profile_fixture,
    AssociationModel.ATTRIBUTE.value: create_attribute_fixture,
}


def get_reference_fixture(model: Union[str, AssociationModel]) -> Ecosystem:
    """Reference ecosystem for ``model``."""
    return REFERENCE_FIXTURES[AssociationModel.parse(model).value]()


def list_reference_fixtures() -> List[str]:
    return list(REFERENCE_FIXTURES)


def reference_relation() -> set:
    """The reference association relation as a set of (fdo Pid, op Pid) pairs."""
    return {(_pid(fdo), _pid(op)) for fdo, op in REFERENCE_RELATION}
