"""Core domain model: PIDs, records, profiles, operations, ecosystems."""

from fdots.core.errors import (
    CodecError,
    ConfigurationError,
    DanglingReferenceError,
    DuplicatePidError,
    EmptySampleError,
    FdoError,
    InvalidPidError,
    InvalidPrefixError,
    KindMismatchError,
    ModelMismatchError,
    ModelUnsetError,
    NotFoundError,
    UnexpressibleTargetSetError,
    UnknownPidError,
    UnresolvedProfileError,
    ValidationFailedError,
)
from fdots.core.fixtures import (
    REFERENCE_FIXTURES,
    create_attribute_fixture,
    create_profile_fixture,
    create_record_fixture,
    get_reference_fixture,
    list_reference_fixtures,
    reference_relation,
    standard_definitions,
)
from fdots.core.model import (
    OPERATION_LIST_KEY,
    OPERATION_REF_KEY,
    PROFILE_REF_KEY,
    REQUIRED_INPUT_KEY,
    AssociationModel,
    Attribute,
    AttributeDefinition,
    Component,
    Ecosystem,
    InformationRecord,
    OperationSpec,
    Profile,
    RecordKind,
    RequiredInput,
    RestrictionKind,
    ValueRestriction,
)
from fdots.core.pid import Pid, PidMinter, mint_pid
from fdots.core.validation import (
    Violation,
    ViolationKind,
    check_integrity,
    validate_component,
    validate_record,
)

__all__ = [
    "AssociationModel",
    "Attribute",
    "AttributeDefinition",
    "CodecError",
    "Component",
    "ConfigurationError",
    "DanglingReferenceError",
    "DuplicatePidError",
    "Ecosystem",
    "EmptySampleError",
    "FdoError",
    "InformationRecord",
    "InvalidPidError",
    "InvalidPrefixError",
    "KindMismatchError",
    "ModelMismatchError",
    "ModelUnsetError",
    "NotFoundError",
    "OPERATION_LIST_KEY",
    "OPERATION_REF_KEY",
    "OperationSpec",
    "PROFILE_REF_KEY",
    "Pid",
    "PidMinter",
    "Profile",
    "REFERENCE_FIXTURES",
    "REQUIRED_INPUT_KEY",
    "RecordKind",
    "RequiredInput",
    "RestrictionKind",
    "UnexpressibleTargetSetError",
    "UnknownPidError",
    "UnresolvedProfileError",
    "ValidationFailedError",
    "ValueRestriction",
    "Violation",
    "ViolationKind",
    "check_integrity",
    "create_attribute_fixture",
    "create_profile_fixture",
    "create_record_fixture",
    "get_reference_fixture",
    "list_reference_fixtures",
    "mint_pid",
    "reference_relation",
    "standard_definitions",
    "validate_component",
    "validate_record",
]
