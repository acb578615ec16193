"""
Record Validation Module

Checks information records against their profile and the registered attribute
definitions, and checks whole ecosystems for referential integrity.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Protocol

from fdots.core.errors import UnresolvedProfileError
from fdots.core.model import (
    AttributeDefinition,
    AssociationModel,
    Component,
    Ecosystem,
    InformationRecord,
    OPERATION_REF_KEY,
    OperationSpec,
    PROFILE_REF_KEY,
    Profile,
    RecordKind,
    RestrictionKind,
)
from fdots.core.pid import Pid

logger = logging.getLogger(__name__)


class ViolationKind(Enum):
    MISSING_MANDATORY = "missing-mandatory"
    UNREGISTERED_KEY = "unregistered-key"
    RESTRICTED_VALUE = "restricted-value"
    MISSING_PROFILE = "missing-profile"
    MULTIPLE_PROFILES = "multiple-profiles"
    DANGLING_REFERENCE = "dangling-reference"
    MODEL_FIELD = "model-field"
    DUPLICATE_PID = "duplicate-pid"
    DUPLICATE_KEY = "duplicate-key"


@dataclass(frozen=True, order=True)
class Violation:
    """One validation failure."""

    kind: str
    pid: str
    key: str = ""
    detail: str = ""

    def __str__(self) -> str:
        where = f"({self.key})" if self.key else ""
        suffix = f": {self.detail}" if self.detail else ""
        return f"{self.kind}{where}{suffix}"


class EcosystemView(Protocol):
    """Read access needed by validation; implemented by Ecosystem and RegistryStore."""

    def definition_for_key(self, key: str) -> Optional[AttributeDefinition]:
        ...

    def profile(self, pid: Pid) -> Optional[Profile]:
        ...

    def kind_of(self, pid: Pid) -> Optional[str]:
        ...


def _check_value(
    record_pid: Pid,
    key: str,
    value: str,
    definition: AttributeDefinition,
    view: EcosystemView,
) -> Optional[Violation]:
    restriction = definition.restriction
    if restriction.kind is RestrictionKind.ENUM and value not in restriction.allowed:
        return Violation(
            ViolationKind.RESTRICTED_VALUE.value,
            str(record_pid),
            key,
            f"'{value}' not in {sorted(restriction.allowed)}",
        )
    if restriction.kind is RestrictionKind.REFERENCE:
        try:
            target = Pid(value)
        except ValueError:
            return Violation(
                ViolationKind.RESTRICTED_VALUE.value, str(record_pid), key,
                f"'{value}' is not a PID",
            )
        actual = view.kind_of(target)
        if actual is None:
            return Violation(
                ViolationKind.DANGLING_REFERENCE.value, str(record_pid), key,
                f"'{value}' does not resolve",
            )
        if restriction.target is not None and actual != restriction.target.value:
            return Violation(
                ViolationKind.RESTRICTED_VALUE.value, str(record_pid), key,
                f"'{value}' is a {actual}, expected {restriction.target.value}",
            )
    return None


def validate_record(record: InformationRecord, ecosystem: EcosystemView) -> List[Violation]:
    """
    Validate an information record.

    Args:
        record: Record to check
        ecosystem: Ecosystem (or store) providing definitions and profiles

    Returns:
        Sorted list of violations; empty iff the record conforms.
        The result does not depend on attribute order.

    Raises:
        UnresolvedProfileError: If a data FDO names a profile that does not resolve
    """
    violations: List[Violation] = []
    pid = str(record.pid)

    for attribute in record.attributes:
        definition = ecosystem.definition_for_key(attribute.key)
        if definition is None:
            violations.append(
                Violation(ViolationKind.UNREGISTERED_KEY.value, pid, attribute.key)
            )
            continue
        problem = _check_value(record.pid, attribute.key, attribute.value, definition, ecosystem)
        if problem is not None:
            violations.append(problem)

    if record.kind is RecordKind.DATA_FDO:
        profile_refs = record.values_for(PROFILE_REF_KEY)
        if not profile_refs:
            violations.append(Violation(ViolationKind.MISSING_PROFILE.value, pid, PROFILE_REF_KEY))
        else:
            if len(profile_refs) > 1:
                violations.append(
                    Violation(
                        ViolationKind.MULTIPLE_PROFILES.value, pid, PROFILE_REF_KEY,
                        f"{len(profile_refs)} profile references",
                    )
                )
            profile = None
            try:
                profile = ecosystem.profile(Pid(profile_refs[0]))
            except ValueError:
                pass
            if profile is None:
                raise UnresolvedProfileError(
                    f"Record {pid} references unresolved profile '{profile_refs[0]}'",
                    pid=pid,
                )
            present = set(record.keys())
            for key in profile.mandatory_keys - present:
                violations.append(Violation(ViolationKind.MISSING_MANDATORY.value, pid, key))

    violations.sort()
    if violations:
        logger.debug(f"Record {pid}: {len(violations)} violation(s)")
    return violations


def validate_operation(operation: OperationSpec, ecosystem: EcosystemView) -> List[Violation]:
    """Every required input must name a registered attribute definition."""
    violations = [
        Violation(ViolationKind.UNREGISTERED_KEY.value, str(operation.pid), req.key)
        for req in operation.required_inputs
        if ecosystem.definition_for_key(req.key) is None
    ]
    return sorted(violations)


def validate_profile(profile: Profile, ecosystem: EcosystemView) -> List[Violation]:
    """Profile keys must be registered and operation list entries must be operations."""
    pid = str(profile.pid)
    violations = [
        Violation(ViolationKind.UNREGISTERED_KEY.value, pid, key)
        for key in profile.mandatory_keys | profile.optional_keys
        if ecosystem.definition_for_key(key) is None
    ]
    for op in profile.operation_list:
        actual = ecosystem.kind_of(op)
        if actual != RecordKind.OPERATION_FDO.value:
            violations.append(
                Violation(
                    ViolationKind.DANGLING_REFERENCE.value, pid, str(op),
                    "operation list entry is not an operation FDO",
                )
            )
    return sorted(violations)


def validate_component(component: Component, ecosystem: EcosystemView) -> List[Violation]:
    """Dispatch to the validator matching the component type."""
    if isinstance(component, InformationRecord):
        return validate_record(component, ecosystem)
    if isinstance(component, OperationSpec):
        return validate_operation(component, ecosystem)
    if isinstance(component, Profile):
        return validate_profile(component, ecosystem)
    return []


def check_integrity(ecosystem: Ecosystem) -> List[Violation]:
    """
    Check a whole ecosystem.

    Covers record validation, referential integrity, duplicate definition keys,
    PIDs bound twice across component sets, and model-specific field population:
    fields belonging to another association model must be empty.
    """
    violations: List[Violation] = []

    seen = {}
    for component in ecosystem.components():
        if component.pid in seen:
            violations.append(Violation(ViolationKind.DUPLICATE_PID.value, str(component.pid)))
        seen[component.pid] = component

    keys = {}
    for definition in ecosystem.attribute_defs.values():
        if definition.key in keys:
            violations.append(
                Violation(ViolationKind.DUPLICATE_KEY.value, str(definition.pid), definition.key)
            )
        keys[definition.key] = definition.pid

    for record in ecosystem.records.values():
        try:
            violations.extend(validate_record(record, ecosystem))
        except UnresolvedProfileError as e:
            violations.append(
                Violation(ViolationKind.DANGLING_REFERENCE.value, str(record.pid), PROFILE_REF_KEY, str(e))
            )
    for operation in ecosystem.operations.values():
        violations.extend(validate_operation(operation, ecosystem))
    for profile in ecosystem.profiles.values():
        violations.extend(validate_profile(profile, ecosystem))

    model = ecosystem.model
    if model is not None:
        if model is not AssociationModel.RECORD:
            for record in ecosystem.records.values():
                if record.operation_refs:
                    violations.append(
                        Violation(
                            ViolationKind.MODEL_FIELD.value, str(record.pid), OPERATION_REF_KEY,
                            "operation references are only used under record typing",
                        )
                    )
        if model is not AssociationModel.PROFILE:
            for profile in ecosystem.profiles.values():
                if profile.operation_list:
                    violations.append(
                        Violation(
                            ViolationKind.MODEL_FIELD.value, str(profile.pid), "operation_list",
                            "operation lists are only used under profile typing",
                        )
                    )
        if model is not AssociationModel.ATTRIBUTE:
            for operation in ecosystem.operations.values():
                if operation.required_inputs:
                    violations.append(
                        Violation(
                            ViolationKind.MODEL_FIELD.value, str(operation.pid), "required_inputs",
                            "required inputs are only used under attribute typing",
                        )
                    )

    return sorted(set(violations))
