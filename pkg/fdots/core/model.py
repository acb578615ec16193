"""
Core Domain Model

Value types for the FDO core model: attribute definitions, attributes,
information records, profiles, operations, and the ecosystem that holds them.

All types are immutable after construction. ``Ecosystem`` mutators return a new
snapshot (copy-on-write) and leave the receiver untouched.
"""

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

from fdots.core.pid import Pid

# Reserved attribute keys used by the association mechanisms
OPERATION_REF_KEY = "fdo-operation-ref"
PROFILE_REF_KEY = "fdo-profile-ref"
OPERATION_LIST_KEY = "fdo-operation-list"
REQUIRED_INPUT_KEY = "fdo-required-input"

RESERVED_KEYS = frozenset(
    {OPERATION_REF_KEY, PROFILE_REF_KEY, OPERATION_LIST_KEY, REQUIRED_INPUT_KEY}
)

LIST_SEPARATOR = "|"

KEY_PATTERN = re.compile(r"^[A-Za-z0-9._:-]+$")


class AssociationModel(Enum):
    """The three typing mechanisms associating FDOs with operations."""
    RECORD = "record"
    PROFILE = "profile"
    ATTRIBUTE = "attribute"

    @classmethod
    def parse(cls, value: Union[str, "AssociationModel"]) -> "AssociationModel":
        if isinstance(value, AssociationModel):
            return value
        try:
            return cls(value)
        except ValueError:
            raise ValueError(
                f"Unknown association model '{value}'. "
                f"Valid models: {[m.value for m in cls]}"
            ) from None


class RecordKind(Enum):
    """Kinds of information records."""
    DATA_FDO = "data-fdo"
    OPERATION_FDO = "operation-fdo"
    PROFILE = "profile"


class RestrictionKind(Enum):
    ANY = "any"
    ENUM = "enum"
    REFERENCE = "reference"


def validate_key(key: str) -> str:
    """Raise ValueError unless ``key`` is a legal attribute key."""
    if not isinstance(key, str) or not KEY_PATTERN.match(key):
        raise ValueError(f"Attribute key {key!r} must match {KEY_PATTERN.pattern}")
    return key


@dataclass(frozen=True)
class ValueRestriction:
    """
    Restriction on attribute values carried by an attribute definition.

    Attributes:
        kind: any, enum, or reference
        allowed: Permitted values (enum only)
        target: Record kind the value must resolve to (reference only);
            None accepts a reference to any component
    """

    kind: RestrictionKind = RestrictionKind.ANY
    allowed: FrozenSet[str] = frozenset()
    target: Optional[RecordKind] = None

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", RestrictionKind(self.kind))
        if isinstance(self.target, str):
            object.__setattr__(self, "target", RecordKind(self.target))
        object.__setattr__(self, "allowed", frozenset(self.allowed))
        if self.kind is RestrictionKind.ENUM and not self.allowed:
            raise ValueError("Enumerated restriction needs at least one allowed value")
        if self.kind is not RestrictionKind.ENUM and self.allowed:
            raise ValueError("Only enumerated restrictions carry allowed values")
        if self.kind is not RestrictionKind.REFERENCE and self.target is not None:
            raise ValueError("Only reference restrictions carry a target kind")

    @classmethod
    def any(cls) -> "ValueRestriction":
        return cls()

    @classmethod
    def enum(cls, values: Iterable[str]) -> "ValueRestriction":
        return cls(kind=RestrictionKind.ENUM, allowed=frozenset(values))

    @classmethod
    def reference(cls, target: Optional[RecordKind] = None) -> "ValueRestriction":
        return cls(kind=RestrictionKind.REFERENCE, target=target)


@dataclass(frozen=True)
class AttributeDefinition:
    """Registered, uniquely keyed definition instantiated by attributes."""

    pid: Pid
    key: str
    restriction: ValueRestriction = field(default_factory=ValueRestriction)

    def __post_init__(self):
        object.__setattr__(self, "pid", Pid.parse(self.pid))
        validate_key(self.key)


@dataclass(frozen=True)
class Attribute:
    """
    Key-value pair inside an information record.

    Two attributes are the same element iff key, value, and owning record agree;
    dataclass equality over the three fields gives exactly that.
    """

    key: str
    value: str
    owner: Pid

    def __post_init__(self):
        object.__setattr__(self, "owner", Pid.parse(self.owner))
        if not isinstance(self.value, str):
            raise ValueError(f"Attribute value for '{self.key}' must be a string")

    def __str__(self) -> str:
        return f"{self.key}={self.value}"


@dataclass(frozen=True)
class InformationRecord:
    """
    Kernel information record attached to a PID.

    Attributes:
        pid: PID of the record
        kind: data-fdo, operation-fdo, or profile
        attributes: Ordered attributes; duplicate keys are allowed
        payload_ref: Optional opaque locator (bit sequence, executor)
    """

    pid: Pid
    kind: RecordKind
    attributes: Tuple[Attribute, ...] = ()
    payload_ref: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "pid", Pid.parse(self.pid))
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", RecordKind(self.kind))
        object.__setattr__(self, "attributes", tuple(self.attributes))
        for attribute in self.attributes:
            if attribute.owner != self.pid:
                raise ValueError(
                    f"Attribute '{attribute.key}' is owned by {attribute.owner}, "
                    f"not by record {self.pid}"
                )

    @classmethod
    def build(
        cls,
        pid: Union[str, Pid],
        kind: Union[str, RecordKind],
        pairs: Iterable[Tuple[str, str]] = (),
        payload_ref: Optional[str] = None,
    ) -> "InformationRecord":
        """Create a record from (key, value) pairs, setting attribute owners."""
        pid = Pid.parse(pid)
        attributes = tuple(Attribute(key, value, pid) for key, value in pairs)
        return cls(pid=pid, kind=kind, attributes=attributes, payload_ref=payload_ref)

    @classmethod
    def data_fdo(
        cls,
        pid: Union[str, Pid],
        profile: Union[str, Pid],
        pairs: Iterable[Tuple[str, str]] = (),
        operations: Iterable[Union[str, Pid]] = (),
        payload_ref: Optional[str] = None,
    ) -> "InformationRecord":
        """
        Create a data FDO record in canonical layout.

        Layout: operation references first, then domain attributes, then the
        profile reference last.
        """
        ordered = [(OPERATION_REF_KEY, str(op)) for op in operations]
        ordered.extend(pairs)
        ordered.append((PROFILE_REF_KEY, str(profile)))
        return cls.build(pid, RecordKind.DATA_FDO, ordered, payload_ref)

    @property
    def profile_ref(self) -> Optional[Pid]:
        """Profile referenced by the record's ``fdo-profile-ref`` attribute."""
        for attribute in self.attributes:
            if attribute.key == PROFILE_REF_KEY:
                try:
                    return Pid(attribute.value)
                except ValueError:
                    return None
        return None

    @property
    def operation_refs(self) -> List[str]:
        """Values of all ``fdo-operation-ref`` attributes, in record order."""
        return [a.value for a in self.attributes if a.key == OPERATION_REF_KEY]

    def keys(self) -> List[str]:
        return [a.key for a in self.attributes]

    def values_for(self, key: str) -> List[str]:
        return [a.value for a in self.attributes if a.key == key]

    def pairs(self) -> List[Tuple[str, str]]:
        return [(a.key, a.value) for a in self.attributes]

    def with_pairs(self, pairs: Iterable[Tuple[str, str]]) -> "InformationRecord":
        """Return a copy whose attributes are replaced by ``pairs``."""
        return InformationRecord.build(self.pid, self.kind, pairs, self.payload_ref)

    def __len__(self) -> int:
        return len(self.attributes)

    def __repr__(self) -> str:
        return f"<InformationRecord {self.pid} kind={self.kind.value} attributes={len(self)}>"


@dataclass(frozen=True)
class RequiredInput:
    """Attribute requirement declared by an operation (attribute typing)."""

    key: str
    value_constraint: Optional[str] = None

    def __post_init__(self):
        validate_key(self.key)

    def encode(self) -> str:
        if self.value_constraint is None:
            return self.key
        return f"{self.key}={self.value_constraint}"

    @classmethod
    def parse(cls, text: str) -> "RequiredInput":
        key, sep, constraint = text.partition("=")
        return cls(key, constraint if sep else None)

    def matches(self, key: str, value: str) -> bool:
        if key != self.key:
            return False
        return self.value_constraint is None or self.value_constraint == value


@dataclass(frozen=True)
class Profile:
    """
    Kernel information profile.

    Attributes:
        pid: Profile PID
        mandatory_keys: Keys every conforming record must instantiate
        optional_keys: Keys a conforming record may instantiate
        operation_list: Operations applicable to conforming FDOs (profile typing)
    """

    pid: Pid
    mandatory_keys: FrozenSet[str] = frozenset()
    optional_keys: FrozenSet[str] = frozenset()
    operation_list: Tuple[Pid, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pid", Pid.parse(self.pid))
        object.__setattr__(self, "mandatory_keys", frozenset(self.mandatory_keys))
        object.__setattr__(self, "optional_keys", frozenset(self.optional_keys))
        object.__setattr__(
            self, "operation_list", tuple(Pid.parse(p) for p in self.operation_list)
        )
        overlap = self.mandatory_keys & self.optional_keys
        if overlap:
            raise ValueError(
                f"Profile {self.pid}: keys both mandatory and optional: {sorted(overlap)}"
            )

    def to_record(self) -> InformationRecord:
        """Information-record view; the operation list is one attribute."""
        pairs = []
        if self.operation_list:
            pairs.append(
                (OPERATION_LIST_KEY, LIST_SEPARATOR.join(str(p) for p in self.operation_list))
            )
        return InformationRecord.build(self.pid, RecordKind.PROFILE, pairs)

    def with_operations(self, operations: Iterable[Pid]) -> "Profile":
        return replace(self, operation_list=tuple(operations))


@dataclass(frozen=True)
class OperationSpec:
    """
    Operation FDO.

    Attributes:
        pid: Operation PID
        required_inputs: Attribute requirements (attribute typing only)
        executor_ref: Opaque execution locator; never executed
    """

    pid: Pid
    required_inputs: Tuple[RequiredInput, ...] = ()
    executor_ref: str = ""

    def __post_init__(self):
        object.__setattr__(self, "pid", Pid.parse(self.pid))
        object.__setattr__(self, "required_inputs", tuple(self.required_inputs))

    def to_record(self) -> InformationRecord:
        """Information-record view; one attribute per required input."""
        pairs = [(REQUIRED_INPUT_KEY, req.encode()) for req in self.required_inputs]
        return InformationRecord.build(
            self.pid, RecordKind.OPERATION_FDO, pairs, self.executor_ref or None
        )

    def with_inputs(self, inputs: Iterable[RequiredInput]) -> "OperationSpec":
        return replace(self, required_inputs=tuple(inputs))


Component = Union[InformationRecord, Profile, OperationSpec, AttributeDefinition]


@dataclass(frozen=True)
class Ecosystem:
    """
    Complete FDO ecosystem under one association model.

    Attributes:
        model: Association model (None only for an unconfigured, empty store)
        records: Data FDO records, keyed by PID
        operations: Operation FDOs
        profiles: Profiles
        attribute_defs: Attribute definitions
    """

    model: Optional[AssociationModel]
    records: Dict[Pid, InformationRecord] = field(default_factory=dict)
    operations: Dict[Pid, OperationSpec] = field(default_factory=dict)
    profiles: Dict[Pid, Profile] = field(default_factory=dict)
    attribute_defs: Dict[Pid, AttributeDefinition] = field(default_factory=dict)
    _defs_by_key: Dict[str, AttributeDefinition] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if isinstance(self.model, str):
            object.__setattr__(self, "model", AssociationModel.parse(self.model))
        object.__setattr__(
            self, "_defs_by_key", {d.key: d for d in self.attribute_defs.values()}
        )

    @classmethod
    def empty(cls, model: Optional[Union[str, AssociationModel]]) -> "Ecosystem":
        return cls(model=AssociationModel.parse(model) if model else None)

    @classmethod
    def from_components(
        cls,
        model: Union[str, AssociationModel],
        components: Iterable[Component],
    ) -> "Ecosystem":
        """Assemble an ecosystem from a flat iterable of components."""
        records: Dict[Pid, InformationRecord] = {}
        operations: Dict[Pid, OperationSpec] = {}
        profiles: Dict[Pid, Profile] = {}
        definitions: Dict[Pid, AttributeDefinition] = {}
        for component in components:
            if isinstance(component, InformationRecord):
                records[component.pid] = component
            elif isinstance(component, OperationSpec):
                operations[component.pid] = component
            elif isinstance(component, Profile):
                profiles[component.pid] = component
            elif isinstance(component, AttributeDefinition):
                definitions[component.pid] = component
            else:
                raise TypeError(f"Unsupported component type: {type(component).__name__}")
        return cls(
            model=AssociationModel.parse(model),
            records=records,
            operations=operations,
            profiles=profiles,
            attribute_defs=definitions,
        )

    # Lookup

    @property
    def fdos(self) -> FrozenSet[Pid]:
        return frozenset(self.records)

    def definition_for_key(self, key: str) -> Optional[AttributeDefinition]:
        return self._defs_by_key.get(key)

    def profile(self, pid: Pid) -> Optional[Profile]:
        return self.profiles.get(pid)

    def contains(self, pid: Pid) -> bool:
        return (
            pid in self.records
            or pid in self.operations
            or pid in self.profiles
            or pid in self.attribute_defs
        )

    def kind_of(self, pid: Pid) -> Optional[str]:
        """Component kind name for ``pid``, or None when unknown."""
        if pid in self.records:
            return RecordKind.DATA_FDO.value
        if pid in self.operations:
            return RecordKind.OPERATION_FDO.value
        if pid in self.profiles:
            return RecordKind.PROFILE.value
        if pid in self.attribute_defs:
            return "attribute-definition"
        return None

    def component(self, pid: Pid) -> Optional[Component]:
        for table in (self.records, self.operations, self.profiles, self.attribute_defs):
            if pid in table:
                return table[pid]
        return None

    def record_of(self, pid: Pid) -> Optional[InformationRecord]:
        """Information-record view of a data FDO, operation, or profile."""
        if pid in self.records:
            return self.records[pid]
        if pid in self.operations:
            return self.operations[pid].to_record()
        if pid in self.profiles:
            return self.profiles[pid].to_record()
        return None

    def components(self) -> Iterator[Component]:
        """All components: definitions, operations, profiles, then data FDOs."""
        yield from self.attribute_defs.values()
        yield from self.operations.values()
        yield from self.profiles.values()
        yield from self.records.values()

    def all_pids(self) -> List[Pid]:
        return sorted(c.pid for c in self.components())

    def default_prefix(self, fallback: str) -> str:
        """Prefix of the first data FDO, operation or definition, else ``fallback``."""
        for table in (self.records, self.operations, self.attribute_defs):
            if table:
                return min(table).prefix
        return fallback

    # Copy-on-write mutators

    def with_model(self, model: Union[str, AssociationModel]) -> "Ecosystem":
        return replace(self, model=AssociationModel.parse(model))

    def with_record(self, record: InformationRecord) -> "Ecosystem":
        records = dict(self.records)
        records[record.pid] = record
        return replace(self, records=records)

    def with_operation(self, operation: OperationSpec) -> "Ecosystem":
        operations = dict(self.operations)
        operations[operation.pid] = operation
        return replace(self, operations=operations)

    def with_profile(self, profile: Profile) -> "Ecosystem":
        profiles = dict(self.profiles)
        profiles[profile.pid] = profile
        return replace(self, profiles=profiles)

    def with_definition(self, definition: AttributeDefinition) -> "Ecosystem":
        definitions = dict(self.attribute_defs)
        definitions[definition.pid] = definition
        return replace(self, attribute_defs=definitions)

    def with_component(self, component: Component) -> "Ecosystem":
        if isinstance(component, InformationRecord):
            return self.with_record(component)
        if isinstance(component, OperationSpec):
            return self.with_operation(component)
        if isinstance(component, Profile):
            return self.with_profile(component)
        if isinstance(component, AttributeDefinition):
            return self.with_definition(component)
        raise TypeError(f"Unsupported component type: {type(component).__name__}")

    def get_stats(self) -> Dict[str, object]:
        """Component counts keyed by set name."""
        return {
            "model": self.model.value if self.model else None,
            "fdos": len(self.records),
            "operations": len(self.operations),
            "profiles": len(self.profiles),
            "attribute_defs": len(self.attribute_defs),
            "attributes": sum(len(r) for r in self.records.values()),
        }

    def __repr__(self) -> str:
        model = self.model.value if self.model else "unset"
        return (
            f"<Ecosystem model={model} fdos={len(self.records)} "
            f"operations={len(self.operations)} profiles={len(self.profiles)} "
            f"attribute_defs={len(self.attribute_defs)}>"
        )
