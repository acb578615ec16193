"""
Model Conversion

Re-expresses a whole ecosystem under another association model while keeping
its association relation. PIDs of FDOs and operations are kept, so both
mappings are identity bijections; the components created to express the
relation in the target model are listed as synthesized.
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Tuple, Union

from fdots.core.errors import ModelUnsetError
from fdots.core.fixtures import REFERENCE_PREFIX, definition_pid, standard_definitions
from fdots.core.model import (
    AssociationModel,
    AttributeDefinition,
    Component,
    Ecosystem,
    InformationRecord,
    OPERATION_REF_KEY,
    PROFILE_REF_KEY,
    Profile,
    RESERVED_KEYS,
    RequiredInput,
    ValueRestriction,
)
from fdots.core.pid import Pid, PidMinter
from fdots.engines import create_engine

logger = logging.getLogger(__name__)

MARKER_PREFIX = "op-marker:"
MARKER_VALUE = "1"

_UNSAFE_KEY_CHARS = re.compile(r"[^A-Za-z0-9._:-]")


def marker_key(operation: Pid) -> str:
    """Attribute key marking FDOs an operation applies to under attribute typing."""
    return MARKER_PREFIX + _UNSAFE_KEY_CHARS.sub("-", str(operation).replace("/", ":"))


def is_marker_key(key: str) -> bool:
    return key.startswith(MARKER_PREFIX)


@dataclass(frozen=True)
class ModelMapping:
    """
    Bijections between the FDOs and operations of a source and a target
    ecosystem.

    Attributes:
        source: Source association model
        target: Target association model
        fdo_map: Source FDO PID to target FDO PID
        op_map: Source operation PID to target operation PID
        synthesized: Components created for the target model
    """

    source: AssociationModel
    target: AssociationModel
    fdo_map: Mapping[Pid, Pid]
    op_map: Mapping[Pid, Pid]
    synthesized: Tuple[Component, ...] = ()

    def __post_init__(self):
        for name in ("fdo_map", "op_map"):
            table = getattr(self, name)
            if len(set(table.values())) != len(table):
                raise ValueError(f"{name} is not injective")

    @classmethod
    def identity(
        cls,
        ecosystem: Ecosystem,
        target: AssociationModel,
        synthesized: Tuple[Component, ...] = (),
    ) -> "ModelMapping":
        return cls(
            source=ecosystem.model,
            target=target,
            fdo_map={pid: pid for pid in ecosystem.records},
            op_map={pid: pid for pid in ecosystem.operations},
            synthesized=tuple(synthesized),
        )

    def rows(self) -> Dict[str, List[Tuple[str, str]]]:
        """Two-column tables for both bijections, sorted by source PID."""
        return {
            "fdo": [(str(s), str(t)) for s, t in sorted(self.fdo_map.items())],
            "operation": [(str(s), str(t)) for s, t in sorted(self.op_map.items())],
        }

    def __repr__(self) -> str:
        return (
            f"<ModelMapping {self.source.value}->{self.target.value} "
            f"fdos={len(self.fdo_map)} ops={len(self.op_map)} synthesized={len(self.synthesized)}>"
        )


def _domain_pairs(record: InformationRecord) -> List[Tuple[str, str]]:
    return [(k, v) for k, v in record.pairs() if k not in RESERVED_KEYS and not is_marker_key(k)]


def _profile_pairs(record: InformationRecord) -> List[Tuple[str, str]]:
    return [(PROFILE_REF_KEY, v) for v in record.values_for(PROFILE_REF_KEY)]


def _to_record(
    ecosystem: Ecosystem, ops_by_fdo: Mapping[Pid, FrozenSet[Pid]], prefix: str
) -> Tuple[Ecosystem, List[Component]]:
    records = {}
    for pid, record in ecosystem.records.items():
        pairs = [(OPERATION_REF_KEY, str(o)) for o in sorted(ops_by_fdo.get(pid, ()))]
        pairs.extend(_domain_pairs(record))
        pairs.extend(_profile_pairs(record))
        records[pid] = record.with_pairs(pairs)
    converted = Ecosystem(
        model=AssociationModel.RECORD,
        records=records,
        operations={pid: op.with_inputs(()) for pid, op in ecosystem.operations.items()},
        profiles={pid: p.with_operations(()) for pid, p in ecosystem.profiles.items()},
        attribute_defs=dict(ecosystem.attribute_defs),
    )
    return converted, []


def _to_profile(
    ecosystem: Ecosystem, ops_by_fdo: Mapping[Pid, FrozenSet[Pid]], prefix: str
) -> Tuple[Ecosystem, List[Component]]:
    groups: Dict[FrozenSet[Pid], List[Pid]] = {}
    for pid in sorted(ecosystem.records):
        groups.setdefault(frozenset(ops_by_fdo.get(pid, ())), []).append(pid)

    minter = PidMinter(used=ecosystem.all_pids())
    profiles: Dict[Pid, Profile] = {}
    records: Dict[Pid, InformationRecord] = {}
    for ops, members in sorted(groups.items(), key=lambda item: item[1][0]):
        sources = [ecosystem.profile(ecosystem.records[f].profile_ref) for f in members]
        mandatory = frozenset.intersection(
            *[s.mandatory_keys if s else frozenset() for s in sources]
        )
        known = frozenset().union(*[s.mandatory_keys | s.optional_keys for s in sources if s])
        profile = Profile(minter.mint(prefix), mandatory, known - mandatory, sorted(ops))
        profiles[profile.pid] = profile
        for f in members:
            record = ecosystem.records[f]
            records[f] = record.with_pairs(
                [*_domain_pairs(record), (PROFILE_REF_KEY, str(profile.pid))]
            )

    converted = Ecosystem(
        model=AssociationModel.PROFILE,
        records=records,
        operations={pid: op.with_inputs(()) for pid, op in ecosystem.operations.items()},
        profiles=profiles,
        attribute_defs=dict(ecosystem.attribute_defs),
    )
    return converted, list(profiles.values())


def _to_attribute(
    ecosystem: Ecosystem, ops_by_fdo: Mapping[Pid, FrozenSet[Pid]], prefix: str
) -> Tuple[Ecosystem, List[Component]]:
    definitions = dict(ecosystem.attribute_defs)
    synthesized: List[Component] = []
    markers: Dict[Pid, str] = {}
    for o in sorted(ecosystem.operations):
        key = marker_key(o)
        if ecosystem.definition_for_key(key) is None:
            definition = AttributeDefinition(
                definition_pid(prefix, key), key, ValueRestriction.enum([MARKER_VALUE])
            )
            definitions[definition.pid] = definition
            synthesized.append(definition)
        markers[o] = key

    records = {}
    for pid, record in ecosystem.records.items():
        pairs = _domain_pairs(record)
        pairs.extend((markers[o], MARKER_VALUE) for o in sorted(ops_by_fdo.get(pid, ())))
        pairs.extend(_profile_pairs(record))
        records[pid] = record.with_pairs(pairs)

    converted = Ecosystem(
        model=AssociationModel.ATTRIBUTE,
        records=records,
        operations={
            pid: op.with_inputs([RequiredInput(markers[pid])])
            for pid, op in ecosystem.operations.items()
        },
        profiles={pid: p.with_operations(()) for pid, p in ecosystem.profiles.items()},
        attribute_defs=definitions,
    )
    return converted, synthesized


_CONVERTERS = {
    AssociationModel.RECORD: _to_record,
    AssociationModel.PROFILE: _to_profile,
    AssociationModel.ATTRIBUTE: _to_attribute,
}


def _reserved_definitions(
    ecosystem: Ecosystem, prefix: str, synthesized: List[Component]
) -> Ecosystem:
    """Keep the reserved definitions the target model uses and add missing ones."""
    needed = standard_definitions(ecosystem.model, prefix)
    needed_keys = {d.key for d in needed}
    keep_markers = ecosystem.model is AssociationModel.ATTRIBUTE
    definitions = {
        pid: d
        for pid, d in ecosystem.attribute_defs.items()
        if (d.key not in RESERVED_KEYS or d.key in needed_keys)
        and (keep_markers or not is_marker_key(d.key))
    }
    present = {d.key for d in definitions.values()}
    for definition in needed:
        if definition.key not in present:
            definitions[definition.pid] = definition
            synthesized.append(definition)
    return Ecosystem(
        model=ecosystem.model,
        records=ecosystem.records,
        operations=ecosystem.operations,
        profiles=ecosystem.profiles,
        attribute_defs=definitions,
    )


def convert(
    ecosystem: Ecosystem,
    target_model: Union[str, AssociationModel],
    match_values: bool = True,
) -> Tuple[Ecosystem, ModelMapping]:
    """
    Express ``ecosystem``'s association relation under ``target_model``.

    Record typing gets one operation reference per associated pair, placed
    before the domain attributes. Profile typing groups FDOs by identical
    operation sets into one synthesized profile per group; source profiles
    are dropped. Attribute typing gets one marker definition per operation,
    required by that operation and instantiated by every associated FDO.
    Converting into the source model is the identity.

    Args:
        ecosystem: Source ecosystem
        target_model: Association model to convert into
        match_values: Relation semantics for an attribute-typed source

    Returns:
        Tuple[Ecosystem, ModelMapping]: Converted ecosystem and the mapping

    Raises:
        ModelUnsetError: If the source ecosystem has no model

    Example:
        >>> converted, mapping = convert(create_record_fixture(), "profile")
        >>> len(converted.profiles)
        3
    """
    if ecosystem.model is None:
        raise ModelUnsetError("Cannot convert an ecosystem without an association model")
    target = AssociationModel.parse(target_model)
    if target is ecosystem.model:
        return ecosystem, ModelMapping.identity(ecosystem, target)

    engine = create_engine(ecosystem, use_index=True, match_values=match_values)
    ops_by_fdo = engine.index.ops_by_fdo
    prefix = ecosystem.default_prefix(REFERENCE_PREFIX)

    converted, synthesized = _CONVERTERS[target](ecosystem, ops_by_fdo, prefix)
    converted = _reserved_definitions(converted, prefix, synthesized)
    mapping = ModelMapping.identity(ecosystem, target, tuple(synthesized))
    logger.info(
        f"Converted {ecosystem.model.value} -> {target.value}: "
        f"{len(synthesized)} synthesized components"
    )
    return converted, mapping


def convert_all(
    ecosystem: Ecosystem, match_values: bool = True
) -> Dict[AssociationModel, Tuple[Ecosystem, ModelMapping]]:
    """Convert ``ecosystem`` into every association model."""
    return {model: convert(ecosystem, model, match_values) for model in AssociationModel}
