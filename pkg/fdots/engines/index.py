"""
Query Index

Adjacency maps built once at ingestion so queries never rescan records.
"""

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, FrozenSet, Tuple

from fdots.core.model import AssociationModel, Attribute
from fdots.core.pid import Pid

if TYPE_CHECKING:
    from fdots.engines.base import AssociationEngine

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QueryIndex:
    """
    Precomputed association maps.

    Attributes:
        ops_by_fdo: Associated operations of every data FDO
        fdos_by_op: Associated FDOs of every operation
        attrs_by_fdo: Attribute list of every data FDO
        attrs_by_op: Required inputs of every operation
        profiles_by_fdo: Profile of every FDO (profile typing only)
        ops_by_profile: Operation list of every profile (profile typing only)
    """

    ops_by_fdo: Dict[Pid, FrozenSet[Pid]] = field(default_factory=dict)
    fdos_by_op: Dict[Pid, FrozenSet[Pid]] = field(default_factory=dict)
    attrs_by_fdo: Dict[Pid, Tuple[Attribute, ...]] = field(default_factory=dict)
    attrs_by_op: Dict[Pid, Tuple[Attribute, ...]] = field(default_factory=dict)
    profiles_by_fdo: Dict[Pid, Pid] = field(default_factory=dict)
    ops_by_profile: Dict[Pid, Tuple[Pid, ...]] = field(default_factory=dict)

    @classmethod
    def build(cls, engine: "AssociationEngine") -> "QueryIndex":
        """Build the index from the engine's scan relation."""
        ecosystem = engine.ecosystem
        ops_by_fdo = {f: set() for f in ecosystem.records}
        fdos_by_op = {o: set() for o in ecosystem.operations}
        for f, o in engine.scan_relation():
            ops_by_fdo[f].add(o)
            fdos_by_op.setdefault(o, set()).add(f)

        profiles_by_fdo: Dict[Pid, Pid] = {}
        ops_by_profile: Dict[Pid, Tuple[Pid, ...]] = {}
        if ecosystem.model is AssociationModel.PROFILE:
            for record in ecosystem.records.values():
                if record.profile_ref is not None:
                    profiles_by_fdo[record.pid] = record.profile_ref
            ops_by_profile = {p.pid: p.operation_list for p in ecosystem.profiles.values()}

        index = cls(
            ops_by_fdo={f: frozenset(ops) for f, ops in ops_by_fdo.items()},
            fdos_by_op={o: frozenset(fdos) for o, fdos in fdos_by_op.items()},
            attrs_by_fdo={pid: r.attributes for pid, r in ecosystem.records.items()},
            attrs_by_op={pid: o.to_record().attributes for pid, o in ecosystem.operations.items()},
            profiles_by_fdo=profiles_by_fdo,
            ops_by_profile=ops_by_profile,
        )
        logger.debug(f"Built query index: {index.association_count()} associations")
        return index

    def association_count(self) -> int:
        return sum(len(ops) for ops in self.ops_by_fdo.values())

    def check_handshake(self) -> bool:
        """Associations counted from the FDO side equal those counted from the operation side."""
        return self.association_count() == sum(len(fdos) for fdos in self.fdos_by_op.values())
