"""
Profile Typing

An FDO's operations are inferred from its profile, whose ``fdo-operation-list``
names the operations applicable to every conforming FDO. Reaching the profile
from the reference costs no steps; reading its list costs one step per entry.
"""

import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Set

from fdots.core.errors import ModelMismatchError, UnexpressibleTargetSetError, UnresolvedProfileError
from fdots.core.model import (
    AssociationModel,
    InformationRecord,
    OperationSpec,
    Profile,
    PROFILE_REF_KEY,
)
from fdots.core.pid import Pid
from fdots.engines.base import AssociationEngine, PidLike, StepCounter, UpdateReport

logger = logging.getLogger(__name__)


class ProfileEngine(AssociationEngine):
    """Association through the operation list of the FDO's profile."""

    model = AssociationModel.PROFILE

    def _profile_of(self, record: InformationRecord, counter: StepCounter) -> Optional[Profile]:
        for attribute in record.attributes:
            counter.tick()
            if attribute.key == PROFILE_REF_KEY:
                try:
                    return self.ecosystem.profile(Pid(attribute.value))
                except ValueError:
                    return None
        return None

    def _scan_is_associated(
        self, record: InformationRecord, operation: OperationSpec, counter: StepCounter
    ) -> bool:
        profile = self._profile_of(record, counter)
        if profile is None:
            return False
        for op in profile.operation_list:
            counter.tick()
            if op == operation.pid:
                return True
        return False

    def _scan_ops_for_fdo(self, record: InformationRecord, counter: StepCounter) -> List[Pid]:
        profile = self._profile_of(record, counter)
        if profile is None:
            return []
        counter.tick(len(profile.operation_list))
        return [op for op in profile.operation_list if op in self.ecosystem.operations]

    def _scan_fdos_for_op(self, operation: OperationSpec, counter: StepCounter) -> List[Pid]:
        # each distinct profile list is read once
        lists: Dict[Pid, bool] = {}
        found = []
        for record in self.ecosystem.records.values():
            profile = self._profile_of(record, counter)
            if profile is None:
                continue
            if profile.pid not in lists:
                hit = False
                for op in profile.operation_list:
                    counter.tick()
                    if op == operation.pid:
                        hit = True
                        break
                lists[profile.pid] = hit
            if lists[profile.pid]:
                found.append(record.pid)
        return found

    def members_by_profile(self) -> Dict[Pid, Set[Pid]]:
        """FDOs conforming to each profile."""
        members: Dict[Pid, Set[Pid]] = {pid: set() for pid in self.ecosystem.profiles}
        for record in self.ecosystem.records.values():
            if record.profile_ref in members:
                members[record.profile_ref].add(record.pid)
        return members

    def covering_profiles(self, targets: FrozenSet[Pid]) -> List[Pid]:
        """
        Profiles whose FDO set lies inside ``targets``.

        Raises:
            UnexpressibleTargetSetError: If their union is not exactly ``targets``
        """
        covering, covered = [], set()
        for pid, members in sorted(self.members_by_profile().items()):
            if members and members <= targets:
                covering.append(pid)
                covered |= members
        if covered != targets:
            raise UnexpressibleTargetSetError(targets - covered)
        return covering

    def associate_new_operation(
        self, operation: OperationSpec, targets: Iterable[PidLike] = ()
    ) -> UpdateReport:
        """
        Append ``operation`` to the list of every profile covering ``targets``.

        Returns:
            UpdateReport: record_writes equals the number of covering profiles

        Raises:
            UnexpressibleTargetSetError: If targets are not a union of profile classes
        """
        self._check_new(operation.pid)
        target_set = self._targets(targets)
        covering = self.covering_profiles(target_set)
        ecosystem = self.ecosystem.with_operation(operation)
        updates = []
        for pid in covering:
            profile = ecosystem.profiles[pid]
            updated = profile.with_operations([*profile.operation_list, operation.pid])
            ecosystem = ecosystem.with_profile(updated)
            updates.append(updated)
        logger.info(f"Profile typing: {operation.pid} added to {len(updates)} profiles")
        return UpdateReport(
            model=self.model,
            record_writes=len(updates),
            registrations=[operation],
            updates=updates,
            ecosystem=ecosystem,
            implied=target_set,
        )

    def associate_new_fdo(
        self, record: InformationRecord, ops: Optional[Iterable[PidLike]] = None
    ) -> UpdateReport:
        """
        Register ``record``; its profile decides the operation set.

        Raises:
            UnresolvedProfileError: If the record's profile is unknown
            ModelMismatchError: If ``ops`` differs from the profile's operation list
        """
        self._check_new(record.pid)
        profile = self.ecosystem.profile(record.profile_ref) if record.profile_ref else None
        if profile is None:
            raise UnresolvedProfileError(
                f"Record {record.pid} references unresolved profile {record.profile_ref}",
                pid=record.pid,
            )
        implied = frozenset(profile.operation_list)
        if ops is not None:
            requested = self._operations(ops)
            if requested != implied:
                raise ModelMismatchError(requested, implied)
        logger.info(f"Profile typing: new FDO {record.pid} inherits {len(implied)} operations")
        return UpdateReport(
            model=self.model,
            record_writes=0,
            registrations=[record],
            ecosystem=self.ecosystem.with_record(record),
            implied=implied,
        )
