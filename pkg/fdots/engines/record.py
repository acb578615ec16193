"""
Record Typing

Operations are referenced directly in the FDO's information record through the
``fdo-operation-ref`` attribute. The association is fixed when the record is
written.
"""

import logging
from typing import Iterable, List, Optional

from fdots.core.model import (
    AssociationModel,
    InformationRecord,
    OPERATION_REF_KEY,
    OperationSpec,
)
from fdots.core.pid import Pid
from fdots.engines.base import AssociationEngine, PidLike, StepCounter, UpdateReport

logger = logging.getLogger(__name__)


def insert_operation_ref(record: InformationRecord, operation: Pid) -> InformationRecord:
    """Copy of ``record`` with one operation reference added after the existing ones."""
    pairs = record.pairs()
    position = 0
    for i, (key, _) in enumerate(pairs):
        if key == OPERATION_REF_KEY:
            position = i + 1
    pairs.insert(position, (OPERATION_REF_KEY, str(operation)))
    return record.with_pairs(pairs)


class RecordEngine(AssociationEngine):
    """Association by operation references inside data FDO records."""

    model = AssociationModel.RECORD

    def _scan_is_associated(
        self, record: InformationRecord, operation: OperationSpec, counter: StepCounter
    ) -> bool:
        target = str(operation.pid)
        for attribute in record.attributes:
            counter.tick()
            if attribute.key == OPERATION_REF_KEY and attribute.value == target:
                return True
        return False

    def _scan_ops_for_fdo(self, record: InformationRecord, counter: StepCounter) -> List[Pid]:
        found = []
        for attribute in record.attributes:
            counter.tick()
            if attribute.key != OPERATION_REF_KEY:
                continue
            try:
                pid = Pid(attribute.value)
            except ValueError:
                continue
            if pid in self.ecosystem.operations:
                found.append(pid)
        return found

    def _scan_fdos_for_op(self, operation: OperationSpec, counter: StepCounter) -> List[Pid]:
        return [
            record.pid
            for record in self.ecosystem.records.values()
            if self._scan_is_associated(record, operation, counter)
        ]

    def associate_new_operation(
        self, operation: OperationSpec, targets: Iterable[PidLike] = ()
    ) -> UpdateReport:
        """
        Register ``operation`` and write one reference into every target record.

        Returns:
            UpdateReport: record_writes equals the number of targets
        """
        self._check_new(operation.pid)
        target_set = self._targets(targets)
        ecosystem = self.ecosystem.with_operation(operation)
        updates = []
        for pid in sorted(target_set):
            updated = insert_operation_ref(ecosystem.records[pid], operation.pid)
            ecosystem = ecosystem.with_record(updated)
            updates.append(updated)
        logger.info(f"Record typing: {operation.pid} referenced from {len(updates)} records")
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
        Register ``record`` without operation references, then insert one
        reference per requested operation, one write each.
        """
        self._check_new(record.pid)
        op_set = self._operations(ops or ())
        base = record.with_pairs((k, v) for k, v in record.pairs() if k != OPERATION_REF_KEY)
        ecosystem = self.ecosystem.with_record(base)
        updates = []
        current = base
        for pid in sorted(op_set):
            current = insert_operation_ref(current, pid)
            updates.append(current)
        ecosystem = ecosystem.with_record(current)
        logger.info(f"Record typing: new FDO {record.pid} with {len(updates)} operation references")
        return UpdateReport(
            model=self.model,
            record_writes=len(updates),
            registrations=[base],
            updates=updates,
            ecosystem=ecosystem,
            implied=op_set,
        )
