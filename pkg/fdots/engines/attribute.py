"""
Attribute Typing

An operation declares required inputs; it is associated with every FDO whose
record satisfies all of them. In key-value mode a required input carrying a
value constraint needs the exact key-value pair, otherwise key presence
suffices. An operation without required inputs applies to every FDO.

Cost accounting per pair: the FDO record is converted into a key lookup (one
step per attribute), the requirements are read (one step each), and the
matching phase iterates the smaller side, so it reads at most
as many elements as the shorter of the two attribute lists.
"""

import logging
from typing import Dict, Iterable, List, Optional, Tuple

from fdots.core.errors import ModelMismatchError
from fdots.core.model import (
    AssociationModel,
    InformationRecord,
    OperationSpec,
    RequiredInput,
)
from fdots.core.pid import Pid
from fdots.engines.base import AssociationEngine, PidLike, StepCounter, UpdateReport

logger = logging.getLogger(__name__)

RecordView = Tuple[Dict[str, List[str]], List[Tuple[str, str]]]


class AttributeEngine(AssociationEngine):
    """Association by matching operation requirements against FDO attributes."""

    model = AssociationModel.ATTRIBUTE

    def __init__(self, ecosystem, use_index: bool = True, step_counter=None, match_values: bool = True):
        """
        Args:
            match_values: Honour value constraints (key-value mode); False
                checks key presence only
        """
        self.match_values = match_values
        super().__init__(ecosystem, use_index=use_index, step_counter=step_counter)

    def _view(self, record: InformationRecord, counter: StepCounter) -> RecordView:
        by_key: Dict[str, List[str]] = {}
        pairs = []
        for attribute in record.attributes:
            counter.tick()
            by_key.setdefault(attribute.key, []).append(attribute.value)
            pairs.append((attribute.key, attribute.value))
        return by_key, pairs

    def _requirements(self, operation: OperationSpec, counter: StepCounter) -> Tuple[RequiredInput, ...]:
        counter.tick(len(operation.required_inputs))
        return operation.required_inputs

    def _satisfies(self, requirement: RequiredInput, key: str, value: str) -> bool:
        if self.match_values:
            return requirement.matches(key, value)
        return key == requirement.key

    def _match(
        self, view: RecordView, requirements: Tuple[RequiredInput, ...], counter: StepCounter
    ) -> bool:
        if not requirements:
            return True
        by_key, pairs = view

        if len(requirements) <= len(pairs):
            for requirement in requirements:
                counter.tick()
                values = by_key.get(requirement.key)
                if not values:
                    return False
                if not any(self._satisfies(requirement, requirement.key, v) for v in values):
                    return False
            return True

        pending: Dict[str, List[RequiredInput]] = {}
        for requirement in requirements:
            pending.setdefault(requirement.key, []).append(requirement)
        satisfied = set()
        for key, value in pairs:
            counter.tick()
            for requirement in pending.get(key, ()):
                if self._satisfies(requirement, key, value):
                    satisfied.add(requirement)
        return len(satisfied) == len(set(requirements))

    def _scan_is_associated(
        self, record: InformationRecord, operation: OperationSpec, counter: StepCounter
    ) -> bool:
        view = self._view(record, counter)
        return self._match(view, self._requirements(operation, counter), counter)

    def _scan_ops_for_fdo(self, record: InformationRecord, counter: StepCounter) -> List[Pid]:
        view = self._view(record, counter)
        return [
            operation.pid
            for operation in self.ecosystem.operations.values()
            if self._match(view, self._requirements(operation, counter), counter)
        ]

    def _scan_fdos_for_op(self, operation: OperationSpec, counter: StepCounter) -> List[Pid]:
        requirements = self._requirements(operation, counter)
        return [
            record.pid
            for record in self.ecosystem.records.values()
            if self._match(self._view(record, counter), requirements, counter)
        ]

    def associate_new_operation(
        self, operation: OperationSpec, targets: Iterable[PidLike] = ()
    ) -> UpdateReport:
        """
        Register ``operation``; no existing record is written.

        ``targets`` is ignored: the operation's required inputs define its FDO
        set, reported as ``implied``.
        """
        self._check_new(operation.pid)
        scratch = StepCounter()
        requirements = operation.required_inputs
        implied = frozenset(
            record.pid
            for record in self.ecosystem.records.values()
            if self._match(self._view(record, scratch), requirements, scratch)
        )
        logger.info(f"Attribute typing: {operation.pid} applies to {len(implied)} FDOs")
        return UpdateReport(
            model=self.model,
            record_writes=0,
            registrations=[operation],
            ecosystem=self.ecosystem.with_operation(operation),
            implied=implied,
        )

    def associate_new_fdo(
        self, record: InformationRecord, ops: Optional[Iterable[PidLike]] = None
    ) -> UpdateReport:
        """
        Register ``record``; its attributes decide the operation set.

        Raises:
            ModelMismatchError: If ``ops`` differs from the operations the
                record's attributes satisfy
        """
        self._check_new(record.pid)
        scratch = StepCounter()
        view = self._view(record, scratch)
        implied = frozenset(
            operation.pid
            for operation in self.ecosystem.operations.values()
            if self._match(view, operation.required_inputs, scratch)
        )
        if ops is not None:
            requested = self._operations(ops)
            if requested != implied:
                raise ModelMismatchError(requested, implied)
        logger.info(f"Attribute typing: new FDO {record.pid} satisfies {len(implied)} operations")
        return UpdateReport(
            model=self.model,
            record_writes=0,
            registrations=[record],
            ecosystem=self.ecosystem.with_record(record),
            implied=implied,
        )
