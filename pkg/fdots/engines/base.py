"""
Association Engine Base

Common query interface of the three association strategies, the elementary
step counter used to verify cost ceilings, and the update report returned by
association updates.
"""

import logging
from abc import ABC, abstractmethod
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

from fdots.core.errors import DuplicatePidError, KindMismatchError, UnknownPidError
from fdots.core.model import (
    AssociationModel,
    Component,
    Ecosystem,
    InformationRecord,
    OperationSpec,
    RecordKind,
)
from fdots.core.pid import Pid

logger = logging.getLogger(__name__)

PidLike = Union[str, Pid]


@dataclass
class Measurement:
    steps: int = 0


class StepCounter:
    """
    Counter of elementary reads: one attribute read or one list-element read
    is one step.

    Example:
        >>> counter = StepCounter()
        >>> with counter.measure() as m:
        ...     counter.tick(3)
        >>> m.steps
        3
    """

    def __init__(self):
        self.steps = 0

    def tick(self, n: int = 1) -> None:
        self.steps += n

    def reset(self) -> None:
        self.steps = 0

    @contextmanager
    def measure(self) -> Iterator[Measurement]:
        """Yield a Measurement holding the steps taken inside the block."""
        result = Measurement()
        start = self.steps
        try:
            yield result
        finally:
            result.steps = self.steps - start

    def __repr__(self) -> str:
        return f"<StepCounter steps={self.steps}>"


@dataclass
class UpdateReport:
    """
    Outcome of associating a new operation or a new FDO.

    Attributes:
        model: Association model of the engine that produced the report
        record_writes: Writes to pre-existing records (the measured T or U value)
        registrations: Components newly registered; not counted as writes
        updates: Component versions to write, one write each, in order
        ecosystem: Snapshot after the update
        implied: Target set decided by the model (FDOs for a new operation,
            operations for a new FDO)
    """

    model: AssociationModel
    record_writes: int
    registrations: List[Component] = field(default_factory=list)
    updates: List[Component] = field(default_factory=list)
    ecosystem: Optional[Ecosystem] = None
    implied: FrozenSet[Pid] = frozenset()

    def __post_init__(self):
        if self.record_writes != len(self.updates):
            raise ValueError(
                f"record_writes={self.record_writes} but {len(self.updates)} updates listed"
            )


class AssociationEngine(ABC):
    """
    Query interface shared by record, profile and attribute typing.

    Subclasses implement the scan procedures; they tick the counter they are
    given once per attribute or list element read. When a query index is
    present, queries are answered from it and no steps are counted.
    """

    model: AssociationModel

    def __init__(
        self,
        ecosystem: Ecosystem,
        use_index: bool = True,
        step_counter: Optional[StepCounter] = None,
    ):
        """
        Initialize engine.

        Args:
            ecosystem: Immutable ecosystem snapshot
            use_index: Build the query index now and answer queries from it
            step_counter: Default counter for queries that do not pass one
        """
        self.ecosystem = ecosystem
        self.step_counter = step_counter or StepCounter()
        self.index = None
        if use_index:
            from fdots.engines.index import QueryIndex

            self.index = QueryIndex.build(self)

    # Lookups

    def _fdo(self, pid: PidLike) -> InformationRecord:
        pid = Pid.parse(pid)
        record = self.ecosystem.records.get(pid)
        if record is None:
            actual = self.ecosystem.kind_of(pid)
            if actual is None:
                raise UnknownPidError(pid)
            raise KindMismatchError(pid, RecordKind.DATA_FDO.value, actual)
        return record

    def _operation(self, pid: PidLike) -> OperationSpec:
        pid = Pid.parse(pid)
        operation = self.ecosystem.operations.get(pid)
        if operation is None:
            actual = self.ecosystem.kind_of(pid)
            if actual is None:
                raise UnknownPidError(pid)
            raise KindMismatchError(pid, RecordKind.OPERATION_FDO.value, actual)
        return operation

    def _counter(self, counter: Optional[StepCounter]) -> StepCounter:
        return counter if counter is not None else self.step_counter

    # Queries

    def is_associated(self, f: PidLike, o: PidLike, counter: Optional[StepCounter] = None) -> bool:
        """
        Decide whether FDO ``f`` is associated with operation ``o``.

        Raises:
            UnknownPidError: If either PID is not part of the ecosystem
            KindMismatchError: If ``f`` is not a data FDO or ``o`` not an operation
        """
        record, operation = self._fdo(f), self._operation(o)
        if self.index is not None:
            return operation.pid in self.index.ops_by_fdo.get(record.pid, frozenset())
        return self._scan_is_associated(record, operation, self._counter(counter))

    def ops_for_fdo(self, f: PidLike, counter: Optional[StepCounter] = None) -> FrozenSet[Pid]:
        """All operations associated with ``f``."""
        record = self._fdo(f)
        if self.index is not None:
            return self.index.ops_by_fdo.get(record.pid, frozenset())
        return frozenset(self._scan_ops_for_fdo(record, self._counter(counter)))

    def fdos_for_op(self, o: PidLike, counter: Optional[StepCounter] = None) -> FrozenSet[Pid]:
        """All FDOs associated with ``o``."""
        operation = self._operation(o)
        if self.index is not None:
            return self.index.fdos_by_op.get(operation.pid, frozenset())
        return frozenset(self._scan_fdos_for_op(operation, self._counter(counter)))

    def relation(self) -> List[Tuple[Pid, Pid]]:
        """Full association relation as sorted (fdo, operation) pairs."""
        if self.index is not None:
            pairs = {(f, o) for f, ops in self.index.ops_by_fdo.items() for o in ops}
        else:
            pairs = self.scan_relation()
        return sorted(pairs)

    def scan_relation(self) -> set:
        """Association relation computed by scanning, bypassing any index."""
        scratch = StepCounter()
        return {
            (record.pid, op)
            for record in self.ecosystem.records.values()
            for op in self._scan_ops_for_fdo(record, scratch)
        }

    # Updates

    def _check_new(self, pid: Pid) -> None:
        if self.ecosystem.contains(pid):
            raise DuplicatePidError(pid)

    def _targets(self, targets: Iterable[PidLike]) -> FrozenSet[Pid]:
        return frozenset(self._fdo(t).pid for t in targets)

    def _operations(self, ops: Iterable[PidLike]) -> FrozenSet[Pid]:
        return frozenset(self._operation(o).pid for o in ops)

    @abstractmethod
    def associate_new_operation(
        self, operation: OperationSpec, targets: Iterable[PidLike] = ()
    ) -> UpdateReport:
        """Associate a new operation with a set of FDOs."""

    @abstractmethod
    def associate_new_fdo(
        self, record: InformationRecord, ops: Optional[Iterable[PidLike]] = None
    ) -> UpdateReport:
        """Associate a new FDO with a set of operations."""

    # Scan procedures

    @abstractmethod
    def _scan_is_associated(
        self, record: InformationRecord, operation: OperationSpec, counter: StepCounter
    ) -> bool:
        ...

    @abstractmethod
    def _scan_ops_for_fdo(self, record: InformationRecord, counter: StepCounter) -> Iterable[Pid]:
        ...

    @abstractmethod
    def _scan_fdos_for_op(self, operation: OperationSpec, counter: StepCounter) -> Iterable[Pid]:
        ...

    def __repr__(self) -> str:
        indexed = "indexed" if self.index is not None else "scanning"
        return f"<{type(self).__name__} {indexed} {self.ecosystem!r}>"
