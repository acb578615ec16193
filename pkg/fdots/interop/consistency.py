"""
Cross-model consistency: every FDO must have the same operation set in
every ecosystem, read through the mappings.
"""

import logging
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Sequence

from fdots.core.errors import FdoError
from fdots.core.model import Ecosystem
from fdots.core.pid import Pid
from fdots.engines import create_engine
from fdots.interop.convert import ModelMapping

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Disagreement:
    """
    One FDO whose operation set differs between the first ecosystem and
    another one.

    Attributes:
        fdo: FDO PID in the first ecosystem
        position: Index of the disagreeing ecosystem in the checked list
        model: Association model of the disagreeing ecosystem
        expected: Operations of the FDO in the first ecosystem, mapped
        actual: Operations found in the disagreeing ecosystem
        detail: Error text when the FDO could not be queried
    """

    fdo: Pid
    position: int
    model: str
    expected: FrozenSet[Pid]
    actual: FrozenSet[Pid]
    detail: str = ""

    def describe(self) -> str:
        missing = ", ".join(str(p) for p in sorted(self.expected - self.actual)) or "-"
        extra = ", ".join(str(p) for p in sorted(self.actual - self.expected)) or "-"
        text = f"{self.fdo} in #{self.position} ({self.model}): missing [{missing}] extra [{extra}]"
        return f"{text}: {self.detail}" if self.detail else text


@dataclass
class ConsistencyReport:
    models: List[str]
    checked_fdos: int = 0
    disagreements: List[Disagreement] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.disagreements

    def describe(self) -> List[str]:
        return [d.describe() for d in self.disagreements]


def check_consistency(
    ecosystems: Sequence[Ecosystem],
    mappings: Optional[Sequence[Optional[ModelMapping]]] = None,
    match_values: bool = True,
) -> ConsistencyReport:
    """
    Compare ``ops_for_fdo`` of every FDO across ecosystems.

    The first ecosystem is the reference. ``mappings[i]`` maps its PIDs into
    ``ecosystems[i + 1]``; a missing mapping (or ``None``) means PIDs are
    shared.

    Args:
        ecosystems: Ecosystems to compare, at least one
        mappings: One mapping per ecosystem after the first
        match_values: Key-value matching for attribute-typed ecosystems

    Returns:
        ConsistencyReport: Every disagreement found

    Raises:
        ValueError: If no ecosystem is given or the mapping count is wrong
    """
    if not ecosystems:
        raise ValueError("check_consistency needs at least one ecosystem")
    others = list(ecosystems[1:])
    mappings = list(mappings) if mappings is not None else [None] * len(others)
    if len(mappings) != len(others):
        raise ValueError(
            f"Expected {len(others)} mappings for {len(ecosystems)} ecosystems, got {len(mappings)}"
        )

    reference = create_engine(ecosystems[0], use_index=True, match_values=match_values)
    engines = [create_engine(e, use_index=True, match_values=match_values) for e in others]
    report = ConsistencyReport(models=[e.model.value for e in ecosystems])

    for f in sorted(ecosystems[0].records):
        report.checked_fdos += 1
        ops = reference.ops_for_fdo(f)
        for position, (engine, mapping) in enumerate(zip(engines, mappings), start=1):
            fdo_map = mapping.fdo_map if mapping else {}
            op_map = mapping.op_map if mapping else {}
            expected = frozenset(op_map.get(o, o) for o in ops)
            target = fdo_map.get(f, f)
            try:
                actual, detail = engine.ops_for_fdo(target), ""
            except FdoError as e:
                actual, detail = frozenset(), str(e)
            if actual != expected or detail:
                report.disagreements.append(
                    Disagreement(f, position, engine.model.value, expected, actual, detail)
                )

    if report.consistent:
        logger.info(f"Consistent across {len(ecosystems)} ecosystems ({report.checked_fdos} FDOs)")
    else:
        logger.warning(f"{len(report.disagreements)} consistency disagreements")
    return report
