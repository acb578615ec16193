"""
Model Comparison

Measures one association relation under all three association models, with a
shared query sample and shared update scenarios, and evaluates the ordering
claims between the models on the measured values.
"""

import logging
import operator
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional

import numpy as np

from fdots.core.errors import EmptySampleError
from fdots.core.fixtures import REFERENCE_PREFIX
from fdots.core.model import AssociationModel, Ecosystem, InformationRecord, OperationSpec, RESERVED_KEYS
from fdots.core.pid import PidMinter
from fdots.engines import create_engine
from fdots.engines.profile import ProfileEngine
from fdots.interop import convert
from fdots.metrics.measures import (
    MetricsReport,
    NewFdoScenario,
    NewOperationScenario,
    Scenario,
    evaluate,
    sample_pairs,
)

logger = logging.getLogger(__name__)

RECORD = AssociationModel.RECORD.value
PROFILE = AssociationModel.PROFILE.value
ATTRIBUTE = AssociationModel.ATTRIBUTE.value


@dataclass(frozen=True)
class ComparisonClaim:
    """An ordering claim between models and whether the measurements support it."""

    claim: str
    holds: bool
    detail: str = ""

    def row(self) -> Dict[str, object]:
        return {"claim": self.claim, "holds": self.holds, "detail": self.detail}


@dataclass
class ModelComparison:
    reports: Dict[str, MetricsReport] = field(default_factory=dict)
    claims: List[ComparisonClaim] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports.values()) and all(c.holds for c in self.claims)


def _pairwise(
    reports: Mapping[str, MetricsReport],
    measure: str,
    left: str,
    right: str,
    compare: Callable[[int, int], bool],
    symbol: str,
) -> Optional[ComparisonClaim]:
    if left not in reports or right not in reports:
        return None
    lhs = reports[left].values_by_subject(measure)
    rhs = reports[right].values_by_subject(measure)
    shared = sorted(set(lhs) & set(rhs))
    if not shared:
        return None
    failures = [s for s in shared if not compare(lhs[s], rhs[s])]
    claim = f"{measure}_{left} {symbol} {measure}_{right}"
    if failures:
        first = failures[0]
        detail = f"{len(failures)}/{len(shared)} fail, e.g. {first}: {lhs[first]} vs {rhs[first]}"
        return ComparisonClaim(claim, False, detail)
    return ComparisonClaim(claim, True, f"{len(shared)} subjects")


def comparison_report(reports: Mapping[str, MetricsReport]) -> List[ComparisonClaim]:
    """
    Evaluate the model ordering claims on measured values.

    Claims: C_record < C_profile; per query pair Q_record <= Q_profile and
    Q_record <= Q_attribute; per FDO S_record <= S_profile and
    S_record <= S_attribute; per new operation
    T_attribute <= T_profile <= T_record; per new FDO
    U_profile = U_attribute = 0 <= U_record. Claims whose inputs are missing
    are left out.

    Args:
        reports: Metrics reports keyed by model name
    """
    reports = {AssociationModel.parse(k).value: v for k, v in reports.items()}
    claims: List[ComparisonClaim] = []

    if RECORD in reports and PROFILE in reports:
        c1, c2 = reports[RECORD].value("C"), reports[PROFILE].value("C")
        if c1 is not None and c2 is not None:
            claims.append(ComparisonClaim(f"C_{RECORD} < C_{PROFILE}", c1 < c2, f"{c1} vs {c2}"))

    candidates = [
        _pairwise(reports, "Q", RECORD, PROFILE, operator.le, "<="),
        _pairwise(reports, "Q", RECORD, ATTRIBUTE, operator.le, "<="),
        _pairwise(reports, "S", RECORD, PROFILE, operator.le, "<="),
        _pairwise(reports, "S", RECORD, ATTRIBUTE, operator.le, "<="),
        _pairwise(reports, "T", ATTRIBUTE, PROFILE, operator.le, "<="),
        _pairwise(reports, "T", PROFILE, RECORD, operator.le, "<="),
    ]
    claims.extend(c for c in candidates if c is not None)

    for model in (PROFILE, ATTRIBUTE):
        if model in reports and reports[model].by_measure("U"):
            values = reports[model].values_by_subject("U")
            claims.append(
                ComparisonClaim(f"U_{model} = 0", all(v == 0 for v in values.values()), f"{len(values)} new FDOs")
            )
    if RECORD in reports and reports[RECORD].by_measure("U"):
        values = reports[RECORD].values_by_subject("U")
        claims.append(
            ComparisonClaim(f"U_{RECORD} >= 0", all(v >= 0 for v in values.values()), f"{len(values)} new FDOs")
        )
    return claims


def shared_update_scenarios(
    ecosystems: Mapping[AssociationModel, Ecosystem],
    n_operations: int = 1,
    n_fdos: int = 1,
    seed: int = 0,
) -> Dict[AssociationModel, List[Scenario]]:
    """
    The same update scenarios expressed for each converted ecosystem.

    New operations target a union of profile classes of the profile-typed
    ecosystem, so every model can express them. New FDOs copy the domain
    attributes and profile of a random existing FDO in each model.
    """
    rng = np.random.default_rng(seed)
    record_eco = ecosystems[AssociationModel.RECORD]
    used = {pid for e in ecosystems.values() for pid in e.all_pids()}
    minter = PidMinter(used=used)
    prefix = record_eco.default_prefix(REFERENCE_PREFIX)
    members = ProfileEngine(ecosystems[AssociationModel.PROFILE], use_index=False).members_by_profile()
    blocks = [frozenset(m) for _, m in sorted(members.items()) if m]
    ops_by_fdo = create_engine(record_eco, use_index=True).index.ops_by_fdo
    fdos = sorted(record_eco.records)
    scenarios: Dict[AssociationModel, List[Scenario]] = {m: [] for m in ecosystems}

    for _ in range(n_operations):
        pid = minter.mint(prefix)
        chosen = rng.random(len(blocks)) < 0.5 if blocks else []
        targets = frozenset(f for block, keep in zip(blocks, chosen) if keep for f in block)
        for model in ecosystems:
            scenarios[model].append(NewOperationScenario(OperationSpec(pid, (), "exec:new"), targets))

    if fdos:
        for _ in range(n_fdos):
            template = fdos[int(rng.integers(0, len(fdos)))]
            pid = minter.mint(prefix)
            for model, ecosystem in ecosystems.items():
                source = ecosystem.records[template]
                record = InformationRecord.data_fdo(
                    pid,
                    source.profile_ref,
                    [(k, v) for k, v in source.pairs() if k not in RESERVED_KEYS],
                )
                ops = ops_by_fdo.get(template, frozenset()) if model is AssociationModel.RECORD else None
                scenarios[model].append(NewFdoScenario(record, ops))
    return scenarios


def compare_models(
    ecosystem: Ecosystem,
    sample_size: int = 100,
    seed: int = 0,
    n_operations: int = 1,
    n_fdos: int = 1,
) -> ModelComparison:
    """
    Convert ``ecosystem`` into all three models and measure each.

    The record-typed conversion is the common base; the other two models are
    derived from it so that every model carries the same domain attributes.

    Returns:
        ModelComparison: Per-model reports and the evaluated claims
    """
    base, _ = convert(ecosystem, AssociationModel.RECORD)
    converted = {
        AssociationModel.RECORD: base,
        AssociationModel.PROFILE: convert(base, AssociationModel.PROFILE)[0],
        AssociationModel.ATTRIBUTE: convert(base, AssociationModel.ATTRIBUTE)[0],
    }
    try:
        sample = sample_pairs(base, sample_size, seed)
    except EmptySampleError:
        sample = None
    scenarios = shared_update_scenarios(converted, n_operations, n_fdos, seed)

    comparison = ModelComparison()
    for model, eco in converted.items():
        comparison.reports[model.value] = evaluate(
            eco, sample_size=sample_size, seed=seed, sample=sample, scenarios=scenarios[model]
        )
    comparison.claims = comparison_report(comparison.reports)
    failed = [c.claim for c in comparison.claims if not c.holds]
    if failed:
        logger.warning(f"Comparison claims not supported: {failed}")
    return comparison
